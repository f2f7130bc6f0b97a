#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cayleysaw {

using GenIndex = std::uint32_t;

struct Generator {
  std::string name;
  GenIndex index = 0;
  bool involution = false;  // s == s^-1
};

// A generator raised to +1 or -1. Involution letters always carry +1.
struct Letter {
  GenIndex gen = 0;
  std::int8_t exp = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// Freely reduced word over a presentation's generators. Empty means identity.
// Construct through free_reduce (or parse_word) to keep the invariant.
struct GenWord {
  std::vector<Letter> letters;

  std::size_t size() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  friend bool operator==(const GenWord&, const GenWord&) = default;
};

// Builtin relator families, referenced by name from `family` lines.
enum class RelatorFamily { grigorchuk_sigma };

// Materialization cap used when a finite prefix of a family is needed.
inline constexpr int kDefaultFamilyCap = 8;

class Presentation {
 public:
  std::vector<Generator> generators;
  std::vector<GenWord> relators;
  std::optional<RelatorFamily> family;

  std::size_t rank() const noexcept { return generators.size(); }
  std::optional<GenIndex> find(std::string_view name) const;
  GenIndex require(std::string_view name) const;
  bool is_involution(GenIndex g) const { return generators.at(g).involution; }
  bool all_involutions() const;

  Letter inverse(Letter l) const;

  // Relators contributed by the family for index k (empty without a family).
  std::vector<GenWord> family_relators(int k) const;
  // Finite relators followed by family members 0..family_cap.
  std::vector<GenWord> all_relators(int family_cap) const;

  friend bool operator==(const Presentation& a, const Presentation& b);
};

std::string_view family_name(RelatorFamily f);
std::optional<RelatorFamily> family_from_name(std::string_view name);

// Line-oriented presentation source:
//   gens x y z     declares generators
//   inv x          marks generators as involutions
//   rel x y x^-1   adds a relator; "(x y)^3" expands powers
//   family grigorchuk-sigma
// '#' starts a comment. Throws ParseError with line and column.
Presentation parse_presentation(std::string_view text);
std::string serialize(const Presentation& p);

// Parses a word using the relator term grammar, then freely reduces it.
GenWord parse_word(std::string_view text, const Presentation& p);
// Space separated letters, "x^-1" for inverses; "1" for the empty word.
std::string to_string(const GenWord& w, const Presentation& p);

GenWord free_reduce(std::span<const Letter> raw, const Presentation& p);
GenWord concat(const GenWord& u, const GenWord& v, const Presentation& p);
GenWord inverse(const GenWord& w, const Presentation& p);
GenWord power(const GenWord& w, unsigned n, const Presentation& p);

// Signed letter count per generator (raw sums, involutions included).
std::vector<std::int64_t> exponent_vector(const GenWord& w, const Presentation& p);

// The substitution a->aca, b->d, c->b, d->c applied k times, freely reduced.
// `p` must declare generators named a, b, c, d; other letters are rejected.
GenWord grig_substitute(const GenWord& w, unsigned k, const Presentation& p);

}  // namespace cayleysaw
