#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cayleysaw/words.hpp"

namespace cayleysaw {

// Word over {a,b,c,d} in alternating form: `a` alternates with one of
// b, c, d, and no letter repeats. Letters are stored as chars.
struct GrigWord {
  std::string letters;

  std::size_t size() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  friend bool operator==(const GrigWord&, const GrigWord&) = default;
};

// Applies a^2 = b^2 = c^2 = d^2 = bcd = 1 (so bc = d, bd = c, cd = b).
// Accepts letters a-d with optional whitespace; anything else throws.
GrigWord grig_reduce(std::string_view raw);
// Maps a presentation word by generator names a, b, c, d.
GrigWord grig_reduce(const GenWord& w, const Presentation& p);
// Appends letters and re-reduces.
GrigWord grig_multiply(const GrigWord& w, std::string_view letters);
void grig_append(GrigWord& w, char letter);

enum class Parity { even, odd };

struct GrigSections {
  Parity parity = Parity::even;  // odd: the root children are swapped
  GrigWord left;                 // action on the subtree below 0
  GrigWord right;                // action on the subtree below 1
};

// Wreath recursion b = (a,c), c = (a,d), d = (1,b), a = swap.
GrigSections grig_sections(const GrigWord& w);

// Word problem by contraction: odd parity is never trivial, otherwise both
// sections must be trivial. Sections are strictly shorter once |w| >= 2.
bool grig_is_identity(const GrigWord& w);

// Canonical byte string of the group element: equal iff the elements are equal.
// Elements of {1,a,b,c,d} map to that letter; any other element to its
// parity followed by the keys of its two sections.
std::string grig_canonical_key(const GrigWord& w);

// Permutation of the 2^depth leaves of the truncated binary tree. Leaf u is an
// integer whose bit i is the letter at level i (bit 0 is nearest the root).
struct TreeAction {
  unsigned depth = 0;
  std::vector<std::uint32_t> image;

  bool is_identity() const;
  // Apply *this first, then `next`.
  TreeAction then(const TreeAction& next) const;
  friend bool operator==(const TreeAction&, const TreeAction&) = default;
};

// Words act on the right: letters are applied left to right. 1 <= depth <= 20.
TreeAction grig_tree_action(const GrigWord& w, unsigned depth);

// Assignments x_2..x_8 in {b,c} making b a x_2 a ... x_8 a trivial.
struct BadCycle {
  std::array<char, 7> x{};
  GrigWord word;
};

GrigWord badcycle_word(const std::array<char, 7>& x);
// Exhausts all 128 assignments; the expected result is empty.
std::vector<BadCycle> grig_search_badcycles();

}  // namespace cayleysaw
