#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cayleysaw/bigint.hpp"
#include "cayleysaw/grigorchuk.hpp"
#include "cayleysaw/words.hpp"

namespace cayleysaw {

struct ZdElement {
  std::vector<BigInt> coords;
};

// The affine map t -> base^k * t + num / base^den_exp, with den_exp minimal.
// For BS(1,n): x is t -> n t and y is t -> t + 1. Words act on the right,
// so the word u v is the map "apply u, then v".
struct BsElement {
  std::int64_t k = 0;
  BigInt num = 0;
  std::uint32_t den_exp = 0;
};

// Reduced word, one byte per letter (generator * 2, +1 for an inverse).
// Used for free groups and free products of Z/2.
struct WordElement {
  std::string code;
};

using Element = std::variant<ZdElement, BsElement, WordElement, GrigWord>;

// Exact element arithmetic for one builtin group. Immutable after construction.
class ElementOracle {
 public:
  ElementOracle(std::string name, Presentation presentation, std::vector<Letter> cayley_letters);
  virtual ~ElementOracle() = default;

  const std::string& name() const noexcept { return name_; }
  const Presentation& presentation() const noexcept { return presentation_; }
  // Edge labels of the Cayley graph: a symmetric generating set.
  const std::vector<Letter>& cayley_letters() const noexcept { return cayley_letters_; }
  std::size_t degree() const noexcept { return cayley_letters_.size(); }
  // Index into cayley_letters() of the inverse of label i.
  std::size_t inverse_label(std::size_t i) const { return inverse_label_.at(i); }

  virtual Element identity() const = 0;
  // e <- e * s
  virtual void apply(Element& e, Letter s) const = 0;
  Element multiply(const Element& e, Letter s) const;
  virtual std::string canonical_key(const Element& e) const = 0;
  virtual bool is_identity(const Element& e) const;

  Element evaluate(const GenWord& w) const;
  Element multiply(const Element& e, const GenWord& w) const;

 private:
  std::string name_;
  Presentation presentation_;
  std::vector<Letter> cayley_letters_;
  std::vector<std::size_t> inverse_label_;
};

using OraclePtr = std::shared_ptr<const ElementOracle>;

// A named entry from the group registry. Presentation-only groups have no oracle.
struct GroupSpec {
  std::string name;
  Presentation presentation;
  OraclePtr oracle;
  // True when the registered relators present the group completely, so a
  // height-function "exists" verdict is definitive.
  bool relators_sufficient = false;
};

// Registry names: z1, z2, zd:<d>, free:<k>, tree:<D>, bs12, bs:1,<n>,
// grigorchuk, higman, higman-variant, grig-hnn.
GroupSpec resolve_group(std::string_view name);
std::vector<std::string> registry_names();

// Builtin constructors; these throw ValidationError on bad parameters.
OraclePtr zd_oracle(unsigned d);
OraclePtr free_oracle(unsigned k);
OraclePtr tree_oracle(unsigned delta);
OraclePtr bs_oracle(unsigned m, unsigned n);
OraclePtr grigorchuk_oracle();
// Resolves a registry name that has an oracle.
OraclePtr oracle_for(std::string_view name);

Presentation higman_presentation();
Presentation higman_variant_presentation();
Presentation grig_hnn_presentation();
Presentation grigorchuk_presentation();

struct RelatorCheck {
  std::string word;
  std::optional<int> family_index;  // set for family members
  bool pass = false;
};

struct RelatorReport {
  std::vector<RelatorCheck> checks;
  bool all_pass() const;
};

// Evaluates every relator (family members up to family_cap) through the oracle.
// Throws ValidationError when the presentation's generators differ from the oracle's.
RelatorReport verify_relators(const ElementOracle& o, const Presentation& p, int family_cap);
// Evaluates extra words given in the oracle's own presentation.
RelatorReport verify_words(const ElementOracle& o, const std::vector<GenWord>& words);

inline constexpr std::uint64_t kDefaultOrderCap = 1u << 16;

// Least n <= cap with w^n = 1, or nullopt when the cap is exceeded.
std::optional<std::uint64_t> element_order(const ElementOracle& o, const GenWord& w,
                                           std::uint64_t cap = kDefaultOrderCap);

}  // namespace cayleysaw
