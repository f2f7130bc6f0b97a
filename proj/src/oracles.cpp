#include "cayleysaw/oracles.hpp"

#include <charconv>

#include "cayleysaw/errors.hpp"

namespace cayleysaw {

ElementOracle::ElementOracle(std::string name, Presentation presentation,
                             std::vector<Letter> cayley_letters)
    : name_(std::move(name)),
      presentation_(std::move(presentation)),
      cayley_letters_(std::move(cayley_letters)) {
  inverse_label_.resize(cayley_letters_.size());
  for (std::size_t i = 0; i < cayley_letters_.size(); ++i) {
    const Letter inv = presentation_.inverse(cayley_letters_[i]);
    bool found = false;
    for (std::size_t j = 0; j < cayley_letters_.size(); ++j) {
      if (cayley_letters_[j] == inv) {
        inverse_label_[i] = j;
        found = true;
        break;
      }
    }
    if (!found) throw ValidationError("Cayley generating set is not symmetric");
  }
}

bool ElementOracle::is_identity(const Element& e) const {
  return canonical_key(e) == canonical_key(identity());
}

Element ElementOracle::multiply(const Element& e, Letter s) const {
  Element out = e;
  apply(out, s);
  return out;
}

Element ElementOracle::multiply(const Element& e, const GenWord& w) const {
  Element cur = e;
  for (Letter l : w.letters) apply(cur, l);
  return cur;
}

Element ElementOracle::evaluate(const GenWord& w) const { return multiply(identity(), w); }

namespace {

std::vector<Letter> signed_letters(const Presentation& p) {
  std::vector<Letter> out;
  for (const auto& g : p.generators) {
    out.push_back({g.index, 1});
    if (!g.involution) out.push_back({g.index, -1});
  }
  return out;
}

std::string letter_name(unsigned i, unsigned count, char fallback_prefix) {
  if (count <= 26) return std::string(1, static_cast<char>('a' + i));
  return std::string(1, fallback_prefix) + std::to_string(i + 1);
}

class ZdOracle final : public ElementOracle {
 public:
  ZdOracle(std::string name, Presentation p, unsigned d)
      : ElementOracle(std::move(name), p, signed_letters(p)), d_(d) {}

  Element identity() const override { return ZdElement{std::vector<BigInt>(d_, 0)}; }

  void apply(Element& e, Letter s) const override {
    std::get<ZdElement>(e).coords.at(s.gen) += s.exp;
  }

  std::string canonical_key(const Element& e) const override {
    std::string key;
    for (const auto& c : std::get<ZdElement>(e).coords) {
      key += c.str();
      key += ',';
    }
    return key;
  }

  bool is_identity(const Element& e) const override {
    for (const auto& c : std::get<ZdElement>(e).coords)
      if (c != 0) return false;
    return true;
  }

 private:
  unsigned d_;
};

class BsOracle final : public ElementOracle {
 public:
  BsOracle(std::string name, Presentation p, unsigned base)
      : ElementOracle(std::move(name), p, signed_letters(p)), base_(base) {}

  Element identity() const override { return BsElement{}; }

  void apply(Element& e, Letter s) const override {
    BsElement& out = std::get<BsElement>(e);
    if (s.gen == 0) {  // x: t -> base * t
      if (s.exp > 0) {
        out.k += 1;
        if (out.den_exp > 0) {
          out.den_exp -= 1;
        } else {
          out.num *= base_;
        }
      } else {
        out.k -= 1;
        out.den_exp += 1;
      }
    } else {  // y: t -> t + 1
      BigInt one = 1;
      for (std::uint32_t i = 0; i < out.den_exp; ++i) one *= base_;
      if (s.exp > 0) {
        out.num += one;
      } else {
        out.num -= one;
      }
    }
    normalize(out);
  }

  std::string canonical_key(const Element& e) const override {
    const auto& b = std::get<BsElement>(e);
    return std::to_string(b.k) + ":" + b.num.str() + ":" + std::to_string(b.den_exp);
  }

  bool is_identity(const Element& e) const override {
    const auto& b = std::get<BsElement>(e);
    return b.k == 0 && b.num == 0;
  }

 private:
  void normalize(BsElement& b) const {
    if (b.num == 0) {
      b.den_exp = 0;
      return;
    }
    while (b.den_exp > 0 && b.num % base_ == 0) {
      b.num /= base_;
      b.den_exp -= 1;
    }
  }

  unsigned base_;
};

class WordOracle final : public ElementOracle {
 public:
  WordOracle(std::string name, Presentation p)
      : ElementOracle(std::move(name), p, signed_letters(p)) {}

  Element identity() const override { return WordElement{}; }

  void apply(Element& e, Letter s) const override {
    WordElement& out = std::get<WordElement>(e);
    const bool inv = presentation().is_involution(s.gen);
    const char code = static_cast<char>(s.gen * 2 + ((s.exp < 0 && !inv) ? 1 : 0));
    const char inverse_code = inv ? code : static_cast<char>(code ^ 1);
    if (!out.code.empty() && out.code.back() == inverse_code) {
      out.code.pop_back();
    } else {
      out.code.push_back(code);
    }
  }

  std::string canonical_key(const Element& e) const override {
    return std::get<WordElement>(e).code;
  }

  bool is_identity(const Element& e) const override {
    return std::get<WordElement>(e).code.empty();
  }
};

class GrigorchukOracle final : public ElementOracle {
 public:
  GrigorchukOracle(Presentation p)
      : ElementOracle("grigorchuk", p,
                      {Letter{p.require("a"), 1}, Letter{p.require("b"), 1},
                       Letter{p.require("c"), 1}}) {}

  Element identity() const override { return GrigWord{}; }

  void apply(Element& e, Letter s) const override {
    const char x = presentation().generators.at(s.gen).name.at(0);
    grig_append(std::get<GrigWord>(e), x);
  }

  std::string canonical_key(const Element& e) const override {
    return grig_canonical_key(std::get<GrigWord>(e));
  }

  bool is_identity(const Element& e) const override {
    return grig_is_identity(std::get<GrigWord>(e));
  }
};

unsigned parse_parameter(std::string_view text, std::string_view what) {
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ValidationError("malformed parameter for " + std::string(what) + ": '" +
                          std::string(text) + "'");
  return value;
}

Presentation zd_presentation(unsigned d) {
  const char* small[] = {"x", "y", "z"};
  std::string text = "gens";
  std::vector<std::string> names;
  for (unsigned i = 0; i < d; ++i)
    names.push_back(d <= 3 ? small[i] : "x" + std::to_string(i + 1));
  for (const auto& n : names) text += " " + n;
  text += "\n";
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = i + 1; j < d; ++j)
      text += "rel " + names[i] + " " + names[j] + " " + names[i] + "^-1 " + names[j] + "^-1\n";
  return parse_presentation(text);
}

Presentation lettered_presentation(unsigned count, bool involutions, char prefix) {
  std::string text = "gens";
  std::string inv = "inv";
  for (unsigned i = 0; i < count; ++i) {
    text += " " + letter_name(i, count, prefix);
    inv += " " + letter_name(i, count, prefix);
  }
  text += "\n";
  if (involutions) text += inv + "\n";
  return parse_presentation(text);
}

}  // namespace

Presentation higman_presentation() {
  return parse_presentation(
      "gens a b c d\n"
      "rel a^-1 b a b^-1 b^-1\n"
      "rel b^-1 c b c^-1 c^-1\n"
      "rel c^-1 d c d^-1 d^-1\n"
      "rel d^-1 a d a^-1 a^-1\n");
}

Presentation higman_variant_presentation() {
  return parse_presentation(
      "gens a b c d\n"
      "rel a^-1 b a b^-1 b^-1\n"
      "rel (b^-1)^2 c (b)^2 c^-1 c^-1\n"
      "rel (c^-1)^3 d (c)^3 d^-1 d^-1\n"
      "rel (d^-1)^4 a (d)^4 a^-1 a^-1\n");
}

Presentation grig_hnn_presentation() {
  return parse_presentation(
      "gens a c d t\n"
      "inv a c d\n"
      "rel (a d)^4\n"
      "rel (a d a c a c)^4\n"
      "rel t^-1 a t a c a\n"
      "rel t^-1 c t c d\n"
      "rel t^-1 d t c\n");
}

Presentation grigorchuk_presentation() {
  return parse_presentation(
      "gens a b c d\n"
      "inv a b c d\n"
      "rel b c d\n"
      "family grigorchuk-sigma\n");
}

OraclePtr zd_oracle(unsigned d) {
  if (d < 1) throw ValidationError("zd needs d >= 1");
  if (d > 64) throw ValidationError("zd supports d <= 64");
  const std::string name = d <= 2 ? "z" + std::to_string(d) : "zd:" + std::to_string(d);
  return std::make_shared<ZdOracle>(name, zd_presentation(d), d);
}

OraclePtr free_oracle(unsigned k) {
  if (k < 1 || k > 64) throw ValidationError("free needs 1 <= k <= 64");
  return std::make_shared<WordOracle>("free:" + std::to_string(k),
                                      lettered_presentation(k, false, 'g'));
}

OraclePtr tree_oracle(unsigned delta) {
  if (delta < 3) throw ValidationError("tree needs degree >= 3");
  if (delta > 127) throw ValidationError("tree supports degree <= 127");
  return std::make_shared<WordOracle>("tree:" + std::to_string(delta),
                                      lettered_presentation(delta, true, 's'));
}

OraclePtr bs_oracle(unsigned m, unsigned n) {
  if (m != 1) throw ValidationError("only BS(1,n) is supported exactly");
  if (n < 2) throw ValidationError("BS(1,n) needs n >= 2");
  std::string text = "gens x y\nrel x^-1 y x";
  for (unsigned i = 0; i < n; ++i) text += " y^-1";
  text += "\n";
  const std::string name = n == 2 ? "bs12" : "bs:1," + std::to_string(n);
  return std::make_shared<BsOracle>(name, parse_presentation(text), n);
}

OraclePtr grigorchuk_oracle() {
  return std::make_shared<GrigorchukOracle>(grigorchuk_presentation());
}

GroupSpec resolve_group(std::string_view name) {
  auto with_oracle = [&](OraclePtr o, bool sufficient) {
    return GroupSpec{o->name(), o->presentation(), o, sufficient};
  };
  if (name == "z1") return with_oracle(zd_oracle(1), true);
  if (name == "z2") return with_oracle(zd_oracle(2), true);
  if (name == "bs12") return with_oracle(bs_oracle(1, 2), true);
  if (name == "grigorchuk") return with_oracle(grigorchuk_oracle(), false);
  if (name == "higman") return {"higman", higman_presentation(), nullptr, true};
  if (name == "higman-variant")
    return {"higman-variant", higman_variant_presentation(), nullptr, true};
  if (name == "grig-hnn") return {"grig-hnn", grig_hnn_presentation(), nullptr, true};

  const auto colon = name.find(':');
  if (colon != std::string_view::npos) {
    const std::string_view head = name.substr(0, colon);
    const std::string_view arg = name.substr(colon + 1);
    if (head == "zd") return with_oracle(zd_oracle(parse_parameter(arg, "zd")), true);
    if (head == "free") return with_oracle(free_oracle(parse_parameter(arg, "free")), true);
    if (head == "tree") return with_oracle(tree_oracle(parse_parameter(arg, "tree")), true);
    if (head == "bs") {
      const auto comma = arg.find(',');
      if (comma == std::string_view::npos) throw ValidationError("bs expects bs:<m>,<n>");
      return with_oracle(bs_oracle(parse_parameter(arg.substr(0, comma), "bs"),
                                   parse_parameter(arg.substr(comma + 1), "bs")),
                         true);
    }
  }
  throw ValidationError("unknown group '" + std::string(name) + "'");
}

std::vector<std::string> registry_names() {
  return {"z1",   "z2",         "zd:<d>", "free:<k>",       "tree:<D>", "bs12",
          "bs:1,<n>", "grigorchuk", "higman", "higman-variant", "grig-hnn"};
}

OraclePtr oracle_for(std::string_view name) {
  GroupSpec g = resolve_group(name);
  if (!g.oracle)
    throw ValidationError("group '" + g.name + "' is presentation-only (no element oracle)");
  return g.oracle;
}

bool RelatorReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

RelatorReport verify_words(const ElementOracle& o, const std::vector<GenWord>& words) {
  RelatorReport report;
  for (const auto& w : words)
    report.checks.push_back({to_string(w, o.presentation()), std::nullopt,
                             o.is_identity(o.evaluate(w))});
  return report;
}

RelatorReport verify_relators(const ElementOracle& o, const Presentation& p, int family_cap) {
  const Presentation& own = o.presentation();
  bool same = own.rank() == p.rank();
  for (std::size_t i = 0; same && i < p.rank(); ++i)
    same = own.generators[i].name == p.generators[i].name &&
           own.generators[i].involution == p.generators[i].involution;
  if (!same) throw ValidationError("presentation generators do not match the oracle");

  RelatorReport report = verify_words(o, p.relators);
  for (int k = 0; k <= family_cap && p.family; ++k) {
    RelatorReport fam = verify_words(o, p.family_relators(k));
    for (auto& c : fam.checks) {
      c.family_index = k;
      report.checks.push_back(std::move(c));
    }
  }
  return report;
}

std::optional<std::uint64_t> element_order(const ElementOracle& o, const GenWord& w,
                                           std::uint64_t cap) {
  if (w.empty()) return 1;
  Element cur = o.identity();
  for (std::uint64_t n = 1; n <= cap; ++n) {
    for (Letter l : w.letters) o.apply(cur, l);
    if (o.is_identity(cur)) return n;
  }
  return std::nullopt;
}

}  // namespace cayleysaw
