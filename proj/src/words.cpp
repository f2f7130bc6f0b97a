#include "cayleysaw/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "cayleysaw/errors.hpp"

namespace cayleysaw {

std::optional<GenIndex> Presentation::find(std::string_view name) const {
  for (const auto& g : generators)
    if (g.name == name) return g.index;
  return std::nullopt;
}

GenIndex Presentation::require(std::string_view name) const {
  if (auto g = find(name)) return *g;
  throw ValidationError("presentation has no generator '" + std::string(name) + "'");
}

bool Presentation::all_involutions() const {
  return std::all_of(generators.begin(), generators.end(),
                     [](const Generator& g) { return g.involution; });
}

Letter Presentation::inverse(Letter l) const {
  if (is_involution(l.gen)) return {l.gen, 1};
  return {l.gen, static_cast<std::int8_t>(-l.exp)};
}

bool operator==(const Presentation& a, const Presentation& b) {
  if (a.generators.size() != b.generators.size()) return false;
  for (std::size_t i = 0; i < a.generators.size(); ++i) {
    const auto& x = a.generators[i];
    const auto& y = b.generators[i];
    if (x.name != y.name || x.index != y.index || x.involution != y.involution)
      return false;
  }
  return a.relators == b.relators && a.family == b.family;
}

std::string_view family_name(RelatorFamily f) {
  switch (f) {
    case RelatorFamily::grigorchuk_sigma:
      return "grigorchuk-sigma";
  }
  return "";
}

std::optional<RelatorFamily> family_from_name(std::string_view name) {
  if (name == "grigorchuk-sigma") return RelatorFamily::grigorchuk_sigma;
  return std::nullopt;
}

std::vector<GenWord> Presentation::family_relators(int k) const {
  if (!family || k < 0) return {};
  switch (*family) {
    case RelatorFamily::grigorchuk_sigma: {
      const GenWord ad4 = parse_word("(a d)^4", *this);
      const GenWord adacac4 = parse_word("(a d a c a c)^4", *this);
      return {grig_substitute(ad4, static_cast<unsigned>(k), *this),
              grig_substitute(adacac4, static_cast<unsigned>(k), *this)};
    }
  }
  return {};
}

std::vector<GenWord> Presentation::all_relators(int family_cap) const {
  std::vector<GenWord> out = relators;
  for (int k = 0; k <= family_cap && family; ++k) {
    auto more = family_relators(k);
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

GenWord free_reduce(std::span<const Letter> raw, const Presentation& p) {
  GenWord out;
  out.letters.reserve(raw.size());
  for (Letter l : raw) {
    if (l.gen >= p.rank()) throw ValidationError("letter references undeclared generator");
    if (p.is_involution(l.gen)) l.exp = 1;
    if (!out.letters.empty() && out.letters.back() == p.inverse(l)) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

GenWord concat(const GenWord& u, const GenWord& v, const Presentation& p) {
  std::vector<Letter> raw = u.letters;
  raw.insert(raw.end(), v.letters.begin(), v.letters.end());
  return free_reduce(raw, p);
}

GenWord inverse(const GenWord& w, const Presentation& p) {
  GenWord out;
  out.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back(p.inverse(*it));
  return out;
}

GenWord power(const GenWord& w, unsigned n, const Presentation& p) {
  std::vector<Letter> raw;
  raw.reserve(w.size() * n);
  for (unsigned i = 0; i < n; ++i) raw.insert(raw.end(), w.letters.begin(), w.letters.end());
  return free_reduce(raw, p);
}

std::vector<std::int64_t> exponent_vector(const GenWord& w, const Presentation& p) {
  std::vector<std::int64_t> v(p.rank(), 0);
  for (Letter l : w.letters) v.at(l.gen) += l.exp;
  return v;
}

GenWord grig_substitute(const GenWord& w, unsigned k, const Presentation& p) {
  const GenIndex a = p.require("a"), b = p.require("b"), c = p.require("c"),
                 d = p.require("d");
  for (Letter l : w.letters)
    if (l.gen != a && l.gen != b && l.gen != c && l.gen != d)
      throw ValidationError("substitution is defined on {a,b,c,d} only");

  GenWord cur = w;
  for (unsigned step = 0; step < k; ++step) {
    std::vector<Letter> raw;
    raw.reserve(cur.size() * 3);
    for (Letter l : cur.letters) {
      if (l.gen == a) {
        raw.insert(raw.end(), {Letter{a, 1}, Letter{c, 1}, Letter{a, 1}});
      } else if (l.gen == b) {
        raw.push_back({d, 1});
      } else if (l.gen == c) {
        raw.push_back({b, 1});
      } else {
        raw.push_back({c, 1});
      }
    }
    cur = free_reduce(raw, p);
  }
  return cur;
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

// Cursor over one source line; columns are 1-based.
class LineScanner {
 public:
  LineScanner(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  std::size_t column() const { return pos_ + 1; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_, column(), what);
  }

  std::string_view ident() {
    skip_space();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected identifier");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  // Reads "^-1" (returns -1) or "^n" with n >= 1 when `allow_positive`.
  long long exponent(bool allow_positive) {
    expect('^');
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    long long value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) {
      pos_ = start;
      fail("expected integer exponent");
    }
    pos_ += static_cast<std::size_t>(ptr - first);
    if (negative) value = -value;
    if (allow_positive) {
      if (value < 1) {
        pos_ = start;
        fail("group power must be a positive integer");
      }
    } else if (value != -1) {
      pos_ = start;
      fail("generator exponent must be -1");
    }
    return value;
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

void parse_terms(LineScanner& sc, const Presentation& p, std::vector<Letter>& out,
                 bool inside_group) {
  bool any = false;
  while (!sc.at_end()) {
    const char c = sc.peek();
    if (c == ')') {
      if (!inside_group) sc.fail("unbalanced ')'");
      break;
    }
    any = true;
    if (c == '(') {
      sc.expect('(');
      std::vector<Letter> inner;
      parse_terms(sc, p, inner, true);
      sc.expect(')');
      const long long n = sc.exponent(true);
      if (n > 1'000'000) sc.fail("group power too large");
      for (long long i = 0; i < n; ++i) out.insert(out.end(), inner.begin(), inner.end());
      continue;
    }
    const std::string_view name = sc.ident();
    const auto g = p.find(name);
    if (!g) sc.fail("undeclared generator " + std::string(name));
    Letter l{*g, 1};
    if (sc.peek() == '^') {
      if (p.is_involution(*g)) sc.fail("involution '" + std::string(name) + "' takes no inverse");
      l.exp = static_cast<std::int8_t>(sc.exponent(false));
    }
    out.push_back(l);
  }
  if (!any) sc.fail(inside_group ? "empty group" : "expected at least one term");
}

// Parses a relator body; columns in errors are relative to the full line.
std::vector<Letter> parse_term_list(std::string_view body, std::size_t line,
                                    std::size_t col_offset, const Presentation& p) {
  for (std::size_t i = 0; i < body.size();) {
    if (ident_start(body[i]) && (i == 0 || !ident_char(body[i - 1]))) {
      std::size_t j = i;
      while (j < body.size() && ident_char(body[j])) ++j;
      const std::string_view name = body.substr(i, j - i);
      if (!p.find(name))
        throw ParseError(line, col_offset + i + 1,
                         "undeclared generator " + std::string(name));
      i = j;
    } else {
      ++i;
    }
  }
  LineScanner sc(body, line);
  std::vector<Letter> raw;
  try {
    parse_terms(sc, p, raw, false);
  } catch (const ParseError& e) {
    throw ParseError(line, col_offset + e.column(), e.message());
  }
  return raw;
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

}  // namespace

GenWord parse_word(std::string_view text, const Presentation& p) {
  const auto trimmed = text.find_first_not_of(" \t");
  if (trimmed == std::string_view::npos) return {};
  if (text.substr(trimmed) == "1") return {};
  return free_reduce(parse_term_list(text, 1, 0, p), p);
}

Presentation parse_presentation(std::string_view text) {
  struct Pending {
    std::size_t line;
    std::size_t offset;
    std::string_view body;
  };
  Presentation p;
  std::vector<Pending> rels;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    const std::string_view line = strip_comment(text.substr(start, end - start));
    ++line_no;
    start = end + 1;

    LineScanner sc(line, line_no);
    if (sc.at_end()) {
      if (nl == std::string_view::npos) break;
      continue;
    }
    const std::string_view keyword = sc.ident();
    if (keyword == "gens") {
      if (sc.at_end()) sc.fail("gens needs at least one identifier");
      while (!sc.at_end()) {
        sc.skip_space();
        const std::size_t col = sc.column();
        const std::string_view name = sc.ident();
        if (p.find(name))
          throw ParseError(line_no, col, "duplicate generator " + std::string(name));
        p.generators.push_back(
            {std::string(name), static_cast<GenIndex>(p.generators.size()), false});
      }
    } else if (keyword == "inv") {
      if (sc.at_end()) sc.fail("inv needs at least one identifier");
      while (!sc.at_end()) {
        sc.skip_space();
        const std::size_t col = sc.column();
        const std::string_view name = sc.ident();
        const auto g = p.find(name);
        if (!g) throw ParseError(line_no, col, "undeclared generator " + std::string(name));
        p.generators[*g].involution = true;
      }
    } else if (keyword == "family") {
      sc.skip_space();
      const std::size_t col = sc.column();
      std::string_view rest = line.substr(col - 1);
      while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back())))
        rest.remove_suffix(1);
      const auto fam = family_from_name(rest);
      if (!fam) throw ParseError(line_no, col, "unknown relator family '" + std::string(rest) + "'");
      if (p.family) throw ParseError(line_no, col, "only one family line is allowed");
      p.family = fam;
    } else if (keyword == "rel") {
      sc.skip_space();
      const std::size_t offset = sc.column() - 1;
      rels.push_back({line_no, offset, line.substr(offset)});
    } else {
      throw ParseError(line_no, 1, "unknown directive '" + std::string(keyword) + "'");
    }
    if (nl == std::string_view::npos) break;
  }

  for (const auto& r : rels) {
    if (r.body.find_first_not_of(" \t\r") == std::string_view::npos)
      throw ParseError(r.line, r.offset + 1, "rel needs at least one term");
    GenWord w = free_reduce(parse_term_list(r.body, r.line, r.offset, p), p);
    if (w.empty()) throw ParseError(r.line, r.offset + 1, "relator reduces to the empty word");
    p.relators.push_back(std::move(w));
  }
  if (p.family) {
    for (const char* name : {"a", "b", "c", "d"})
      if (!p.find(name))
        throw ParseError(line_no, 1, "family grigorchuk-sigma needs generators a b c d");
  }
  return p;
}

std::string to_string(const GenWord& w, const Presentation& p) {
  if (w.empty()) return "1";
  std::string out;
  for (Letter l : w.letters) {
    if (!out.empty()) out += ' ';
    out += p.generators.at(l.gen).name;
    if (l.exp < 0) out += "^-1";
  }
  return out;
}

std::string serialize(const Presentation& p) {
  std::ostringstream os;
  os << "gens";
  for (const auto& g : p.generators) os << ' ' << g.name;
  os << '\n';
  bool any_inv = false;
  for (const auto& g : p.generators) {
    if (!g.involution) continue;
    os << (any_inv ? " " : "inv ") << g.name;
    any_inv = true;
  }
  if (any_inv) os << '\n';
  for (const auto& r : p.relators) os << "rel " << to_string(r, p) << '\n';
  if (p.family) os << "family " << family_name(*p.family) << '\n';
  return os.str();
}

}  // namespace cayleysaw
