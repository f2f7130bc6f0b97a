#include "cayleysaw/grigorchuk.hpp"

#include <unordered_map>

#include "cayleysaw/errors.hpp"

namespace cayleysaw {

namespace {

bool is_bcd(char x) { return x == 'b' || x == 'c' || x == 'd'; }

// Product of two distinct letters of the Klein four-group {1,b,c,d}.
char klein(char x, char y) {
  if (x != 'b' && y != 'b') return 'b';
  if (x != 'c' && y != 'c') return 'c';
  return 'd';
}

void push_letter(std::string& stack, char x) {
  while (true) {
    if (stack.empty()) {
      stack.push_back(x);
      return;
    }
    const char top = stack.back();
    if (top == x) {
      stack.pop_back();
      return;
    }
    if (is_bcd(top) && is_bcd(x)) {
      stack.pop_back();
      x = klein(top, x);
      continue;
    }
    stack.push_back(x);
    return;
  }
}

// Section of a single non-a generator at child `bit`.
char letter_section(char x, int bit) {
  switch (x) {
    case 'b':
      return bit == 0 ? 'a' : 'c';
    case 'c':
      return bit == 0 ? 'a' : 'd';
    default:  // 'd'
      return bit == 0 ? '\0' : 'b';
  }
}

class IdentityMemo {
 public:
  bool is_identity(const GrigWord& w) {
    if (w.size() <= 1) return w.empty();
    if (auto it = memo_.find(w.letters); it != memo_.end()) return it->second;
    const GrigSections s = grig_sections(w);
    const bool result =
        s.parity == Parity::even && is_identity(s.left) && is_identity(s.right);
    memo_.emplace(w.letters, result);
    return result;
  }

 private:
  std::unordered_map<std::string, bool> memo_;
};

class KeyBuilder {
 public:
  std::string key(const GrigWord& w) {
    if (w.size() <= 1) return w.empty() ? "e" : w.letters;
    if (auto it = memo_.find(w.letters); it != memo_.end()) return it->second;
    std::string out = ids_.is_identity(w) ? "e" : "";
    for (char x : {'a', 'b', 'c', 'd'}) {
      if (!out.empty()) break;
      if (ids_.is_identity(grig_multiply(w, std::string_view(&x, 1)))) {
        out = std::string(1, x);
      }
    }
    if (out.empty()) {
      const GrigSections s = grig_sections(w);
      out = s.parity == Parity::odd ? "s(" : "n(";
      out += key(s.left);
      out += ',';
      out += key(s.right);
      out += ')';
    }
    memo_.emplace(w.letters, out);
    return out;
  }

 private:
  IdentityMemo ids_;
  std::unordered_map<std::string, std::string> memo_;
};

}  // namespace

GrigWord grig_reduce(std::string_view raw) {
  GrigWord out;
  out.letters.reserve(raw.size());
  for (char x : raw) {
    if (x == ' ' || x == '\t') continue;
    if (x != 'a' && !is_bcd(x))
      throw ValidationError(std::string("invalid Grigorchuk letter '") + x + "'");
    push_letter(out.letters, x);
  }
  return out;
}

GrigWord grig_reduce(const GenWord& w, const Presentation& p) {
  std::string raw;
  raw.reserve(w.size());
  for (Letter l : w.letters) {
    const std::string& name = p.generators.at(l.gen).name;
    if (name.size() != 1) throw ValidationError("letter '" + name + "' is not in {a,b,c,d}");
    raw.push_back(name[0]);
  }
  return grig_reduce(raw);
}

void grig_append(GrigWord& w, char letter) {
  if (letter != 'a' && !is_bcd(letter))
    throw ValidationError(std::string("invalid Grigorchuk letter '") + letter + "'");
  push_letter(w.letters, letter);
}

GrigWord grig_multiply(const GrigWord& w, std::string_view letters) {
  GrigWord out = w;
  for (char x : letters) grig_append(out, x);
  return out;
}

GrigSections grig_sections(const GrigWord& w) {
  std::string raw[2];
  int a_count = 0;
  for (int start = 0; start < 2; ++start) {
    int cur = start;
    for (char x : w.letters) {
      if (x == 'a') {
        cur ^= 1;
        if (start == 0) ++a_count;
        continue;
      }
      if (const char s = letter_section(x, cur)) raw[start].push_back(s);
    }
  }
  GrigSections out;
  out.parity = (a_count % 2) ? Parity::odd : Parity::even;
  out.left = grig_reduce(raw[0]);
  out.right = grig_reduce(raw[1]);
  return out;
}

bool grig_is_identity(const GrigWord& w) {
  IdentityMemo memo;
  return memo.is_identity(w);
}

std::string grig_canonical_key(const GrigWord& w) {
  KeyBuilder builder;
  return builder.key(w);
}

bool TreeAction::is_identity() const {
  for (std::uint32_t i = 0; i < image.size(); ++i)
    if (image[i] != i) return false;
  return true;
}

TreeAction TreeAction::then(const TreeAction& next) const {
  if (next.depth != depth) throw ValidationError("tree actions of different depth");
  TreeAction out{depth, std::vector<std::uint32_t>(image.size())};
  for (std::size_t i = 0; i < image.size(); ++i) out.image[i] = next.image[image[i]];
  return out;
}

TreeAction grig_tree_action(const GrigWord& w, unsigned depth) {
  if (depth < 1 || depth > 20) throw ValidationError("tree depth must be in [1, 20]");
  const std::uint32_t leaves = 1u << depth;
  TreeAction out{depth, std::vector<std::uint32_t>(leaves)};
  for (std::uint32_t leaf = 0; leaf < leaves; ++leaf) {
    std::uint32_t u = leaf;
    for (char x : w.letters) {
      char cur = x;
      for (unsigned level = 0; level < depth && cur != '\0'; ++level) {
        if (cur == 'a') {
          u ^= 1u << level;
          break;
        }
        cur = letter_section(cur, static_cast<int>((u >> level) & 1u));
      }
    }
    out.image[leaf] = u;
  }
  return out;
}

GrigWord badcycle_word(const std::array<char, 7>& x) {
  std::string raw = "ba";
  for (char xi : x) {
    raw.push_back(xi);
    raw.push_back('a');
  }
  return grig_reduce(raw);
}

std::vector<BadCycle> grig_search_badcycles() {
  std::vector<BadCycle> found;
  for (unsigned mask = 0; mask < 128; ++mask) {
    std::array<char, 7> x{};
    for (unsigned i = 0; i < 7; ++i) x[i] = (mask >> i) & 1u ? 'c' : 'b';
    GrigWord w = badcycle_word(x);
    if (grig_is_identity(w)) found.push_back({x, std::move(w)});
  }
  return found;
}

}  // namespace cayleysaw
