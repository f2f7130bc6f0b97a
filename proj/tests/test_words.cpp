#include <random>

#include "cayleysaw/errors.hpp"
#include "cayleysaw/oracles.hpp"
#include "cayleysaw/words.hpp"
#include "doctest.h"

using namespace cayleysaw;

namespace {

std::vector<Letter> random_letters(std::mt19937& rng, const Presentation& p, std::size_t len) {
  std::uniform_int_distribution<GenIndex> gen(0, static_cast<GenIndex>(p.rank() - 1));
  std::bernoulli_distribution sign(0.5);
  std::vector<Letter> out;
  for (std::size_t i = 0; i < len; ++i) {
    const GenIndex g = gen(rng);
    const bool inv = p.is_involution(g) ? false : sign(rng);
    out.push_back({g, static_cast<std::int8_t>(inv ? -1 : 1)});
  }
  return out;
}

}  // namespace

TEST_CASE("parse a two-generator presentation") {
  const Presentation p = parse_presentation("gens x y\nrel x y x^-1 y^-1");
  CHECK(p.rank() == 2);
  REQUIRE(p.relators.size() == 1);
  CHECK(p.relators[0].size() == 4);
  CHECK_FALSE(p.family);
}

TEST_CASE("higman relators have length five") {
  const Presentation p = higman_presentation();
  REQUIRE(p.relators.size() == 4);
  for (const auto& r : p.relators) CHECK(r.size() == 5);
  const Presentation v = higman_variant_presentation();
  REQUIRE(v.relators.size() == 4);
  CHECK(v.relators[0].size() == 5);
  CHECK(v.relators[1].size() == 7);
  CHECK(v.relators[2].size() == 9);
  CHECK(v.relators[3].size() == 11);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_presentation("gens a\nrel a a a\nrel b");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 5);
    CHECK(std::string(e.what()).find("undeclared") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_presentation("gens a a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a\ninv a\nrel a^-1"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a\nrel (a a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a\nrel (a)^0"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a\nrel a^2"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a\nrelate a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a\nfamily nope"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a\nrel a a^-1"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens 1a"), ParseError);
}

TEST_CASE("comments and powers") {
  const Presentation p = parse_presentation("# header\ngens a b  # two\nrel (a b)^3 # cube\n");
  REQUIRE(p.relators.size() == 1);
  CHECK(to_string(p.relators[0], p) == "a b a b a b");
  const Presentation q = parse_presentation("gens a b\nrel ((a b^-1)^2 a)^2");
  CHECK(to_string(q.relators[0], q) == "a b^-1 a b^-1 a a b^-1 a b^-1 a");
}

TEST_CASE("free reduction") {
  const Presentation p = parse_presentation("gens a b\ninv b");
  const Presentation xy = parse_presentation("gens x y");
  CHECK(free_reduce(std::vector<Letter>{{0, 1}, {0, -1}, {1, 1}}, p) ==
        GenWord{{{1, 1}}});
  CHECK(free_reduce(std::vector<Letter>{{1, 1}, {1, 1}}, p).empty());
  CHECK(free_reduce(std::vector<Letter>{{0, 1}, {1, 1}, {1, -1}, {0, 1}}, xy) ==
        GenWord{{{0, 1}, {0, 1}}});
  CHECK(parse_word("1", p).empty());
  CHECK(parse_word("", p).empty());
  CHECK(to_string(GenWord{}, p) == "1");
}

TEST_CASE("free_reduce is idempotent on random words") {
  std::mt19937 rng(7);
  const Presentation p = parse_presentation("gens a b c\ninv c");
  for (int trial = 0; trial < 500; ++trial) {
    const auto raw = random_letters(rng, p, rng() % 65);
    const GenWord w = free_reduce(raw, p);
    CHECK(free_reduce(w.letters, p) == w);
    for (std::size_t i = 1; i < w.size(); ++i) CHECK(w.letters[i] != p.inverse(w.letters[i - 1]));
  }
}

TEST_CASE("exponent vectors") {
  const Presentation h = higman_presentation();
  CHECK(exponent_vector(h.relators[0], h) == std::vector<std::int64_t>{0, -1, 0, 0});
  const Presentation xy = parse_presentation("gens x y\nrel x y x^-1 y^-1");
  CHECK(exponent_vector(xy.relators[0], xy) == std::vector<std::int64_t>{0, 0});
  const Presentation v = higman_variant_presentation();
  CHECK(exponent_vector(v.relators[3], v) == std::vector<std::int64_t>{-1, 0, 0, 0});
}

TEST_CASE("exponent_vector is a homomorphism") {
  std::mt19937 rng(11);
  const Presentation p = parse_presentation("gens a b c\ninv b");
  for (int trial = 0; trial < 300; ++trial) {
    const GenWord u = free_reduce(random_letters(rng, p, rng() % 20), p);
    const GenWord v = free_reduce(random_letters(rng, p, rng() % 20), p);
    auto eu = exponent_vector(u, p);
    const auto ev = exponent_vector(v, p);
    const auto euv = exponent_vector(concat(u, v, p), p);
    // Involution letters cancel in pairs, so only their parity is homomorphic.
    for (std::size_t g = 0; g < p.rank(); ++g) {
      if (p.is_involution(static_cast<GenIndex>(g))) {
        CHECK((eu[g] + ev[g] - euv[g]) % 2 == 0);
      } else {
        CHECK(eu[g] + ev[g] == euv[g]);
      }
    }
  }
}

TEST_CASE("serialize round trip") {
  for (const Presentation& p :
       {higman_presentation(), higman_variant_presentation(), grig_hnn_presentation(),
        grigorchuk_presentation(), parse_presentation("gens x y\nrel x y x^-1 y^-1")}) {
    const Presentation q = parse_presentation(serialize(p));
    CHECK(q == p);
    CHECK(parse_presentation(serialize(q)) == q);
  }
}

TEST_CASE("grigorchuk substitution") {
  const Presentation p = grigorchuk_presentation();
  CHECK(to_string(grig_substitute(parse_word("a d", p), 1, p), p) == "a c a c");
  const GenWord w = parse_word("a b a c d", p);
  CHECK(grig_substitute(w, 0, p) == w);
  CHECK(to_string(grig_substitute(parse_word("b", p), 2, p), p) == "c");
  CHECK_THROWS_AS(grig_substitute(parse_word("x", parse_presentation("gens x")), 1,
                                  parse_presentation("gens x")),
                  ValidationError);
}

TEST_CASE("grig_substitute composes") {
  std::mt19937 rng(3);
  const Presentation p = grigorchuk_presentation();
  for (int trial = 0; trial < 100; ++trial) {
    const GenWord w = free_reduce(random_letters(rng, p, 1 + rng() % 12), p);
    const unsigned j = rng() % 3, k = rng() % 3;
    CHECK(grig_substitute(w, j + k, p) == grig_substitute(grig_substitute(w, j, p), k, p));
  }
}

TEST_CASE("family relators") {
  const Presentation p = grigorchuk_presentation();
  const auto f0 = p.family_relators(0);
  REQUIRE(f0.size() == 2);
  CHECK(to_string(f0[0], p) == "a d a d a d a d");
  CHECK(p.all_relators(2).size() == p.relators.size() + 6);
  CHECK(parse_presentation("gens a").family_relators(3).empty());
}
