#include <set>

#include "cayleysaw/cayley.hpp"
#include "cayleysaw/errors.hpp"
#include "cayleysaw/oracles.hpp"
#include "doctest.h"

using namespace cayleysaw;

TEST_CASE("registry resolves builtins") {
  CHECK(oracle_for("z2")->degree() == 4);
  CHECK(oracle_for("zd:3")->degree() == 6);
  CHECK(oracle_for("free:2")->degree() == 4);
  CHECK(oracle_for("tree:3")->degree() == 3);
  CHECK(oracle_for("bs12")->degree() == 4);
  CHECK(oracle_for("bs:1,3")->name() == "bs:1,3");
  CHECK(oracle_for("grigorchuk")->degree() == 3);
  CHECK(oracle_for("tree:3")->presentation().all_involutions());
  CHECK_FALSE(resolve_group("higman").oracle);
  CHECK_THROWS_AS(oracle_for("higman"), ValidationError);
  CHECK_THROWS_AS(oracle_for("tree:2"), ValidationError);
  CHECK_THROWS_AS(oracle_for("zd:0"), ValidationError);
  CHECK_THROWS_AS(oracle_for("bs:2,3"), ValidationError);
  CHECK_THROWS_AS(oracle_for("nope"), ValidationError);
  CHECK_THROWS_AS(oracle_for("zd:x"), ValidationError);
}

TEST_CASE("z2 identity and moves") {
  const auto o = oracle_for("z2");
  const auto& id = std::get<ZdElement>(o->identity());
  CHECK(id.coords == std::vector<BigInt>{0, 0});
  CHECK(o->is_identity(o->evaluate(parse_word("x y x^-1 y^-1", o->presentation()))));
}

TEST_CASE("bs12 affine model satisfies the relator") {
  const auto o = oracle_for("bs12");
  const Presentation& p = o->presentation();
  const Element lhs = o->evaluate(parse_word("x^-1 y x", p));
  const Element rhs = o->evaluate(parse_word("y y", p));
  CHECK(o->canonical_key(lhs) == o->canonical_key(rhs));
  CHECK(verify_relators(*o, p, 6).all_pass());
  // x y x^-1 is t -> t + 1/2; its square is y.
  const Element half = o->evaluate(parse_word("x y x^-1", p));
  const auto& h = std::get<BsElement>(half);
  CHECK(h.k == 0);
  CHECK(h.num == 1);
  CHECK(h.den_exp == 1);
  CHECK(o->canonical_key(o->multiply(half, parse_word("x y x^-1", p))) ==
        o->canonical_key(o->evaluate(parse_word("y", p))));
  CHECK_FALSE(o->is_identity(o->evaluate(parse_word("x y x^-1 y^-1", p))));
}

TEST_CASE("bs12 exponents add and denominators stay minimal") {
  const auto o = oracle_for("bs12");
  const Presentation& p = o->presentation();
  const auto e = std::get<BsElement>(o->evaluate(parse_word("y x^-1 x^-1 x y x^-1", p)));
  // t -> t/4 + 3/4
  CHECK(e.k == -2);
  CHECK(e.num == 3);
  CHECK(e.den_exp == 2);
  const auto f = std::get<BsElement>(o->evaluate(parse_word("x^-1 y y x", p)));
  CHECK(f.den_exp == 0);
  CHECK(f.num == 4);
}

TEST_CASE("grigorchuk relations") {
  const auto o = oracle_for("grigorchuk");
  const Presentation& p = o->presentation();
  std::vector<GenWord> words;
  for (const char* w : {"(b c)^2", "(a b c)^4", "(a c)^8", "(a b c a c a c)^4", "(a c a b)^8",
                        "(a b)^16"})
    words.push_back(parse_word(w, p));
  CHECK(verify_words(*o, words).all_pass());
  CHECK(verify_relators(*o, p, 6).all_pass());
  CHECK_FALSE(verify_words(*o, {parse_word("(a b)^8", p)}).all_pass());
  CHECK(element_order(*o, parse_word("a b", p)) == 16u);
  CHECK(element_order(*o, parse_word("a c", p)) == 8u);
}

TEST_CASE("every registered presentation passes its oracle") {
  for (const char* name : {"z1", "z2", "zd:3", "free:2", "tree:3", "tree:5", "bs12", "bs:1,3",
                           "grigorchuk"}) {
    const GroupSpec g = resolve_group(name);
    CHECK_MESSAGE(verify_relators(*g.oracle, g.presentation, 6).all_pass(), name);
  }
  CHECK_THROWS_AS(verify_relators(*oracle_for("z2"), higman_presentation(), 0), ValidationError);
}

TEST_CASE("multiplying by a letter and its inverse is the identity") {
  for (const char* name : {"z2", "zd:3", "free:2", "tree:4", "bs12", "grigorchuk"}) {
    const auto o = oracle_for(name);
    const Ball b = Ball::build(o, 3);
    for (Vertex v = 0; v < b.size(); v += 3) {
      const Element e = o->evaluate(b.word(v));
      for (std::size_t l = 0; l < o->degree(); ++l) {
        const Element back = o->multiply(o->multiply(e, o->cayley_letters()[l]),
                                         o->cayley_letters()[o->inverse_label(l)]);
        CHECK(o->canonical_key(back) == o->canonical_key(e));
      }
    }
  }
}

TEST_CASE("canonical keys do not collide on radius-5 balls") {
  for (const char* name : {"z2", "zd:3", "free:2", "tree:3", "bs12", "grigorchuk"}) {
    const auto o = oracle_for(name);
    const Ball b = Ball::build(o, 5);
    std::set<std::string> keys;
    for (Vertex v = 0; v < b.size(); ++v) {
      const Element e = o->evaluate(b.word(v));
      keys.insert(o->canonical_key(e));
      CHECK(b.locate(e) == v);
    }
    CHECK_MESSAGE(keys.size() == b.size(), name);
    // Distinct keys mean distinct elements: u v^-1 is never the identity.
    for (Vertex u = 1; u < b.size(); u += 17) {
      const GenWord uw = b.word(u);
      for (Vertex v = 0; v < u; v += 13) {
        const GenWord q = concat(uw, inverse(b.word(v), o->presentation()), o->presentation());
        CHECK_FALSE(o->is_identity(o->evaluate(q)));
      }
    }
  }
}

TEST_CASE("element orders") {
  const auto z1 = oracle_for("z1");
  CHECK_FALSE(element_order(*z1, parse_word("x", z1->presentation()), 100));
  CHECK(element_order(*z1, GenWord{}, 5) == 1u);
  const auto t = oracle_for("tree:3");
  CHECK(element_order(*t, parse_word("a", t->presentation())) == 2u);
  CHECK_FALSE(element_order(*t, parse_word("a b", t->presentation()), 64));
}
