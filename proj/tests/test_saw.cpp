#include <cmath>
#include <set>

#include "cayleysaw/errors.hpp"
#include "cayleysaw/heightfn.hpp"
#include "cayleysaw/saw.hpp"
#include "doctest.h"

using namespace cayleysaw;

namespace {

// Reference count straight from the oracle: recursive walk, visited set of keys.
void naive(const ElementOracle& o, const Element& e, unsigned left, std::set<std::string>& seen,
           std::vector<std::uint64_t>& counts, unsigned depth) {
  if (left == 0) return;
  for (const Letter& s : o.cayley_letters()) {
    const Element f = o.multiply(e, s);
    const std::string key = o.canonical_key(f);
    if (seen.count(key)) continue;
    ++counts[depth + 1];
    seen.insert(key);
    naive(o, f, left - 1, seen, counts, depth + 1);
    seen.erase(key);
  }
}

std::vector<std::uint64_t> naive_counts(const ElementOracle& o, unsigned n) {
  std::vector<std::uint64_t> counts(n + 1, 0);
  counts[0] = 1;
  std::set<std::string> seen{o.canonical_key(o.identity())};
  naive(o, o.identity(), n, seen, counts, 0);
  return counts;
}

std::size_t label(const Ball& b, const char* gen, int exp) {
  const auto& letters = b.oracle()->cayley_letters();
  const GenIndex g = b.oracle()->presentation().require(gen);
  for (std::size_t l = 0; l < letters.size(); ++l)
    if (letters[l].gen == g && letters[l].exp == exp) return l;
  return b.degree();
}

}  // namespace

TEST_CASE("square lattice counts match the reference enumerator") {
  const auto o = oracle_for("z2");
  const auto ref = naive_counts(*o, 8);
  CHECK(ref[1] == 4);
  CHECK(ref[2] == 12);
  CHECK(ref[3] == 36);
  CHECK(ref[4] == 100);
  const SawReport rep = count_saws(Ball::build(o, 8), 8);
  for (unsigned k = 0; k <= 8; ++k) CHECK(rep.sigma[k] == ref[k]);
  CHECK(rep.sigma[8] == 5916);
}

TEST_CASE("optimized and naive enumerators agree on every builtin") {
  for (const char* name : {"z1", "z2", "zd:3", "free:2", "tree:3", "tree:4", "bs12", "grigorchuk",
                           "bs:1,3"}) {
    const auto o = oracle_for(name);
    const unsigned n = std::string(name) == "zd:3" ? 7 : 8;
    const auto ref = naive_counts(*o, n);
    const SawReport rep = count_saws(Ball::build(o, n), n, SawOptions{2, 2});
    for (unsigned k = 0; k <= n; ++k) CHECK_MESSAGE(rep.sigma[k] == ref[k], name << " n=" << k);
  }
}

TEST_CASE("tree counts") {
  const Ball t = Ball::build(oracle_for("tree:3"), 14);
  const SawReport rep = count_saws(t, 14);
  CHECK(rep.sigma[0] == 1);
  for (unsigned k = 1; k <= 14; ++k) CHECK(rep.sigma[k] == BigInt(3) * (BigInt(1) << (k - 1)));
}

TEST_CASE("counts are independent of workers and prefix depth") {
  const Ball z = Ball::build(oracle_for("z2"), 10);
  const SawReport one = count_saws(z, 10, SawOptions{1, 3});
  for (unsigned w : {2u, 3u, 4u})
    for (unsigned p : {1u, 3u, 5u, 10u, 12u}) CHECK(count_saws(z, 10, SawOptions{w, p}).sigma == one.sigma);
  CHECK_THROWS_AS(count_saws(z, 11), ValidationError);
  CHECK_THROWS_AS(count_saws(z, 5, SawOptions{0, 3}), ValidationError);
  CHECK(count_saws(z, 0).sigma == std::vector<BigInt>{1});
}

TEST_CASE("subadditivity and the tree bound") {
  for (const char* name : {"z2", "zd:3", "tree:3", "bs12", "grigorchuk", "free:2"}) {
    const auto o = oracle_for(name);
    const SawReport rep = count_saws(Ball::build(o, 8), 8);
    const BigInt D = rep.degree;
    for (unsigned m = 1; m <= 8; ++m) {
      BigInt tree = D;
      for (unsigned i = 1; i < m; ++i) tree *= D - 1;
      CHECK(rep.sigma[m] <= tree);
      for (unsigned k = 1; m + k <= 8; ++k) CHECK(rep.sigma[m + k] <= rep.sigma[m] * rep.sigma[k]);
    }
    const MuUpperBounds mu = mu_upper_bounds(rep);
    CHECK(mu.bounds.front().bound == doctest::Approx(static_cast<double>(rep.degree)));
    CHECK(mu.best <= static_cast<double>(rep.degree) + 1e-12);
    CHECK(mu.best >= std::sqrt(static_cast<double>(rep.degree) - 1) - 1e-12);
    for (std::size_t i = 1; i < mu.bounds.size(); ++i)
      CHECK(mu.bounds[i].running_min <= mu.bounds[i - 1].running_min);
  }
}

TEST_CASE("Fekete bounds") {
  const SawReport z = count_saws(Ball::build(oracle_for("z2"), 4), 4);
  CHECK(mu_upper_bounds(z).bounds[3].bound == doctest::Approx(std::pow(100.0, 0.25)));
  const SawReport t = count_saws(Ball::build(oracle_for("tree:4"), 10), 10);
  const MuUpperBounds mu = mu_upper_bounds(t);
  for (const auto& f : mu.bounds) CHECK(f.bound > 3.0);
  for (std::size_t i = 1; i < mu.bounds.size(); ++i) CHECK(mu.bounds[i].bound < mu.bounds[i - 1].bound);
  CHECK(mu.best_n == 10);
}

TEST_CASE("bridges") {
  const auto o = oracle_for("z2");
  const Ball z = Ball::build(o, 10);
  const auto h = vertex_heights(z, HeightAssignment{{1, 0}});
  const SawReport rep = count_bridges(z, h, 10, SawOptions{2, 3});
  REQUIRE(rep.beta);
  const auto& beta = *rep.beta;
  CHECK(beta[0] == 1);
  CHECK(beta[1] == 1);
  CHECK(beta[2] == 3);
  for (unsigned m = 0; m <= 10; ++m) {
    CHECK(beta[m] <= rep.sigma[m]);
    for (unsigned k = 0; m + k <= 10; ++k) CHECK(beta[m + k] >= beta[m] * beta[k]);
  }
  // Cross-check against the predicate over every walk.
  for (unsigned n = 0; n <= 6; ++n) {
    std::uint64_t direct = 0;
    for_each_saw(z, n, [&](const std::vector<Vertex>& w) { direct += bridge_predicate(w, h); });
    CHECK(beta[n] == direct);
  }
  CHECK(count_bridges(z, h, 10, SawOptions{1, 3}).beta == rep.beta);

  const Ball t = Ball::build(oracle_for("free:2"), 8);
  const auto ht = vertex_heights(t, HeightAssignment{{1, 0}});
  const SawReport tr = count_bridges(t, ht, 8);
  for (unsigned m = 0; m <= 8; ++m) CHECK((*tr.beta)[m] <= tr.sigma[m]);
}

TEST_CASE("walk helpers") {
  const Ball z = Ball::build(oracle_for("z2"), 3);
  const auto e = label(z, "x", 1), w = label(z, "x", -1), n = label(z, "y", 1);
  CHECK(is_saw(z, walk_from_labels(z, {e, n, w})));
  CHECK_FALSE(is_saw(z, walk_from_labels(z, {e, w})));
  CHECK_THROWS_AS(walk_from_labels(z, {e, e, e, e}), ValidationError);
  std::uint64_t count = 0;
  for_each_saw(z, 3, [&](const std::vector<Vertex>& p) {
    CHECK(is_saw(z, p));
    ++count;
  });
  CHECK(count == 36);
}

TEST_CASE("extendability") {
  const Ball t = Ball::build(oracle_for("tree:3"), 10);
  for (unsigned n = 1; n <= 4; ++n)
    for_each_saw(t, n, [&](const std::vector<Vertex>& p) {
      for (unsigned K = 1; K + n <= 10; K += 3)
        CHECK(extendable(t, p, K) == Extendability::certified_extendable);
    });

  const Ball z = Ball::build(oracle_for("z2"), 14);
  for (unsigned n = 1; n <= 6; ++n)
    for_each_saw(z, n, [&](const std::vector<Vertex>& p) {
      CHECK(extendable(z, p, 14 - n) == Extendability::certified_extendable);
    });
  CHECK_THROWS_AS(extendable(z, walk_from_labels(z, {0, 0}), 13), ValidationError);
  CHECK_THROWS_AS(extendable(z, {0, 0}, 1), ValidationError);

  // N E E S curls back toward the root but stays open.
  const auto curl = walk_from_labels(z, {label(z, "y", 1), label(z, "x", 1), label(z, "x", 1),
                                         label(z, "y", -1)});
  CHECK(extendable(z, curl, 4) == Extendability::certified_extendable);

  // Dead end of a finite fixture graph: a path 0-1-2 and a pocket 2-3.
  const Ball f = Ball::from_adjacency({{1}, {0, 2}, {1, 3}, {2}});
  CHECK(extendable(f, {0, 1, 2, 3}, 1) == Extendability::certified_dead);
}

TEST_CASE("trapped square lattice walk is certified dead") {
  const Ball z = Ball::build(oracle_for("z2"), 12);
  const auto e = label(z, "x", 1), w = label(z, "x", -1), n = label(z, "y", 1),
             s = label(z, "y", -1);
  // (0,0) E E N N W W S E ends at (1,1) with every neighbor on the walk.
  const auto p = walk_from_labels(z, {e, e, n, n, w, w, s, e});
  REQUIRE(is_saw(z, p));
  CHECK(extendable(z, p, 3) == Extendability::certified_dead);
}

TEST_CASE("edge coloring on the tree") {
  const Ball t = Ball::build(oracle_for("tree:3"), 12);
  const double lambda = 1 - 2 * std::sqrt(2.0) / 3;
  for_each_saw(t, 4, [&](const std::vector<Vertex>& p) {
    const EdgeColoring c = classify_saw_edges(t, p, 6, lambda);
    CHECK(c.edges.size() == 4);
    CHECK(c.expected == 4);
    CHECK(c.blue == 4);
    CHECK(c.red == 0);
    CHECK(c.unknown == 0);
    REQUIRE(c.lemma_bound);
    CHECK(*c.lemma_bound == doctest::Approx(2 * (1 + 6 * lambda) - 1));
    CHECK(c.lemma_holds == true);
  });
}

TEST_CASE("edge coloring on the square lattice") {
  const Ball z = Ball::build(oracle_for("z2"), 24);
  for (unsigned n2 : {2u, 4u, 6u}) {
    for_each_saw(z, n2, [&](const std::vector<Vertex>& p) {
      const EdgeColoring c = classify_saw_edges(z, p, 24 - n2);
      CHECK(c.unknown == 0);
      CHECK(c.blue + c.red == 2 * n2);
      CHECK(c.edges.size() == c.expected);
    });
  }
  const auto e = label(z, "x", 1);
  const EdgeColoring straight = classify_saw_edges(z, walk_from_labels(z, {e, e, e, e}), 8);
  CHECK(straight.blue + straight.red == 8);
  CHECK(straight.red == 0);
  CHECK_THROWS_AS(classify_saw_edges(z, walk_from_labels(z, {e, e, e}), 4), ValidationError);
  CHECK_THROWS_AS(classify_saw_edges(z, walk_from_labels(z, {e, e}), 4, {}, e), ValidationError);
}
