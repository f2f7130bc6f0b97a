#include <algorithm>
#include <numeric>

#include "cayleysaw/cayley.hpp"
#include "cayleysaw/errors.hpp"
#include "doctest.h"

using namespace cayleysaw;

namespace {

Vertex at(const Ball& b, std::initializer_list<long> coords) {
  ZdElement e;
  for (long c : coords) e.coords.push_back(c);
  const auto v = b.locate(e);
  REQUIRE(v);
  return *v;
}

std::size_t label_of(const Ball& b, const char* gen, int exp = 1) {
  const auto& letters = b.oracle()->cayley_letters();
  const GenIndex g = b.oracle()->presentation().require(gen);
  for (std::size_t l = 0; l < letters.size(); ++l)
    if (letters[l].gen == g && letters[l].exp == exp) return l;
  FAIL("no such label");
  return 0;
}

// Counts root-fixing automorphisms by trying every layer-preserving permutation.
std::uint64_t brute_force_stabilizer(const Ball& b) {
  std::vector<std::vector<Vertex>> layers(b.radius() + 1);
  for (Vertex v = 0; v < b.size(); ++v) layers[b.distance(v)].push_back(v);
  const auto edges = b.edges();
  std::vector<std::vector<char>> adj(b.size(), std::vector<char>(b.size(), 0));
  for (const auto& e : edges) adj[e.src][e.dst] = adj[e.dst][e.src] = 1;

  std::vector<Vertex> phi(b.size());
  std::uint64_t count = 0;
  auto check = [&]() {
    for (const auto& e : edges)
      if (!adj[phi[e.src]][phi[e.dst]]) return;
    ++count;
  };
  // Odometer over the permutations of each layer.
  std::vector<std::vector<Vertex>> perm = layers;
  std::function<void(std::size_t)> rec = [&](std::size_t d) {
    if (d == perm.size()) {
      for (std::size_t k = 0; k < perm.size(); ++k)
        for (std::size_t i = 0; i < perm[k].size(); ++i) phi[layers[k][i]] = perm[k][i];
      check();
      return;
    }
    std::sort(perm[d].begin(), perm[d].end());
    do rec(d + 1);
    while (std::next_permutation(perm[d].begin(), perm[d].end()));
  };
  rec(0);
  return count;
}

}  // namespace

TEST_CASE("layer sizes") {
  CHECK(Ball::build(oracle_for("grigorchuk"), 2).layers() == std::vector<std::size_t>{1, 3, 5});
  CHECK(Ball::build(oracle_for("tree:3"), 3).layers() == std::vector<std::size_t>{1, 3, 6, 12});
  CHECK(Ball::build(oracle_for("z2"), 2).layers() == std::vector<std::size_t>{1, 4, 8});
  CHECK(Ball::build(oracle_for("tree:3"), 6).size() == 1 + 3 * 63);
  CHECK_THROWS_AS(Ball::build(oracle_for("z2"), 0), ValidationError);
  CHECK_THROWS_AS(Ball::build(oracle_for("z2"), 10, BallOptions{50}), CapExceeded);
}

TEST_CASE("grigorchuk second sphere") {
  const Ball b = Ball::build(oracle_for("grigorchuk"), 2);
  const auto o = b.oracle();
  const Presentation& p = o->presentation();
  for (const char* w : {"a b", "a c", "b a", "b c", "c b", "c a"}) {
    const auto v = b.locate(o->evaluate(parse_word(w, p)));
    REQUIRE(v);
    CHECK(b.distance(*v) == 2);
  }
  CHECK(b.locate(o->evaluate(parse_word("b c", p))) == b.locate(o->evaluate(parse_word("c b", p))));
}

TEST_CASE("ball structure invariants") {
  for (const char* name : {"z2", "zd:3", "free:2", "tree:3", "bs12", "grigorchuk", "bs:1,3"}) {
    const Ball b = Ball::build(oracle_for(name), 4);
    for (Vertex v = 0; v < b.size(); ++v) {
      if (b.distance(v) < b.radius()) {
        CHECK(b.known_degree(v) == b.degree());
        CHECK(b.complete(v));
      }
      for (std::size_t l = 0; l < b.degree(); ++l) {
        const Vertex u = b.neighbor(v, l);
        if (u == kNoVertex) continue;
        CHECK(u != v);
        CHECK(b.neighbor(u, b.inverse_label(l)) == v);
        const int gap = static_cast<int>(b.distance(u)) - static_cast<int>(b.distance(v));
        CHECK(std::abs(gap) <= 1);
      }
      CHECK(b.label_path(v).size() == b.distance(v));
    }
  }
}

TEST_CASE("layer sizes are deterministic") {
  const auto first = Ball::build(oracle_for("bs12"), 5).layers();
  CHECK(Ball::build(oracle_for("bs12"), 5).layers() == first);
  CHECK(Ball::build(oracle_for("bs12"), 6).layers().size() == 7);
}

TEST_CASE("girth") {
  for (unsigned r = 2; r <= 6; ++r) {
    const GirthResult g = girth(Ball::build(oracle_for("z2"), r));
    CHECK(g.length == 4u);
    CHECK(g.exact);
  }
  const GirthResult t = girth(Ball::build(oracle_for("tree:3"), 5));
  CHECK_FALSE(t.length);
  CHECK(t.certified_up_to == 11);
  const GirthResult gr = girth(Ball::build(oracle_for("grigorchuk"), 4));
  CHECK(gr.length == 4u);
  CHECK(gr.exact);
  CHECK(girth(Ball::build(oracle_for("bs12"), 4)).length == 5u);
  CHECK_THROWS_AS(girth(Ball::build(oracle_for("z2"), 1)), ValidationError);
}

TEST_CASE("cycle spectra") {
  const Ball bs = Ball::build(oracle_for("bs12"), 6);
  const CycleSpectrum s = edge_cycle_spectrum(bs, 6);
  for (const auto& e : s.edges) {
    const bool x = bs.letter(e.label).gen == 0;
    CHECK(e.shortest() == 5u);
    CHECK(e.counts.at(5) == (x ? 2u : 3u));
  }
  const Ball gr = Ball::build(oracle_for("grigorchuk"), 4);
  const CycleSpectrum gs = edge_cycle_spectrum(gr, 8);
  const auto a = label_of(gr, "a");
  for (const auto& e : gs.edges) {
    if (e.label == a) {
      CHECK((!e.shortest() || *e.shortest() > 4));
    } else {
      CHECK(e.shortest() == 4u);
    }
  }
  const CycleSpectrum ts = edge_cycle_spectrum(Ball::build(oracle_for("tree:3"), 5), 10);
  for (const auto& e : ts.edges) CHECK(e.counts.empty());
  CHECK_THROWS_AS(edge_cycle_spectrum(gr, 9), ValidationError);

  const Ball z = Ball::build(oracle_for("z2"), 4);
  const EdgeSpectrum ze = edge_cycles(z, 0, 0, 6);
  CHECK(ze.counts.at(4) == 2);
  CHECK(ze.counts.at(6) == 6);
}

TEST_CASE("BS(1,2) sheet lemmas") {
  for (unsigned r : {6u, 7u}) {
    const Ball b = Ball::build(oracle_for("bs12"), r);
    const BsSheetReport rep = verify_bs_sheet(b);
    CHECK(rep.all_pass());
    std::uint64_t inner = 0;
    for (unsigned d = 0; d + 5 <= r; ++d) inner += b.layers()[d];
    CHECK(rep.vertices_checked == inner);
    for (const auto& p : rep.properties) CHECK_MESSAGE(p.pass, p.name);
    REQUIRE(rep.census.size() == 1);
    CHECK(rep.census.begin()->first == std::pair<unsigned, unsigned>{2, 3});
    // Each cycle through the root uses two root edges; 2 * (2 + 2 + 3 + 3) / 2 cycles.
    CHECK(rep.five_cycles_at_root == 10);
  }
  const Ball b = Ball::build(oracle_for("bs12"), 6);
  const BsSheetReport swapped = verify_bs_sheet(b, [&](Vertex, std::size_t l) {
    return static_cast<GenIndex>(1 - b.edge_type(l));
  });
  CHECK_FALSE(swapped.properties[3].pass);
  CHECK_FALSE(swapped.all_pass());
  CHECK_THROWS_AS(verify_bs_sheet(Ball::build(oracle_for("bs12"), 5)), ValidationError);
  CHECK_THROWS_AS(verify_bs_sheet(Ball::build(oracle_for("z2"), 6)), ValidationError);
}

TEST_CASE("root stabilizer") {
  const Ball z = Ball::build(oracle_for("z2"), 2);
  const StabilizerReport zs = root_stabilizer_search(z);
  CHECK(zs.count == 8);
  CHECK(brute_force_stabilizer(z) == 8);

  const Ball t = Ball::build(oracle_for("tree:3"), 2);
  CHECK(root_stabilizer_search(t).count == 48);
  CHECK(brute_force_stabilizer(t) == 48);

  const Ball gr = Ball::build(oracle_for("grigorchuk"), 4);
  const StabilizerReport gs = root_stabilizer_search(gr);
  CHECK(gs.count >= 1);
  const auto a = label_of(gr, "a");
  CHECK(gs.fixing_root_edge.at(a) == gs.count);
  CHECK(gs.type_preserving.at(gr.edge_type(a)) == gs.count);

  for (const auto& phi : zs.automorphisms) {
    CHECK(phi[0] == 0);
    for (const auto& e : z.edges()) CHECK(z.label_between(phi[e.src], phi[e.dst]));
  }
  CHECK_THROWS_AS(root_stabilizer_search(Ball::build(oracle_for("z2"), 6), StabilizerOptions{50}),
                  CapExceeded);
}

TEST_CASE("isoperimetric upper bounds") {
  const Ball z = Ball::build(oracle_for("z2"), 12);
  for (long n = 1; n <= 5; ++n) {
    std::vector<Vertex> box;
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) box.push_back(at(z, {i, j}));
    std::uint64_t boundary = 0;
    CHECK(boundary_ratio(z, box, &boundary) == doctest::Approx(1.0 / n));
    CHECK(boundary == static_cast<std::uint64_t>(4 * n));
  }

  const Ball t = Ball::build(oracle_for("tree:3"), 8);
  const PhiBound one = phi_upper_bound(t, 1);
  CHECK(one.ratio == 1.0);
  for (std::size_t k = 2; k <= 9; ++k) {
    const PhiBound pb = phi_upper_bound(t, k);
    CHECK(pb.exhaustive);
    CHECK(pb.certified);
    // A subtree with k vertices has k + 2 boundary edges.
    CHECK(pb.witness.size() == k);
    CHECK(pb.boundary == k + 2);
    CHECK(pb.ratio >= 1.0 / 3);
    CHECK(boundary_ratio(t, pb.witness) == doctest::Approx(pb.ratio));
  }
  const PhiBound greedy = phi_upper_bound(t, 40, 6);
  CHECK_FALSE(greedy.exhaustive);
  CHECK(greedy.ratio == doctest::Approx(42.0 / 120));

  const PhiBound zb = phi_upper_bound(z, 12);
  CHECK(zb.ratio == doctest::Approx(14.0 / 48));
  CHECK_THROWS_AS(phi_upper_bound(t, 100000), ValidationError);
  CHECK_THROWS_AS(boundary_ratio(t, {}), ValidationError);
}

TEST_CASE("fixture graphs") {
  // A path 0-1-2 with a triangle 2-3-4 hanging off vertex 2.
  const Ball f = Ball::from_adjacency({{1}, {0, 2}, {1, 3, 4}, {2, 4}, {2, 3}});
  CHECK(f.size() == 5);
  CHECK(f.radius() == 3);
  CHECK(f.layers() == std::vector<std::size_t>{1, 1, 1, 2});
  for (Vertex v = 0; v < f.size(); ++v) CHECK(f.complete(v));
  CHECK_FALSE(girth(f).length);
  CHECK(cycles_at(f, 3, 3).size() == 2);
  CHECK_THROWS_AS(Ball::from_adjacency({{1}, {}}), ValidationError);
  CHECK_THROWS_AS(Ball::from_adjacency({{0}}), ValidationError);
}
