#include "cayleysaw/cayley.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "cayleysaw/errors.hpp"

namespace cayleysaw {

Ball Ball::build(OraclePtr oracle, unsigned radius, BallOptions options) {
  if (!oracle) throw ValidationError("ball needs an element oracle");
  if (radius < 1) throw ValidationError("ball radius must be >= 1");
  if (radius > 60000) throw ValidationError("ball radius too large");

  Ball b;
  b.oracle_ = oracle;
  b.radius_ = radius;
  b.degree_ = oracle->degree();
  const std::size_t D = b.degree_;
  b.inverse_label_.resize(D);
  for (std::size_t l = 0; l < D; ++l) b.inverse_label_[l] = oracle->inverse_label(l);

  std::vector<Element> frontier{oracle->identity()};
  b.index_.emplace(oracle->canonical_key(frontier[0]), 0);
  b.distance_.push_back(0);
  b.parent_.push_back(kNoVertex);
  b.parent_label_.push_back(0);
  b.layers_.push_back(1);

  Vertex first = 0;  // index of frontier[0]
  for (unsigned d = 0; d <= radius; ++d) {
    std::vector<Element> next;
    b.nbr_.resize(b.distance_.size() * D, kNoVertex);
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const Vertex v = first + static_cast<Vertex>(i);
      for (std::size_t l = 0; l < D; ++l) {
        Element e = oracle->multiply(frontier[i], oracle->cayley_letters()[l]);
        std::string key = oracle->canonical_key(e);
        auto it = b.index_.find(key);
        Vertex u;
        if (it != b.index_.end()) {
          u = it->second;
        } else if (d < radius) {
          if (b.distance_.size() >= options.vertex_cap)
            throw CapExceeded("ball exceeds vertex cap of " + std::to_string(options.vertex_cap));
          u = static_cast<Vertex>(b.distance_.size());
          b.index_.emplace(std::move(key), u);
          b.distance_.push_back(static_cast<std::uint16_t>(d + 1));
          b.parent_.push_back(v);
          b.parent_label_.push_back(static_cast<std::uint16_t>(l));
          b.nbr_.resize(b.distance_.size() * D, kNoVertex);
          next.push_back(std::move(e));
        } else {
          continue;
        }
        if (u == v) throw ValidationError("Cayley graph has a loop at label " + std::to_string(l));
        b.nbr_[v * D + l] = u;
      }
    }
    first += static_cast<Vertex>(frontier.size());
    frontier = std::move(next);
    if (d < radius) b.layers_.push_back(frontier.size());
  }

  b.complete_.assign(b.size(), 0);
  for (Vertex v = 0; v < b.size(); ++v) {
    b.complete_[v] = b.distance_[v] < radius ? 1 : 0;
    for (std::size_t l = 0; l < D; ++l) {
      const Vertex u = b.nbr_[v * D + l];
      if (u == kNoVertex) {
        if (b.complete_[v]) throw ValidationError("interior vertex is missing an edge");
        continue;
      }
      for (std::size_t m = 0; m < l; ++m)
        if (b.nbr_[v * D + m] == u) throw ValidationError("Cayley graph has parallel edges");
      if (b.nbr_[u * D + b.inverse_label_[l]] != v)
        throw ValidationError("adjacency is not symmetric");
    }
  }
  return b;
}

Ball Ball::from_adjacency(const std::vector<std::vector<Vertex>>& adjacency) {
  if (adjacency.empty()) throw ValidationError("fixture graph is empty");
  Ball b;
  const std::size_t n = adjacency.size();
  for (const auto& row : adjacency) b.degree_ = std::max(b.degree_, row.size());
  const std::size_t D = b.degree_;
  b.inverse_label_.assign(D, 0);
  for (std::size_t l = 0; l < D; ++l) b.inverse_label_[l] = l;

  // Relabel vertices in BFS order from vertex 0.
  std::vector<Vertex> order{0};
  std::vector<Vertex> index_of(n, kNoVertex);
  index_of[0] = 0;
  std::vector<unsigned> dist(n, 0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Vertex v = order[head];
    for (Vertex u : adjacency[v]) {
      if (u >= n) throw ValidationError("fixture edge to unknown vertex");
      if (u == v) throw ValidationError("fixture graph has a loop");
      if (index_of[u] == kNoVertex) {
        index_of[u] = static_cast<Vertex>(order.size());
        dist[u] = dist[v] + 1;
        order.push_back(u);
      }
    }
  }
  if (order.size() != n) throw ValidationError("fixture graph is not connected");

  b.nbr_.assign(n * D, kNoVertex);
  b.distance_.resize(n);
  b.parent_.assign(n, kNoVertex);
  b.parent_label_.assign(n, 0);
  b.complete_.assign(n, 1);
  for (Vertex i = 0; i < n; ++i) {
    const Vertex v = order[i];
    b.distance_[i] = static_cast<std::uint16_t>(dist[v]);
    b.radius_ = std::max<unsigned>(b.radius_, dist[v]);
    const auto& row = adjacency[v];
    for (std::size_t l = 0; l < row.size(); ++l) {
      const Vertex u = index_of[row[l]];
      for (std::size_t m = 0; m < l; ++m)
        if (b.nbr_[i * D + m] == u) throw ValidationError("fixture graph has parallel edges");
      b.nbr_[i * D + l] = u;
    }
  }
  for (Vertex i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < D; ++l) {
      const Vertex u = b.nbr_[i * D + l];
      if (u == kNoVertex) continue;
      if (!b.label_between(u, i)) throw ValidationError("fixture adjacency is not symmetric");
      if (b.parent_[i] == kNoVertex && i != 0 && b.distance_[u] + 1 == b.distance_[i]) {
        b.parent_[i] = u;
        b.parent_label_[i] = static_cast<std::uint16_t>(*b.label_between(u, i));
      }
    }
  }
  b.layers_.assign(b.radius_ + 1, 0);
  for (auto d : b.distance_) ++b.layers_[d];
  return b;
}

std::size_t Ball::known_degree(Vertex v) const {
  std::size_t k = 0;
  for (std::size_t l = 0; l < degree_; ++l)
    if (neighbor(v, l) != kNoVertex) ++k;
  return k;
}

std::size_t Ball::true_degree(Vertex v) const { return oracle_ ? degree_ : known_degree(v); }

std::optional<std::size_t> Ball::label_between(Vertex v, Vertex u) const {
  for (std::size_t l = 0; l < degree_; ++l)
    if (neighbor(v, l) == u) return l;
  return std::nullopt;
}

std::size_t Ball::inverse_label(std::size_t label) const {
  if (!oracle_) throw ValidationError("fixture graphs have no inverse labels");
  return inverse_label_.at(label);
}

Letter Ball::letter(std::size_t label) const {
  if (!oracle_) throw ValidationError("fixture graphs have no letters");
  return oracle_->cayley_letters().at(label);
}

GenIndex Ball::edge_type(std::size_t label) const {
  return oracle_ ? oracle_->cayley_letters().at(label).gen : static_cast<GenIndex>(label);
}

std::vector<std::size_t> Ball::label_path(Vertex v) const {
  std::vector<std::size_t> out;
  while (v != 0) {
    out.push_back(parent_label_.at(v));
    v = parent_[v];
  }
  std::reverse(out.begin(), out.end());
  return out;
}

GenWord Ball::word(Vertex v) const {
  std::vector<Letter> raw;
  for (std::size_t l : label_path(v)) raw.push_back(letter(l));
  return free_reduce(raw, oracle_->presentation());
}

std::optional<Vertex> Ball::locate(const Element& e) const {
  if (!oracle_) return std::nullopt;
  return locate_key(oracle_->canonical_key(e));
}

std::optional<Vertex> Ball::locate_key(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Ball::Edge> Ball::edges() const {
  std::vector<Edge> out;
  for (Vertex v = 0; v < size(); ++v)
    for (std::size_t l = 0; l < degree_; ++l) {
      const Vertex u = neighbor(v, l);
      if (u != kNoVertex && v < u) out.push_back({v, u, l});
    }
  return out;
}

GirthResult girth(const Ball& b) {
  if (b.radius() < 2 && b.oracle()) throw ValidationError("girth needs ball radius >= 2");
  // Branch of each vertex: the root neighbor its BFS-tree path passes through.
  std::vector<Vertex> branch(b.size(), kNoVertex);
  for (Vertex v = 1; v < b.size(); ++v)
    branch[v] = b.parent(v) == 0 ? v : branch[b.parent(v)];

  std::optional<unsigned> best;
  for (Vertex v = 1; v < b.size(); ++v)
    for (std::size_t l = 0; l < b.degree(); ++l) {
      const Vertex u = b.neighbor(v, l);
      if (u == kNoVertex || u == 0 || u < v) continue;
      if (b.parent(u) == v || b.parent(v) == u) continue;
      if (branch[u] == branch[v]) continue;
      const unsigned len = b.distance(u) + b.distance(v) + 1;
      if (!best || len < *best) best = len;
    }

  GirthResult r;
  r.length = best;
  // A cycle through the root of length <= 2r+1 stays inside the ball.
  r.certified_up_to = b.oracle() ? 2 * b.radius() + 1 : std::numeric_limits<unsigned>::max();
  r.exact = best && *best <= r.certified_up_to;
  return r;
}

std::optional<unsigned> EdgeSpectrum::shortest() const {
  for (const auto& [len, count] : counts)
    if (count > 0) return len;
  return std::nullopt;
}

namespace {

// Distances to a fixed target vertex, by BFS inside the ball.
std::vector<unsigned> distances_to(const Ball& b, Vertex target) {
  std::vector<unsigned> dist(b.size(), std::numeric_limits<unsigned>::max());
  std::deque<Vertex> queue{target};
  dist[target] = 0;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (std::size_t l = 0; l < b.degree(); ++l) {
      const Vertex u = b.neighbor(v, l);
      if (u != kNoVertex && dist[u] == std::numeric_limits<unsigned>::max()) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

// Enumerates simple paths start -> target of at most max_len edges that
// avoid `target` until the end. The callback receives the label sequence.
template <typename F>
void simple_paths(const Ball& b, Vertex start, Vertex target, unsigned max_len,
                  const std::vector<unsigned>& dist_to_target, std::vector<char>& on_path,
                  std::vector<std::size_t>& labels, F&& emit) {
  if (start == target) {
    emit(labels);
    return;
  }
  if (labels.size() >= max_len) return;
  const unsigned remaining = max_len - static_cast<unsigned>(labels.size());
  on_path[start] = 1;
  for (std::size_t l = 0; l < b.degree(); ++l) {
    const Vertex u = b.neighbor(start, l);
    if (u == kNoVertex || on_path[u]) continue;
    if (dist_to_target[u] + 1 > remaining) continue;
    labels.push_back(l);
    simple_paths(b, u, target, max_len, dist_to_target, on_path, labels, emit);
    labels.pop_back();
  }
  on_path[start] = 0;
}

}  // namespace

EdgeSpectrum edge_cycles(const Ball& b, Vertex v, std::size_t label, unsigned cap) {
  const Vertex w = b.neighbor(v, label);
  if (w == kNoVertex) throw ValidationError("edge leaves the ball");
  EdgeSpectrum out;
  out.from = v;
  out.label = label;
  out.certified_up_to = b.oracle() ? 2 * (b.radius() - b.distance(v)) + 1
                                   : std::numeric_limits<unsigned>::max();
  if (cap < 3) return out;
  const auto dist = distances_to(b, v);
  std::vector<char> on_path(b.size(), 0);
  std::vector<std::size_t> labels;
  // Simple paths w -> v; the one-edge path is the edge itself, not a cycle.
  auto emit = [&](const std::vector<std::size_t>& path) {
    if (path.size() == 1) return;
    ++out.counts[static_cast<unsigned>(path.size() + 1)];
  };
  simple_paths(b, w, v, cap - 1, dist, on_path, labels, emit);
  return out;
}

CycleSpectrum edge_cycle_spectrum(const Ball& b, unsigned cap) {
  if (b.oracle() && cap > 2 * b.radius())
    throw ValidationError("cycle cap must be <= 2 * radius");
  CycleSpectrum s;
  s.cap = cap;
  for (std::size_t l = 0; l < b.degree(); ++l)
    if (b.neighbor(0, l) != kNoVertex) s.edges.push_back(edge_cycles(b, 0, l, cap));
  return s;
}

std::vector<std::vector<std::size_t>> cycles_at(const Ball& b, Vertex v, unsigned length) {
  std::vector<std::vector<std::size_t>> out;
  if (length < 3) return out;
  const auto dist = distances_to(b, v);
  std::vector<char> on_path(b.size(), 0);
  std::vector<std::size_t> labels;
  for (std::size_t l = 0; l < b.degree(); ++l) {
    const Vertex w = b.neighbor(v, l);
    if (w == kNoVertex) continue;
    labels.assign(1, l);
    simple_paths(b, w, v, length, dist, on_path, labels, [&](const std::vector<std::size_t>& p) {
      if (p.size() == length) out.push_back(p);
    });
  }
  return out;
}

bool BsSheetReport::all_pass() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const SheetProperty& p) { return p.pass; });
}

BsSheetReport verify_bs_sheet(const Ball& b, const EdgeTypeFn& type_fn) {
  const ElementOracle* o = b.oracle();
  if (!o || o->presentation().rank() != 2 || b.degree() != 4 ||
      !o->is_identity(o->evaluate(parse_word("x^-1 y x y^-1 y^-1", o->presentation()))))
    throw ValidationError("sheet check needs a BS(1,2) ball");
  if (b.radius() < 6) throw ValidationError("ball too small for the sheet check (radius >= 6)");
  const EdgeTypeFn type = type_fn ? type_fn : EdgeTypeFn([&b](Vertex, std::size_t l) {
    return b.edge_type(l);
  });
  constexpr GenIndex X = 0;
  constexpr GenIndex Y = 1;

  BsSheetReport rep;
  rep.radius = b.radius();
  rep.properties = {{"common-5-cycle", true, 0},
                    {"third-edge-after-x", true, 0},
                    {"third-edge-after-x-inverse", true, 0},
                    {"consecutive-types", true, 0},
                    {"five-cycle-counts", true, 0}};
  auto fail = [&](std::size_t i) {
    rep.properties[i].pass = false;
    ++rep.properties[i].violations;
  };

  const auto& letters = b.oracle()->cayley_letters();
  for (Vertex g = 0; g < b.size(); ++g) {
    if (b.distance(g) + 5 > b.radius()) continue;
    ++rep.vertices_checked;
    const auto cycles = cycles_at(b, g, 5);

    // Pairs (first label, label at g of the closing edge) seen in a common cycle.
    std::vector<std::vector<char>> share(b.degree(), std::vector<char>(b.degree(), 0));
    std::vector<std::uint64_t> through(b.degree(), 0);
    for (const auto& c : cycles) {
      std::vector<Vertex> verts{g};
      for (std::size_t l : c) verts.push_back(b.neighbor(verts.back(), l));
      std::vector<GenIndex> t(5);
      for (std::size_t i = 0; i < 5; ++i) t[i] = type(verts[i], c[i]);
      const std::size_t back = *b.label_between(g, verts[4]);
      share[c[0]][back] = share[back][c[0]] = 1;
      ++through[c[0]];

      const Letter first = letters[c[0]];
      if (first.gen == X && first.exp > 0 && t[2] != Y) fail(1);
      if (first.gen == X && first.exp < 0 && t[2] != X) fail(2);

      bool yy = false, xx = false;
      for (std::size_t i = 0; i < 5; ++i) {
        const GenIndex p = t[i], q = t[(i + 1) % 5];
        yy |= p == Y && q == Y;
        xx |= p == X && q == X;
      }
      if (!yy || xx) fail(3);

      if (g == 0) {
        unsigned nx = 0;
        for (auto ti : t) nx += ti == X ? 1 : 0;
        ++rep.census[{nx, 5 - nx}];
        ++rep.five_cycles_at_root;
      }
    }
    for (std::size_t lx = 0; lx < b.degree(); ++lx)
      for (std::size_t ly = 0; ly < b.degree(); ++ly)
        if (type(g, lx) == X && type(g, ly) == Y && !share[lx][ly]) fail(0);
    for (std::size_t l = 0; l < b.degree(); ++l) {
      const std::uint64_t want = type(g, l) == X ? 2 : 3;
      if (through[l] != want) fail(4);
    }
  }
  return rep;
}

StabilizerReport root_stabilizer_search(const Ball& b, StabilizerOptions options) {
  if (b.size() > options.vertex_cap)
    throw CapExceeded("ball has " + std::to_string(b.size()) +
                      " vertices, over the stabilizer search cap of " +
                      std::to_string(options.vertex_cap));
  const std::size_t n = b.size();
  const std::size_t D = b.degree();
  std::vector<std::size_t> deg(n);
  for (Vertex v = 0; v < n; ++v) deg[v] = b.known_degree(v);

  // Earlier neighbors of each vertex in index (BFS) order.
  std::vector<std::vector<Vertex>> earlier(n);
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t l = 0; l < D; ++l) {
      const Vertex u = b.neighbor(v, l);
      if (u != kNoVertex && u < v) earlier[v].push_back(u);
    }

  GenIndex types = 0;
  for (std::size_t l = 0; l < D; ++l) types = std::max(types, b.edge_type(l) + 1);

  StabilizerReport rep;
  rep.type_preserving.assign(types, 0);
  for (std::size_t l = 0; l < D; ++l)
    if (b.neighbor(0, l) != kNoVertex) rep.fixing_root_edge.push_back(0);

  std::vector<Vertex> phi(n, kNoVertex);
  std::vector<char> used(n, 0);
  phi[0] = 0;
  used[0] = 1;

  auto record = [&]() {
    ++rep.count;
    if (rep.count > options.automorphism_cap)
      throw CapExceeded("more than " + std::to_string(options.automorphism_cap) +
                        " root-fixing automorphisms");
    if (rep.automorphisms.size() < options.keep) rep.automorphisms.push_back(phi);
    for (GenIndex t = 0; t < types; ++t) {
      bool ok = true;
      for (Vertex v = 0; v < n && ok; ++v)
        for (std::size_t l = 0; l < D && ok; ++l) {
          const Vertex u = b.neighbor(v, l);
          if (u == kNoVertex || b.edge_type(l) != t) continue;
          const auto img = b.label_between(phi[v], phi[u]);
          ok = img && b.edge_type(*img) == t;
        }
      if (ok) ++rep.type_preserving[t];
    }
    std::size_t slot = 0;
    for (std::size_t l = 0; l < D; ++l) {
      const Vertex u = b.neighbor(0, l);
      if (u == kNoVertex) continue;
      if (phi[u] == u) ++rep.fixing_root_edge[slot];
      ++slot;
    }
  };

  // Explicit stack of candidate cursors, one per BFS position.
  std::vector<std::size_t> cursor(n, 0);
  std::size_t pos = 1;
  if (n == 1) {
    record();
    return rep;
  }
  while (true) {
    const Vertex v = static_cast<Vertex>(pos);
    const Vertex p = b.parent(v);
    bool placed = false;
    while (cursor[pos] < D) {
      const Vertex cand = b.neighbor(phi[p], cursor[pos]++);
      if (cand == kNoVertex || used[cand]) continue;
      if (b.distance(cand) != b.distance(v) || deg[cand] != deg[v]) continue;
      bool ok = true;
      for (Vertex u : earlier[v])
        if (!b.label_between(cand, phi[u])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      std::size_t mapped = 0;
      for (std::size_t l = 0; l < D; ++l) {
        const Vertex w = b.neighbor(cand, l);
        if (w != kNoVertex && used[w]) ++mapped;
      }
      if (mapped != earlier[v].size()) continue;
      phi[v] = cand;
      used[cand] = 1;
      placed = true;
      break;
    }
    if (placed) {
      if (pos + 1 == n) {
        record();
        used[phi[v]] = 0;
        phi[v] = kNoVertex;
        continue;
      }
      ++pos;
      cursor[pos] = 0;
      continue;
    }
    // Exhausted: backtrack.
    cursor[pos] = 0;
    --pos;
    if (pos == 0) break;
    used[phi[pos]] = 0;
    phi[pos] = kNoVertex;
  }
  return rep;
}

double boundary_ratio(const Ball& b, const std::vector<Vertex>& set, std::uint64_t* boundary) {
  if (set.empty()) throw ValidationError("boundary ratio of an empty set");
  std::vector<char> in(b.size(), 0);
  for (Vertex v : set) {
    if (v >= b.size()) throw ValidationError("vertex outside the ball");
    if (in[v]) throw ValidationError("vertex listed twice");
    in[v] = 1;
  }
  std::uint64_t total = 0;
  std::uint64_t internal = 0;
  for (Vertex v : set) {
    total += b.true_degree(v);
    for (std::size_t l = 0; l < b.degree(); ++l) {
      const Vertex u = b.neighbor(v, l);
      if (u != kNoVertex && in[u]) ++internal;
    }
  }
  const std::uint64_t bd = total - internal;
  if (boundary) *boundary = bd;
  return static_cast<double>(bd) / static_cast<double>(b.degree() * set.size());
}

namespace {

// Redelmeier enumeration of connected sets containing the root.
class AnimalSearch {
 public:
  AnimalSearch(const Ball& b, std::size_t limit, PhiBound& best)
      : b_(b), limit_(limit), best_(best), marked_(b.size(), 0), in_(b.size(), 0) {}

  void run() {
    marked_[0] = 1;
    extend({0});
  }

 private:
  void extend(std::vector<Vertex> untried) {
    while (!untried.empty()) {
      const Vertex v = untried.back();
      untried.pop_back();
      std::uint64_t inner = 0;
      for (std::size_t l = 0; l < b_.degree(); ++l) {
        const Vertex u = b_.neighbor(v, l);
        if (u != kNoVertex && in_[u]) ++inner;
      }
      set_.push_back(v);
      in_[v] = 1;
      degree_sum_ += b_.true_degree(v);
      internal_ += inner;
      consider();
      if (set_.size() < limit_) {
        std::vector<Vertex> next = untried;
        std::vector<Vertex> added;
        for (std::size_t l = 0; l < b_.degree(); ++l) {
          const Vertex u = b_.neighbor(v, l);
          if (u != kNoVertex && !marked_[u]) {
            marked_[u] = 1;
            next.push_back(u);
            added.push_back(u);
          }
        }
        extend(std::move(next));
        for (Vertex u : added) marked_[u] = 0;
      }
      internal_ -= inner;
      degree_sum_ -= b_.true_degree(v);
      in_[v] = 0;
      set_.pop_back();
    }
  }

  void consider() {
    ++best_.sets_examined;
    const std::uint64_t bd = degree_sum_ - 2 * internal_;
    // Compare bd/|W| against best.boundary/|best| exactly.
    const bool better = best_.witness.empty() ||
                        bd * best_.witness.size() < best_.boundary * set_.size();
    if (better) {
      best_.boundary = bd;
      best_.witness = set_;
    }
  }

  const Ball& b_;
  std::size_t limit_;
  PhiBound& best_;
  std::vector<char> marked_;
  std::vector<char> in_;
  std::vector<Vertex> set_;
  std::uint64_t degree_sum_ = 0;
  std::uint64_t internal_ = 0;
};

}  // namespace

PhiBound phi_upper_bound(const Ball& b, std::size_t max_set_size, std::size_t exhaustive_limit) {
  if (max_set_size < 1) throw ValidationError("max set size must be >= 1");
  if (max_set_size > b.size()) throw ValidationError("max set size exceeds the ball");
  PhiBound best;
  const std::size_t exact = std::min(max_set_size, exhaustive_limit);
  AnimalSearch(b, exact, best).run();
  best.exhaustive = exact == max_set_size;

  if (max_set_size > exact) {
    // Greedy growth from the root: add the vertex that minimizes the new boundary.
    std::vector<char> in(b.size(), 0);
    std::vector<Vertex> set{0};
    in[0] = 1;
    std::uint64_t bd = b.true_degree(0);
    while (set.size() < max_set_size) {
      Vertex pick = kNoVertex;
      std::uint64_t pick_bd = 0;
      for (Vertex v : set)
        for (std::size_t l = 0; l < b.degree(); ++l) {
          const Vertex u = b.neighbor(v, l);
          if (u == kNoVertex || in[u]) continue;
          std::uint64_t inner = 0;
          for (std::size_t m = 0; m < b.degree(); ++m) {
            const Vertex w = b.neighbor(u, m);
            if (w != kNoVertex && in[w]) ++inner;
          }
          const std::uint64_t nb = bd + b.true_degree(u) - 2 * inner;
          if (pick == kNoVertex || nb < pick_bd || (nb == pick_bd && u < pick)) {
            pick = u;
            pick_bd = nb;
          }
        }
      if (pick == kNoVertex) break;
      in[pick] = 1;
      set.push_back(pick);
      bd = pick_bd;
      if (bd * best.witness.size() < best.boundary * set.size()) {
        best.boundary = bd;
        best.witness = set;
      }
    }
  }
  best.ratio = static_cast<double>(best.boundary) /
               static_cast<double>(b.degree() * best.witness.size());
  best.certified = std::all_of(best.witness.begin(), best.witness.end(),
                               [&](Vertex v) { return b.complete(v) || b.oracle(); });
  return best;
}

}  // namespace cayleysaw
