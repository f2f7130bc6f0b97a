#include "cayleysaw/saw.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <deque>
#include <thread>

#include "cayleysaw/errors.hpp"

namespace cayleysaw {

namespace {

struct LocalCounts {
  std::vector<std::uint64_t> sigma;
  std::vector<std::uint64_t> beta;
};

// Depth-first enumeration of all continuations of `prefix` up to n steps,
// adding counts for lengths strictly greater than the prefix length.
// `visited` must have the prefix vertices marked on entry; it is restored.
template <bool kBridges>
void extend_prefix(const Ball& b, const std::vector<Vertex>& prefix, unsigned n,
                   const std::int64_t* heights, std::vector<std::uint8_t>& visited,
                   LocalCounts& out) {
  const unsigned p = static_cast<unsigned>(prefix.size() - 1);
  if (p >= n) return;
  const std::size_t D = b.degree();
  const Vertex* nbr = b.adjacency_data();
  std::uint64_t* sigma = out.sigma.data();
  std::uint64_t* beta = kBridges ? out.beta.data() : nullptr;

  std::vector<Vertex> path(n + 1);
  std::vector<std::uint32_t> cursor(n + 1, 0);
  std::vector<std::uint8_t> ok(kBridges ? n + 1 : 0);
  std::vector<std::int64_t> top(kBridges ? n + 1 : 0);
  std::int64_t h0 = 0;
  if constexpr (kBridges) {
    h0 = heights[prefix[0]];
    bool good = true;
    std::int64_t mx = h0;
    for (unsigned i = 1; i <= p; ++i) {
      good = good && heights[prefix[i]] > h0;
      mx = std::max(mx, heights[prefix[i]]);
    }
    ok[p] = good;
    top[p] = mx;
  }

  unsigned depth = p;
  path[p] = prefix[p];
  while (true) {
    if (cursor[depth] == D) {
      if (depth == p) break;
      visited[path[depth]] = 0;
      --depth;
      continue;
    }
    const Vertex u = nbr[path[depth] * D + cursor[depth]++];
    if (u == kNoVertex || visited[u]) continue;
    const unsigned nd = depth + 1;
    ++sigma[nd];
    bool good = false;
    std::int64_t mx = 0;
    if constexpr (kBridges) {
      const std::int64_t hu = heights[u];
      good = ok[depth] && hu > h0;
      mx = std::max(top[depth], hu);
      if (good && hu == mx) ++beta[nd];
    }
    if (nd == n) continue;
    depth = nd;
    path[nd] = u;
    cursor[nd] = 0;
    visited[u] = 1;
    if constexpr (kBridges) {
      ok[nd] = good;
      top[nd] = mx;
    }
  }
  (void)h0;
}

SawReport enumerate(const Ball& b, unsigned n, const std::int64_t* heights, SawOptions options) {
  if (b.oracle() && b.radius() < n)
    throw ValidationError("ball radius " + std::to_string(b.radius()) +
                          " is below the walk length " + std::to_string(n) +
                          "; counts would be incomplete");
  if (options.workers < 1) throw ValidationError("need at least one worker");
  const auto start = std::chrono::steady_clock::now();

  SawReport rep;
  rep.max_len = n;
  rep.degree = b.degree();
  rep.ball_radius = b.radius();
  rep.workers = options.workers;
  rep.sigma.assign(n + 1, 0);
  if (heights) rep.beta = std::vector<BigInt>(n + 1, 0);

  // Short walks and the work prefixes come from one sequential pass.
  const unsigned p = std::min(options.prefix_depth, n);
  std::vector<std::vector<Vertex>> prefixes;
  {
    LocalCounts head{std::vector<std::uint64_t>(n + 1, 0), std::vector<std::uint64_t>(n + 1, 0)};
    std::vector<std::uint8_t> visited(b.size(), 0);
    visited[0] = 1;
    if (heights) {
      extend_prefix<true>(b, {0}, p, heights, visited, head);
    } else {
      extend_prefix<false>(b, {0}, p, heights, visited, head);
    }
    head.sigma[0] = 1;
    head.beta[0] = 1;
    for (unsigned k = 0; k <= p; ++k) {
      rep.sigma[k] = head.sigma[k];
      if (heights) (*rep.beta)[k] = head.beta[k];
    }
    if (p < n) for_each_saw(b, p, [&](const std::vector<Vertex>& w) { prefixes.push_back(w); });
  }

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(options.workers, std::max<std::size_t>(1, prefixes.size())));
  std::vector<std::vector<BigInt>> sigma_parts(workers, std::vector<BigInt>(n + 1, 0));
  std::vector<std::vector<BigInt>> beta_parts(workers, std::vector<BigInt>(n + 1, 0));
  std::atomic<std::size_t> next{0};

  auto work = [&](unsigned id) {
    std::vector<std::uint8_t> visited(b.size(), 0);
    LocalCounts local{std::vector<std::uint64_t>(n + 1, 0), std::vector<std::uint64_t>(n + 1, 0)};
    while (true) {
      const std::size_t t = next.fetch_add(1);
      if (t >= prefixes.size()) break;
      const auto& pre = prefixes[t];
      for (Vertex v : pre) visited[v] = 1;
      std::fill(local.sigma.begin(), local.sigma.end(), 0);
      std::fill(local.beta.begin(), local.beta.end(), 0);
      if (heights) {
        extend_prefix<true>(b, pre, n, heights, visited, local);
      } else {
        extend_prefix<false>(b, pre, n, heights, visited, local);
      }
      for (Vertex v : pre) visited[v] = 0;
      for (unsigned k = p + 1; k <= n; ++k) {
        sigma_parts[id][k] += local.sigma[k];
        beta_parts[id][k] += local.beta[k];
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  for (unsigned id = 0; id < workers; ++id)
    for (unsigned k = p + 1; k <= n; ++k) {
      rep.sigma[k] += sigma_parts[id][k];
      if (heights) (*rep.beta)[k] += beta_parts[id][k];
    }
  for (const auto& s : rep.sigma) rep.nodes += s;
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace

SawReport count_saws(const Ball& b, unsigned n, SawOptions options) {
  return enumerate(b, n, nullptr, options);
}

SawReport count_bridges(const Ball& b, const std::vector<std::int64_t>& heights, unsigned n,
                        SawOptions options) {
  if (heights.size() != b.size()) throw ValidationError("one height per ball vertex expected");
  return enumerate(b, n, heights.data(), options);
}

MuUpperBounds mu_upper_bounds(const SawReport& rep) {
  MuUpperBounds out;
  out.bounds.reserve(rep.sigma.size());
  for (unsigned k = 1; k <= rep.max_len && k < rep.sigma.size(); ++k) {
    if (rep.sigma[k] == 0) throw ValidationError("zero SAW count: the graph is finite");
    const double bound = std::exp(log_of(rep.sigma[k]) / k);
    const double prev = out.bounds.empty() ? bound : out.bounds.back().running_min;
    out.bounds.push_back({k, bound, std::min(prev, bound)});
    if (out.best_n == 0 || bound < out.best) {
      out.best = bound;
      out.best_n = k;
    }
  }
  return out;
}

void for_each_saw(const Ball& b, unsigned n,
                  const std::function<void(const std::vector<Vertex>&)>& f) {
  if (b.oracle() && b.radius() < n) throw ValidationError("ball radius is below the walk length");
  std::vector<Vertex> path{0};
  std::vector<std::uint8_t> visited(b.size(), 0);
  visited[0] = 1;
  std::vector<std::size_t> cursor{0};
  if (n == 0) {
    f(path);
    return;
  }
  while (!cursor.empty()) {
    std::size_t& c = cursor.back();
    if (c == b.degree()) {
      visited[path.back()] = 0;
      path.pop_back();
      cursor.pop_back();
      continue;
    }
    const Vertex u = b.neighbor(path.back(), c++);
    if (u == kNoVertex || visited[u]) continue;
    path.push_back(u);
    if (path.size() == n + 1) {
      f(path);
      path.pop_back();
      continue;
    }
    visited[u] = 1;
    cursor.push_back(0);
  }
}

std::vector<Vertex> walk_from_labels(const Ball& b, const std::vector<std::size_t>& labels) {
  std::vector<Vertex> out{0};
  for (std::size_t l : labels) {
    if (l >= b.degree()) throw ValidationError("edge label out of range");
    const Vertex u = b.neighbor(out.back(), l);
    if (u == kNoVertex) throw ValidationError("walk leaves the ball");
    out.push_back(u);
  }
  return out;
}

bool is_saw(const Ball& b, const std::vector<Vertex>& path) {
  if (path.empty()) return false;
  std::vector<std::uint8_t> seen(b.size(), 0);
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] >= b.size() || seen[path[i]]) return false;
    seen[path[i]] = 1;
    if (i > 0 && !b.label_between(path[i - 1], path[i])) return false;
  }
  return true;
}

std::string to_string(Extendability e) {
  switch (e) {
    case Extendability::certified_extendable:
      return "certified-extendable";
    case Extendability::certified_dead:
      return "certified-dead";
    default:
      return "unknown";
  }
}

std::string to_string(EdgeColor c) {
  switch (c) {
    case EdgeColor::blue:
      return "blue";
    case EdgeColor::red:
      return "red";
    default:
      return "unknown";
  }
}

namespace {

class Extender {
 public:
  Extender(const Ball& b, const std::vector<Vertex>& path, unsigned K, unsigned escape,
           std::uint64_t budget)
      : b_(b), K_(K), escape_(escape), budget_(budget), on_(b.size(), 0) {
    for (Vertex v : path) on_[v] = 1;
  }

  // True if the region reachable from `end` off the path is closed and finite.
  bool enclosed(Vertex end) const {
    std::vector<std::uint8_t> seen(b_.size(), 0);
    std::deque<Vertex> queue{end};
    seen[end] = 1;
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      if (!b_.complete(v)) return false;
      for (std::size_t l = 0; l < b_.degree(); ++l) {
        const Vertex u = b_.neighbor(v, l);
        if (u == kNoVertex || on_[u] || seen[u]) continue;
        seen[u] = 1;
        queue.push_back(u);
      }
    }
    return true;
  }

  // Searches for a K-step continuation ending at distance >= escape.
  bool search(Vertex v, unsigned steps) {
    if (steps == K_) return b_.distance(v) >= escape_;
    if (b_.distance(v) + (K_ - steps) < escape_) return false;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    std::vector<Vertex> next;
    for (std::size_t l = 0; l < b_.degree(); ++l) {
      const Vertex u = b_.neighbor(v, l);
      if (u != kNoVertex && !on_[u]) next.push_back(u);
    }
    std::stable_sort(next.begin(), next.end(),
                     [&](Vertex x, Vertex y) { return b_.distance(x) > b_.distance(y); });
    for (Vertex u : next) {
      on_[u] = 1;
      const bool found = search(u, steps + 1);
      on_[u] = 0;
      if (found) return true;
      if (exhausted_) return false;
    }
    return false;
  }

 private:
  const Ball& b_;
  unsigned K_;
  unsigned escape_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<std::uint8_t> on_;
};

}  // namespace

Extendability extendable(const Ball& b, const std::vector<Vertex>& path, unsigned K,
                         ExtendOptions options) {
  if (!is_saw(b, path)) throw ValidationError("path is not a self-avoiding walk in the ball");
  if (K < 1) throw ValidationError("horizon must be >= 1");
  unsigned far = 0;
  for (Vertex v : path) far = std::max(far, b.distance(v));
  if (b.oracle() && far + K > b.radius())
    throw ValidationError("insufficient headroom: path reaches distance " + std::to_string(far) +
                          ", horizon " + std::to_string(K) + ", ball radius " +
                          std::to_string(b.radius()));
  const unsigned escape = options.escape_distance.value_or(far + 1);
  Extender ext(b, path, K, escape, options.node_budget);
  if (ext.enclosed(path.back())) return Extendability::certified_dead;
  if (ext.search(path.back(), 0)) return Extendability::certified_extendable;
  return Extendability::unknown;
}

EdgeColoring classify_saw_edges(const Ball& b, const std::vector<Vertex>& path, unsigned K,
                                std::optional<double> lambda, std::optional<std::size_t> mid_edge,
                                ExtendOptions options) {
  if (path.size() < 3 || (path.size() - 1) % 2 != 0)
    throw ValidationError("classification needs a walk with an even, positive number of steps");
  if (path.front() != 0) throw ValidationError("the walk must start at the root");
  if (b.degree() < 3) throw ValidationError("classification needs degree >= 3");
  const std::size_t steps = path.size() - 1;
  if (extendable(b, path, K, options) != Extendability::certified_extendable)
    throw ValidationError("walk is not certified extendable at horizon " + std::to_string(K));

  EdgeColoring out;
  out.half_length = static_cast<unsigned>(steps / 2);
  out.horizon = K;
  out.expected = steps * (b.degree() - 2);

  std::size_t mid = b.degree();
  if (mid_edge) {
    const Vertex w = *mid_edge < b.degree() ? b.neighbor(0, *mid_edge) : kNoVertex;
    if (w == kNoVertex || w == path[1]) throw ValidationError("invalid mid-edge label");
    mid = *mid_edge;
  } else {
    for (std::size_t l = 0; l < b.degree() && mid == b.degree(); ++l)
      if (b.neighbor(0, l) != path[1]) mid = l;
  }
  out.mid_edge_label = mid;

  std::vector<std::int64_t> position(b.size(), -1);
  for (std::size_t i = 0; i < path.size(); ++i) position[path[i]] = static_cast<std::int64_t>(i);

  for (std::size_t i = 0; i < steps; ++i) {
    const Vertex v = path[i];
    for (std::size_t l = 0; l < b.degree(); ++l) {
      if (i == 0 && l == mid) continue;
      const Vertex w = b.neighbor(v, l);
      if (w == kNoVertex) throw ValidationError("walk vertex is on the ball boundary");
      const std::int64_t pw = position[w];
      if (pw >= 0 && (pw == static_cast<std::int64_t>(i) + 1 || pw + 1 == static_cast<std::int64_t>(i)))
        continue;
      ColoredEdge e{v, l, w, EdgeColor::unknown};
      if (pw >= 0 && pw < static_cast<std::int64_t>(i)) {
        e.color = EdgeColor::red;  // closes a loop: not even a SAW
      } else {
        std::vector<Vertex> sub(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        sub.push_back(w);
        switch (extendable(b, sub, K, options)) {
          case Extendability::certified_extendable:
            e.color = EdgeColor::blue;
            break;
          case Extendability::certified_dead:
            e.color = EdgeColor::red;
            break;
          default:
            break;
        }
      }
      switch (e.color) {
        case EdgeColor::blue:
          ++out.blue;
          break;
        case EdgeColor::red:
          ++out.red;
          break;
        default:
          ++out.unknown;
      }
      out.edges.push_back(e);
    }
  }

  if (lambda) {
    const double D = static_cast<double>(b.degree());
    const double c = D * (D - 1) / ((D - 2) * (D - 2));
    out.lambda = lambda;
    out.lemma_bound = out.half_length * (1 + c * *lambda) / (D - 2) - (D - 1) / 2;
    if (static_cast<double>(out.blue) >= *out.lemma_bound) {
      out.lemma_holds = true;
    } else if (out.unknown == 0) {
      out.lemma_holds = false;
    }
  }
  return out;
}

}  // namespace cayleysaw
