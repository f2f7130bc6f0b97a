#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cayleysaw/bigint.hpp"
#include "cayleysaw/cayley.hpp"

namespace cayleysaw {

struct SawOptions {
  unsigned workers = 1;
  unsigned prefix_depth = 3;  // walks of this length are the units of work
};

struct SawReport {
  unsigned max_len = 0;
  std::size_t degree = 0;
  unsigned ball_radius = 0;
  std::vector<BigInt> sigma;                // sigma[k], k = 0..max_len
  std::optional<std::vector<BigInt>> beta;  // bridge counts, when heights were given
  BigInt nodes = 0;                         // walks visited (sum of sigma)
  unsigned workers = 1;
  double wall_seconds = 0.0;
};

// Exact n-step SAW counts from the root. Requires radius >= n on Cayley balls.
SawReport count_saws(const Ball& b, unsigned n, SawOptions options = {});
// Same enumeration, also counting bridges for the given vertex heights.
SawReport count_bridges(const Ball& b, const std::vector<std::int64_t>& heights, unsigned n,
                        SawOptions options = {});

struct FeketeBound {
  unsigned n = 0;
  double bound = 0.0;        // sigma_n^(1/n)
  double running_min = 0.0;  // min over k <= n
};

struct MuUpperBounds {
  std::vector<FeketeBound> bounds;  // n = 1..max_len
  unsigned best_n = 0;
  double best = 0.0;
};

// Each sigma_n^(1/n) is an upper bound on the connective constant.
MuUpperBounds mu_upper_bounds(const SawReport& rep);

// Calls f(vertices) for every n-step SAW from the root, in lexicographic label order.
void for_each_saw(const Ball& b, unsigned n, const std::function<void(const std::vector<Vertex>&)>& f);

// Vertex sequence of the walk from the root along the given labels.
std::vector<Vertex> walk_from_labels(const Ball& b, const std::vector<std::size_t>& labels);
bool is_saw(const Ball& b, const std::vector<Vertex>& path);

enum class Extendability { certified_extendable, certified_dead, unknown };
std::string to_string(Extendability e);

struct ExtendOptions {
  // Endpoint distance the K-step extension must reach; default: one more
  // than the farthest vertex of the path.
  std::optional<unsigned> escape_distance;
  std::uint64_t node_budget = 2'000'000;
};

// certified_extendable: some K-step SAW continuation stays in the ball and ends
// at distance >= escape_distance. certified_dead: the region reachable from the
// endpoint avoiding the path is finite and closed in the full graph, so no
// infinite continuation exists. Requires n + K <= radius on Cayley balls.
Extendability extendable(const Ball& b, const std::vector<Vertex>& path, unsigned K,
                         ExtendOptions options = {});

enum class EdgeColor { blue, red, unknown };
std::string to_string(EdgeColor c);

struct ColoredEdge {
  Vertex from = 0;
  std::size_t label = 0;
  Vertex to = 0;
  EdgeColor color = EdgeColor::unknown;
};

struct EdgeColoring {
  unsigned half_length = 0;  // the path has 2n steps
  unsigned horizon = 0;
  std::size_t mid_edge_label = 0;
  std::vector<ColoredEdge> edges;
  std::uint64_t blue = 0;
  std::uint64_t red = 0;
  std::uint64_t unknown = 0;
  std::uint64_t expected = 0;  // 2n (degree - 2)
  std::optional<double> lambda;
  std::optional<double> lemma_bound;  // n (1 + c lambda) / (D - 2) - (D - 1) / 2
  std::optional<bool> lemma_holds;    // unset when unknown edges leave it open
};

// Colors the oriented edges [v,w> with v on the path before its endpoint and
// <v,w> off the path (and off a mid-edge at the root): blue when the path up
// to v followed by w is extendable, red otherwise.
EdgeColoring classify_saw_edges(const Ball& b, const std::vector<Vertex>& path, unsigned K,
                                std::optional<double> lambda = {},
                                std::optional<std::size_t> mid_edge = {},
                                ExtendOptions options = {});

}  // namespace cayleysaw
