#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cayleysaw/oracles.hpp"

namespace cayleysaw {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

struct BallOptions {
  std::size_t vertex_cap = 20'000'000;
};

// Finite rooted piece of a Cayley graph: every element within `radius` of the
// identity, with all edges between them. Vertex 0 is the root and indices
// follow BFS discovery order. Edges are labels into the oracle's Cayley
// letters; neighbor(v, l) == kNoVertex when v * l lies outside the ball.
class Ball {
 public:
  // Throws CapExceeded past options.vertex_cap, ValidationError if the Cayley
  // graph has a loop or a parallel edge.
  static Ball build(OraclePtr oracle, unsigned radius, BallOptions options = {});

  // Hand-made graph for fixtures: adjacency[v] lists v's neighbors, vertex 0 is
  // the root, and every vertex is complete (no edges leave the graph).
  static Ball from_adjacency(const std::vector<std::vector<Vertex>>& adjacency);

  unsigned radius() const noexcept { return radius_; }
  std::size_t degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return distance_.size(); }
  const std::vector<std::size_t>& layers() const noexcept { return layers_; }

  Vertex neighbor(Vertex v, std::size_t label) const { return nbr_[v * degree_ + label]; }
  // Row-major neighbor table, degree() entries per vertex.
  const Vertex* adjacency_data() const noexcept { return nbr_.data(); }
  unsigned distance(Vertex v) const { return distance_[v]; }
  // All neighbors of v are inside the ball.
  bool complete(Vertex v) const { return complete_[v] != 0; }
  std::size_t known_degree(Vertex v) const;
  // Degree of v in the full graph (degree() for Cayley balls).
  std::size_t true_degree(Vertex v) const;

  // Label l with neighbor(v, l) == u, if adjacent.
  std::optional<std::size_t> label_between(Vertex v, Vertex u) const;
  std::size_t inverse_label(std::size_t label) const;

  const ElementOracle* oracle() const noexcept { return oracle_.get(); }
  const OraclePtr& oracle_ptr() const noexcept { return oracle_; }
  // Cayley letter of a label (requires an oracle).
  Letter letter(std::size_t label) const;
  // Generator index of a label's letter, or the label itself for fixtures.
  GenIndex edge_type(std::size_t label) const;

  // Geodesic word from the root along the BFS tree.
  std::vector<std::size_t> label_path(Vertex v) const;
  GenWord word(Vertex v) const;
  Vertex parent(Vertex v) const { return parent_[v]; }

  std::optional<Vertex> locate(const Element& e) const;
  std::optional<Vertex> locate_key(const std::string& key) const;

  struct Edge {
    Vertex src;
    Vertex dst;
    std::size_t label;
  };
  // Each undirected edge once, src < dst, label read from src.
  std::vector<Edge> edges() const;

 private:
  OraclePtr oracle_;
  unsigned radius_ = 0;
  std::size_t degree_ = 0;
  std::vector<Vertex> nbr_;
  std::vector<std::uint16_t> distance_;
  std::vector<std::uint8_t> complete_;
  std::vector<Vertex> parent_;
  std::vector<std::uint16_t> parent_label_;
  std::vector<std::size_t> layers_;
  std::vector<std::size_t> inverse_label_;
  std::unordered_map<std::string, Vertex> index_;
};

struct GirthResult {
  std::optional<unsigned> length;  // nullopt: no cycle inside the ball
  bool exact = false;
  // Cycles through the root up to this length cannot hide outside the ball.
  unsigned certified_up_to = 0;
};

// Shortest cycle through the root, which is the girth of a transitive graph.
GirthResult girth(const Ball& b);

struct EdgeSpectrum {
  Vertex from = 0;
  std::size_t label = 0;
  std::map<unsigned, std::uint64_t> counts;  // cycle length -> number of cycles
  unsigned certified_up_to = 0;              // counts at lengths <= this are exact
  std::optional<unsigned> shortest() const;
};

struct CycleSpectrum {
  unsigned cap = 0;
  std::vector<EdgeSpectrum> edges;  // one per label at the root
};

// Counts the cycles through directed edge [v, v*label> of length 3..cap.
EdgeSpectrum edge_cycles(const Ball& b, Vertex v, std::size_t label, unsigned cap);
// Cycle counts for every edge at the root. Requires cap <= 2 * radius.
CycleSpectrum edge_cycle_spectrum(const Ball& b, unsigned cap);

// Directed cycles of a given length starting and ending at v, as label sequences.
std::vector<std::vector<std::size_t>> cycles_at(const Ball& b, Vertex v, unsigned length);

using EdgeTypeFn = std::function<GenIndex(Vertex, std::size_t)>;

struct SheetProperty {
  std::string name;
  bool pass = true;
  std::uint64_t violations = 0;
};

struct BsSheetReport {
  unsigned radius = 0;
  std::uint64_t vertices_checked = 0;
  std::vector<SheetProperty> properties;  // the five sheet lemmas, in order
  // Census of 5-cycles through the root: (x-type edges, y-type edges) -> count.
  std::map<std::pair<unsigned, unsigned>, std::uint64_t> census;
  std::uint64_t five_cycles_at_root = 0;
  bool all_pass() const;
};

// Sheet lemmas of the BS(1,2) Cayley graph, checked at every vertex within
// radius - 5 of the root. Edge types default to the generator of each label
// (0 = x, 1 = y); tests pass a mutated typing. Requires radius >= 6.
BsSheetReport verify_bs_sheet(const Ball& b, const EdgeTypeFn& type = {});

struct StabilizerOptions {
  std::size_t vertex_cap = 5000;
  std::size_t automorphism_cap = 1'000'000;
  std::size_t keep = 64;  // permutations retained in the report
};

struct StabilizerReport {
  std::uint64_t count = 0;
  std::vector<std::vector<Vertex>> automorphisms;  // first `keep` found
  // Per generator: automorphisms mapping every edge of that type to that type.
  std::vector<std::uint64_t> type_preserving;
  // Per root label l: automorphisms fixing the root neighbor along l.
  std::vector<std::uint64_t> fixing_root_edge;
};

// All automorphisms of the ball graph that fix the root (backtracking in BFS order).
StabilizerReport root_stabilizer_search(const Ball& b, StabilizerOptions options = {});

struct PhiBound {
  double ratio = 1.0;
  std::vector<Vertex> witness;
  std::uint64_t boundary = 0;
  bool certified = false;
  bool exhaustive = false;  // true if every admissible set was examined
  std::uint64_t sets_examined = 0;
};

// |boundary edges of W| / (degree * |W|) for a vertex set inside the ball.
double boundary_ratio(const Ball& b, const std::vector<Vertex>& set, std::uint64_t* boundary = nullptr);

// Minimizes the boundary ratio over connected sets containing the root with
// at most max_set_size vertices: exhaustively up to exhaustive_limit, then
// greedily. A finite set gives an upper bound on the isoperimetric constant.
PhiBound phi_upper_bound(const Ball& b, std::size_t max_set_size,
                         std::size_t exhaustive_limit = 12);

}  // namespace cayleysaw
