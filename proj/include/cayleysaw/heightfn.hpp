#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cayleysaw/bigint.hpp"
#include "cayleysaw/cayley.hpp"
#include "cayleysaw/words.hpp"

namespace cayleysaw {

// h(s) per generator of a presentation; h(s^-1) = -h(s) is implied.
struct HeightAssignment {
  std::vector<std::int64_t> values;

  std::int64_t of(Letter l) const { return l.exp * values.at(l.gen); }
  std::int64_t of(const GenWord& w) const;
  bool is_zero() const;
};

enum class GhfVerdict { exists, none };
// trivial_abelianization: the abelianization has free rank 0.
enum class GhfObstruction { trivial_abelianization, all_generators_torsion };

std::string to_string(GhfVerdict v);
std::string to_string(GhfObstruction o);

struct GhfCertificate {
  GhfVerdict verdict = GhfVerdict::none;
  std::size_t rank = 0;
  // Hermite-normal-form basis of the solution lattice (rows), primitive.
  std::vector<std::vector<BigInt>> basis;
  std::optional<HeightAssignment> witness;  // first basis row
  std::optional<GhfObstruction> obstruction;
  // "none" always settles the question; "exists" only when the relators are
  // known to present the group.
  bool definitive = false;
  std::size_t constraint_rows = 0;
};

// Solves sum_i h(s_i) = 0 over every relator (family members up to family_cap)
// plus 2 h(s) = 0 for involutions, in the integers.
GhfCertificate solve_group_height_function(const Presentation& p, int family_cap = kDefaultFamilyCap,
                                           bool relators_sufficient = false);

// Integer kernel of an integer matrix (rows of equal length), as the rows of
// its Hermite normal form.
std::vector<std::vector<BigInt>> integer_nullspace(const std::vector<std::vector<BigInt>>& rows,
                                                   std::size_t columns);

// Vertex heights along BFS words. Throws ValidationError if some ball edge
// disagrees (h does not respect the relations).
std::vector<std::int64_t> vertex_heights(const Ball& b, const HeightAssignment& h);

struct GraphHeightReport {
  bool root_zero = false;
  bool translation_invariant = true;
  bool strict_neighbors = true;
  std::uint64_t translation_pairs = 0;     // (gamma, u) pairs with gamma u in the ball
  std::uint64_t translation_failures = 0;
  std::uint64_t interior_vertices = 0;
  std::uint64_t interior_failures = 0;     // vertices lacking a lower or a higher neighbor
  bool all_pass() const { return root_zero && translation_invariant && strict_neighbors; }
};

// Checks h(id) = 0, that h(gamma u) - h(u) does not depend on u for each
// translation gamma (left multiplication), and that every interior vertex has
// neighbors strictly below and strictly above it.
GraphHeightReport verify_graph_height_function(const Ball& b, const HeightAssignment& h,
                                               const std::vector<GenWord>& translations);

struct HarmonicReport {
  bool harmonic = true;
  std::uint64_t max_deviation = 0;  // max |deg(v) h(v) - sum of neighbor heights|
  std::uint64_t vertices_checked = 0;
};

HarmonicReport is_harmonic(const Ball& b, const HeightAssignment& h);
HarmonicReport is_harmonic(const Ball& b, const std::vector<std::int64_t>& heights);

// h(v_0) < h(v_i) <= h(v_n) for 1 <= i <= n. The empty walk is a bridge.
bool bridge_predicate(const std::vector<Vertex>& path, const std::vector<std::int64_t>& heights);

}  // namespace cayleysaw
