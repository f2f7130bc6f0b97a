#include "cayleysaw/heightfn.hpp"

#include <algorithm>

#include "cayleysaw/errors.hpp"

namespace cayleysaw {

std::int64_t HeightAssignment::of(const GenWord& w) const {
  std::int64_t s = 0;
  for (Letter l : w.letters) s += of(l);
  return s;
}

bool HeightAssignment::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](std::int64_t v) { return v == 0; });
}

std::string to_string(GhfVerdict v) { return v == GhfVerdict::exists ? "exists" : "none"; }

std::string to_string(GhfObstruction o) {
  return o == GhfObstruction::trivial_abelianization ? "trivial-abelianization"
                                                     : "all-generators-torsion";
}

namespace {

using Matrix = std::vector<std::vector<BigInt>>;

// s a + t b = g with g = gcd(a, b) >= 0.
void ext_gcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& s, BigInt& t) {
  BigInt r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const BigInt q = r0 / r1;
    BigInt tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  g = r0;
  s = s0;
  t = t0;
}

// Row Hermite normal form: positive pivots, entries above pivots reduced into [0, pivot).
Matrix hermite_rows(Matrix m) {
  if (m.empty()) return m;
  const std::size_t cols = m[0].size();
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < m.size(); ++c) {
    for (std::size_t r = top + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      BigInt g, s, t;
      ext_gcd(m[top][c], m[r][c], g, s, t);
      const BigInt a = m[top][c] / g, b = m[r][c] / g;
      for (std::size_t j = 0; j < cols; ++j) {
        const BigInt x = m[top][j], y = m[r][j];
        m[top][j] = s * x + t * y;
        m[r][j] = -b * x + a * y;
      }
    }
    if (m[top][c] == 0) continue;
    if (m[top][c] < 0)
      for (auto& x : m[top]) x = -x;
    for (std::size_t r = 0; r < top; ++r) {
      BigInt q = m[r][c] / m[top][c];
      if (m[r][c] - q * m[top][c] < 0) q -= 1;
      if (q != 0)
        for (std::size_t j = 0; j < cols; ++j) m[r][j] -= q * m[top][j];
    }
    ++top;
  }
  m.resize(top);
  return m;
}

}  // namespace

Matrix integer_nullspace(const Matrix& rows, std::size_t k) {
  Matrix a = rows;
  for (const auto& r : a)
    if (r.size() != k) throw ValidationError("constraint row has the wrong length");
  // u starts as the identity; columns are kept as vectors u[col][i].
  Matrix u(k, std::vector<BigInt>(k, 0));
  for (std::size_t i = 0; i < k; ++i) u[i][i] = 1;

  auto combine = [&](std::size_t p, std::size_t j, const BigInt& s, const BigInt& t,
                     const BigInt& x, const BigInt& y) {
    // col p <- s col p + t col j ; col j <- x col p + y col j
    for (auto& row : a) {
      const BigInt cp = row[p], cj = row[j];
      row[p] = s * cp + t * cj;
      row[j] = x * cp + y * cj;
    }
    for (std::size_t i = 0; i < k; ++i) {
      const BigInt cp = u[p][i], cj = u[j][i];
      u[p][i] = s * cp + t * cj;
      u[j][i] = x * cp + y * cj;
    }
  };

  std::size_t p = 0;
  for (std::size_t r = 0; r < a.size() && p < k; ++r) {
    for (std::size_t j = p + 1; j < k; ++j) {
      if (a[r][j] == 0) continue;
      BigInt g, s, t;
      ext_gcd(a[r][p], a[r][j], g, s, t);
      const BigInt ap = a[r][p] / g, aj = a[r][j] / g;
      combine(p, j, s, t, -aj, ap);
    }
    if (a[r][p] != 0) ++p;
  }
  Matrix kernel(u.begin() + static_cast<std::ptrdiff_t>(p), u.end());
  return hermite_rows(std::move(kernel));
}

GhfCertificate solve_group_height_function(const Presentation& p, int family_cap,
                                           bool relators_sufficient) {
  const std::size_t k = p.rank();
  Matrix rows;
  for (const auto& r : p.all_relators(family_cap)) {
    std::vector<BigInt> row;
    for (auto e : exponent_vector(r, p)) row.emplace_back(e);
    rows.push_back(std::move(row));
  }
  for (std::size_t g = 0; g < k; ++g) {
    if (!p.generators[g].involution) continue;
    std::vector<BigInt> row(k, 0);
    row[g] = 2;
    rows.push_back(std::move(row));
  }

  GhfCertificate cert;
  cert.constraint_rows = rows.size();
  cert.basis = integer_nullspace(rows, k);
  cert.rank = cert.basis.size();
  if (cert.rank == 0) {
    cert.verdict = GhfVerdict::none;
    cert.obstruction = p.all_involutions() ? GhfObstruction::all_generators_torsion
                                           : GhfObstruction::trivial_abelianization;
    cert.definitive = true;
    return cert;
  }
  cert.verdict = GhfVerdict::exists;
  cert.definitive = relators_sufficient;
  HeightAssignment w;
  for (const auto& x : cert.basis[0]) {
    if (x > INT64_MAX || x < INT64_MIN) throw CapExceeded("witness height exceeds 64 bits");
    w.values.push_back(static_cast<std::int64_t>(x));
  }
  cert.witness = std::move(w);
  return cert;
}

std::vector<std::int64_t> vertex_heights(const Ball& b, const HeightAssignment& h) {
  if (!b.oracle()) throw ValidationError("heights need a Cayley ball");
  if (h.values.size() != b.oracle()->presentation().rank())
    throw ValidationError("height assignment has the wrong number of generators");
  std::vector<std::int64_t> out(b.size(), 0);
  std::vector<std::int64_t> step(b.degree());
  for (std::size_t l = 0; l < b.degree(); ++l) step[l] = h.of(b.letter(l));
  for (Vertex v = 1; v < b.size(); ++v) {
    const Vertex p = b.parent(v);
    out[v] = out[p] + step[*b.label_between(p, v)];
  }
  for (Vertex v = 0; v < b.size(); ++v)
    for (std::size_t l = 0; l < b.degree(); ++l) {
      const Vertex u = b.neighbor(v, l);
      if (u != kNoVertex && out[u] != out[v] + step[l])
        throw ValidationError("height function is path dependent (a relation has nonzero height)");
    }
  return out;
}

GraphHeightReport verify_graph_height_function(const Ball& b, const HeightAssignment& h,
                                               const std::vector<GenWord>& translations) {
  const auto heights = vertex_heights(b, h);
  const ElementOracle& o = *b.oracle();
  GraphHeightReport rep;
  rep.root_zero = heights[0] == 0;

  for (const GenWord& gamma : translations) {
    const Element g = o.evaluate(gamma);
    std::optional<std::int64_t> shift;
    for (Vertex u = 0; u < b.size(); ++u) {
      const auto gu = b.locate(o.multiply(g, b.word(u)));
      if (!gu) continue;
      ++rep.translation_pairs;
      const std::int64_t d = heights[*gu] - heights[u];
      if (!shift) shift = d;
      if (d != *shift) {
        rep.translation_invariant = false;
        ++rep.translation_failures;
      }
    }
  }

  for (Vertex v = 0; v < b.size(); ++v) {
    if (!b.complete(v)) continue;
    ++rep.interior_vertices;
    bool lower = false, higher = false;
    for (std::size_t l = 0; l < b.degree(); ++l) {
      const Vertex u = b.neighbor(v, l);
      lower |= heights[u] < heights[v];
      higher |= heights[u] > heights[v];
    }
    if (!lower || !higher) {
      rep.strict_neighbors = false;
      ++rep.interior_failures;
    }
  }
  return rep;
}

HarmonicReport is_harmonic(const Ball& b, const std::vector<std::int64_t>& heights) {
  if (heights.size() != b.size()) throw ValidationError("one height per ball vertex expected");
  HarmonicReport rep;
  for (Vertex v = 0; v < b.size(); ++v) {
    if (!b.complete(v)) continue;
    ++rep.vertices_checked;
    std::int64_t sum = 0;
    for (std::size_t l = 0; l < b.degree(); ++l) {
      const Vertex u = b.neighbor(v, l);
      if (u != kNoVertex) sum += heights[u];
    }
    const std::int64_t dev = static_cast<std::int64_t>(b.known_degree(v)) * heights[v] - sum;
    const std::uint64_t mag = static_cast<std::uint64_t>(dev < 0 ? -dev : dev);
    rep.max_deviation = std::max(rep.max_deviation, mag);
  }
  rep.harmonic = rep.max_deviation == 0;
  return rep;
}

HarmonicReport is_harmonic(const Ball& b, const HeightAssignment& h) {
  if (b.radius() < 2) throw ValidationError("harmonicity check needs radius >= 2");
  return is_harmonic(b, vertex_heights(b, h));
}

bool bridge_predicate(const std::vector<Vertex>& path, const std::vector<std::int64_t>& heights) {
  if (path.size() <= 1) return true;
  const std::int64_t h0 = heights.at(path.front());
  const std::int64_t hn = heights.at(path.back());
  for (std::size_t i = 1; i < path.size(); ++i) {
    const std::int64_t hi = heights.at(path[i]);
    if (!(h0 < hi && hi <= hn)) return false;
  }
  return true;
}

}  // namespace cayleysaw
