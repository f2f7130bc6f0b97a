#include "cayleysaw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "cayleysaw/errors.hpp"

namespace cayleysaw {

namespace {

constexpr double kTolerance = 1e-12;

BigInt pow_int(std::uint64_t base, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

void finish(ReturnProbSeries& s, const std::vector<BigInt>& walks) {
  const double log_d = std::log(static_cast<double>(s.degree));
  BigInt denom = 1;
  const BigInt d2 = BigInt(s.degree) * s.degree;
  std::optional<double> prev;
  for (unsigned n = 0; n < walks.size(); ++n) {
    if (n > 0) denom *= d2;
    ReturnProb e;
    e.n = n;
    e.closed_walks = walks[n];
    e.p = BigRational(walks[n], denom);
    if (n > 0) {
      if (walks[n] == 0) throw ValidationError("no closed walk of length " + std::to_string(2 * n));
      e.rho = std::exp((log_of(walks[n]) - 2.0 * n * log_d) / (2.0 * n));
      e.lambda = 1.0 - *e.rho;
      if (prev && *e.rho < *prev * (1 - kTolerance)) s.rho_nondecreasing = false;
      prev = e.rho;
    }
    s.entries.push_back(std::move(e));
  }
  if (walks.size() >= 3) {
    const std::size_t n = walks.size() - 1;
    s.rho_ratio = std::sqrt(std::exp(log_of(walks[n]) - log_of(walks[n - 1]))) / s.degree;
  }
}

}  // namespace

ReturnProbSeries return_probabilities(const Ball& b, unsigned N, unsigned workers) {
  if (workers == 0) throw ValidationError("workers must be positive");
  bool finite = true;
  for (Vertex v = 0; v < b.size() && finite; ++v) finite = b.complete(v);
  if (!finite && b.radius() < N)
    throw ValidationError("ball radius " + std::to_string(b.radius()) + " is below N = " +
                          std::to_string(N));
  const std::size_t D = b.degree();
  for (Vertex v = 0; v < b.size(); ++v)
    if (b.true_degree(v) != D) throw ValidationError("return probabilities need a regular graph");

  ReturnProbSeries s;
  s.degree = D;
  s.max_half_time = N;
  s.method = "ball";

  // prefix[d]: number of vertices within distance d; BFS order keeps layers contiguous.
  std::vector<std::size_t> prefix;
  std::size_t acc = 0;
  for (std::size_t c : b.layers()) prefix.push_back(acc += c);
  auto within = [&](long d) -> std::size_t {
    if (d < 0) return 0;
    return prefix[std::min<std::size_t>(static_cast<std::size_t>(d), prefix.size() - 1)];
  };

  std::vector<BigInt> cur(b.size(), 0), next(b.size(), 0);
  cur[0] = 1;
  std::vector<BigInt> walks{1};
  const Vertex* nbr = b.adjacency_data();
  for (unsigned k = 0; k < 2 * N; ++k) {
    // Only vertices that can still return to the root by time 2N matter.
    const long reach = std::min<long>(k + 1, 2L * N - k - 1);
    const std::size_t active = within(reach), source = within(std::min<long>(k, 2L * N - k));
    auto pull = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t v = lo; v < hi; ++v) {
        BigInt sum = 0;
        for (std::size_t l = 0; l < D; ++l) {
          const Vertex u = nbr[v * D + l];
          if (u != kNoVertex && u < source && !cur[u].is_zero()) sum += cur[u];
        }
        next[v] = std::move(sum);
      }
    };
    if (workers == 1 || active < 256) {
      pull(0, active);
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (active + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk, hi = std::min(active, lo + chunk);
        if (lo < hi) pool.emplace_back(pull, lo, hi);
      }
      for (auto& t : pool) t.join();
    }
    for (std::size_t v = active; v < source; ++v) next[v] = 0;
    std::swap(cur, next);
    if (k % 2 == 1) walks.push_back(cur[0]);
  }
  finish(s, walks);
  return s;
}

ReturnProbSeries tree_return_probabilities(unsigned delta, unsigned N) {
  if (delta < 2) throw ValidationError("tree degree must be at least 2");
  ReturnProbSeries s;
  s.degree = delta;
  s.max_half_time = N;
  s.method = "distance-chain";
  std::vector<BigInt> cur(N + 2, 0), next(N + 2, 0);
  cur[0] = 1;
  std::vector<BigInt> walks{1};
  for (unsigned k = 0; k < 2 * N; ++k) {
    std::fill(next.begin(), next.end(), BigInt(0));
    const unsigned top = std::min(k, 2 * N - k);
    for (unsigned d = 0; d <= top && d <= N; ++d) {
      if (cur[d].is_zero()) continue;
      if (d == 0) {
        next[1] += cur[0] * delta;
      } else {
        next[d - 1] += cur[d];
        if (d + 1 <= N) next[d + 1] += cur[d] * (delta - 1);
      }
    }
    std::swap(cur, next);
    if (k % 2 == 1) walks.push_back(cur[0]);
  }
  finish(s, walks);
  return s;
}

Surd lambda_tree(unsigned delta) {
  if (delta < 3) throw ValidationError("lambda_tree needs degree >= 3");
  // 2 sqrt(D - 1) / D = (2 s / D) sqrt(t) with D - 1 = s^2 t, t squarefree
  std::uint64_t t = delta - 1, s = 1;
  for (std::uint64_t q = 2; q * q <= t; ++q)
    while (t % (q * q) == 0) {
      t /= q * q;
      s *= q;
    }
  Surd out;
  out.a = 1;
  out.coefficient = BigRational(BigInt(2 * s), BigInt(delta));
  out.radicand = t;
  out.value = 1.0 - 2.0 * std::sqrt(static_cast<double>(delta - 1)) / delta;
  const BigInt num = boost::multiprecision::numerator(out.coefficient);
  const BigInt den = boost::multiprecision::denominator(out.coefficient);
  if (t == 1) {
    out.exact = to_string(BigRational(out.a - out.coefficient));
    out.a -= out.coefficient;
    out.coefficient = 0;
  } else {
    out.exact = "1 - " + (num == 1 ? std::string() : num.str() + "*") + "sqrt(" +
                std::to_string(t) + ")" + (den == 1 ? std::string() : "/" + den.str());
  }
  return out;
}

BigRational phi_tree(unsigned delta) {
  if (delta < 3) throw ValidationError("phi_tree needs degree >= 3");
  return BigRational(BigInt(delta - 2), BigInt(delta));
}

BigRational theorem_constant_c(unsigned delta) {
  if (delta < 3) throw ValidationError("c is undefined for degree < 3");
  return BigRational(BigInt(delta) * (delta - 1), BigInt(delta - 2) * (delta - 2));
}

SandwichCheck check_lambda_sandwich(double phi, double lambda) {
  if (!(phi >= 0 && phi <= 1) || !(lambda >= 0 && lambda <= 1))
    throw ValidationError("phi and lambda must lie in [0, 1]");
  SandwichCheck c;
  c.phi = phi;
  c.lambda = lambda;
  c.half_phi_sq = phi * phi / 2;
  c.cheeger_lower = 1 - std::sqrt(1 - phi * phi);
  auto le = [](double x, double y, double& slack) {
    slack = y - x;
    return slack >= -kTolerance * std::max({1.0, std::abs(x), std::abs(y)});
  };
  c.first = le(c.half_phi_sq, c.cheeger_lower, c.first_slack);
  c.second = le(c.cheeger_lower, lambda, c.second_slack);
  c.third = le(lambda, phi, c.third_slack);
  return c;
}

GirthLambdaBound girth_lambda_bound(unsigned delta, std::optional<unsigned> girth) {
  if (!girth) throw ValidationError("infinite girth: the bound degenerates to lambda_tree");
  if (*girth < 3) throw ValidationError("girth must be at least 3");
  GirthLambdaBound g;
  g.delta = delta;
  g.girth = *girth;
  g.tree_lambda = lambda_tree(delta);
  g.correction = BigRational(BigInt(delta - 2), BigInt(delta) * pow_int(delta - 1, *girth + 2));
  g.value = g.tree_lambda.value - g.correction.convert_to<double>();
  return g;
}

std::string to_string(LambdaSource s) {
  switch (s) {
    case LambdaSource::exact:
      return "exact";
    case LambdaSource::supplied:
      return "supplied";
    default:
      return "estimated";
  }
}

namespace {

void check_params(const BoundParams& p) {
  if (p.delta < 3) throw ValidationError("degree must be at least 3");
  if (!(p.lambda >= 0 && p.lambda <= 1)) throw ValidationError("lambda must lie in [0, 1]");
  if (p.girth && *p.girth < 3) throw ValidationError("girth must be at least 3");
}

std::string status_of(LambdaSource s) {
  switch (s) {
    case LambdaSource::exact:
      return "rigorous";
    case LambdaSource::supplied:
      return "conditional on lambda";
    default:
      return "conjectural";
  }
}

}  // namespace

MuBound mu_lower_nonamenable(const BoundParams& p) {
  check_params(p);
  MuBound m;
  m.params = p;
  const double D = p.delta;
  m.c = D * (D - 1) / ((D - 2) * (D - 2));
  m.exponent = (1 + m.c * p.lambda) / 2;
  m.value = std::sqrt(D - 1) * std::pow(D - 1, m.c * p.lambda / 2);
  m.status = status_of(p.lambda_source);
  return m;
}

MuBound mu_lower_girth(const BoundParams& p) {
  check_params(p);
  if (p.lambda <= 0) throw ValidationError("lambda = 0 (amenable): log(1 + lambda^-2) diverges");
  if (!(p.C > 0)) throw ValidationError("the constant C must be positive");
  MuBound m;
  m.params = p;
  const double D = p.delta;
  double bracket = 1 / (D - 1);
  if (p.girth) bracket += p.C * std::log1p(1 / (p.lambda * p.lambda)) / (*p.girth * D);
  m.value = 1 / bracket;
  m.status = status_of(p.lambda_source);
  return m;
}

MuBasicBounds mu_basic_bounds(unsigned delta) {
  if (delta < 3) throw ValidationError("degree must be at least 3");
  return {std::sqrt(static_cast<double>(delta - 1)), static_cast<double>(delta - 1)};
}

}  // namespace cayleysaw
