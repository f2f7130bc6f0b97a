#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cayleysaw/bigint.hpp"
#include "cayleysaw/cayley.hpp"

namespace cayleysaw {

struct ReturnProb {
  unsigned n = 0;           // half-time: the walk has 2n steps
  BigInt closed_walks = 0;  // closed walks of length 2n at the root
  BigRational p = 1;        // closed_walks / degree^(2n)
  // p^(1/(2n)), a lower bound on the spectral radius, and 1 - rho, an upper
  // bound on the spectral bottom. Unset at n = 0.
  std::optional<double> rho;
  std::optional<double> lambda;
};

struct ReturnProbSeries {
  std::size_t degree = 0;
  unsigned max_half_time = 0;
  std::string method;  // "ball" or "distance-chain"
  std::vector<ReturnProb> entries;  // n = 0..max_half_time
  bool rho_nondecreasing = true;
  // sqrt(p_{2N} / p_{2N-2}); also a lower bound on rho since p_{2n} is log-convex.
  std::optional<double> rho_ratio;
};

// Exact SRW return probabilities at the root of a regular ball. Requires
// radius >= N unless every vertex is complete (a finite graph).
ReturnProbSeries return_probabilities(const Ball& b, unsigned N, unsigned workers = 1);
// Same series on the Delta-regular tree, through the distance-from-root chain.
ReturnProbSeries tree_return_probabilities(unsigned delta, unsigned N);

struct Surd {
  // a - (b / c) * sqrt(d), with d squarefree (d = 1 means rational)
  BigRational a = 0;
  BigRational coefficient = 0;
  std::uint64_t radicand = 1;
  std::string exact;
  double value = 0.0;
};

// 1 - 2 sqrt(D - 1) / D
Surd lambda_tree(unsigned delta);
// (D - 2) / D, the edge-isoperimetric constant of the D-regular tree
BigRational phi_tree(unsigned delta);
// D (D - 1) / (D - 2)^2
BigRational theorem_constant_c(unsigned delta);

struct SandwichCheck {
  double phi = 0.0;
  double lambda = 0.0;
  double half_phi_sq = 0.0;
  double cheeger_lower = 0.0;  // 1 - sqrt(1 - phi^2)
  bool first = false;          // phi^2 / 2 <= 1 - sqrt(1 - phi^2)
  bool second = false;         // 1 - sqrt(1 - phi^2) <= lambda
  bool third = false;          // lambda <= phi
  double first_slack = 0.0;
  double second_slack = 0.0;
  double third_slack = 0.0;
  bool pass() const { return first && second && third; }
};

// Inequalities compared with a relative tolerance of 1e-12.
SandwichCheck check_lambda_sandwich(double phi, double lambda);

struct GirthLambdaBound {
  unsigned delta = 0;
  unsigned girth = 0;
  Surd tree_lambda;
  BigRational correction = 0;  // (D - 2) / (D (D - 1)^(g + 2))
  double value = 0.0;
};

GirthLambdaBound girth_lambda_bound(unsigned delta, std::optional<unsigned> girth);

enum class LambdaSource { exact, supplied, estimated };
std::string to_string(LambdaSource s);

struct BoundParams {
  unsigned delta = 0;
  double lambda = 0.0;
  LambdaSource lambda_source = LambdaSource::supplied;
  std::optional<unsigned> girth;  // unset means infinite
  double C = 1.0;
};

struct MuBound {
  BoundParams params;
  double c = 0.0;         // set for the non-amenable bound
  double exponent = 0.0;  // (1 + c lambda) / 2, ditto
  double value = 0.0;
  // "rigorous" with exact lambda; with an estimated lambda (an upper bound on
  // the true value) the number is only "conjectural".
  std::string status;
};

// (D - 1)^((1 + c lambda) / 2)
MuBound mu_lower_nonamenable(const BoundParams& p);
// [1/(D - 1) + C log(1 + lambda^-2) / (g D)]^-1; infinite girth gives D - 1.
MuBound mu_lower_girth(const BoundParams& p);

struct MuBasicBounds {
  double lower = 0.0;  // sqrt(D - 1)
  double upper = 0.0;  // D - 1
};

MuBasicBounds mu_basic_bounds(unsigned delta);

}  // namespace cayleysaw
