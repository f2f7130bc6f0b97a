#include <cmath>

#include "cayleysaw/errors.hpp"
#include "cayleysaw/spectral.hpp"
#include "doctest.h"

using namespace cayleysaw;

namespace {

BigInt binomial(unsigned n, unsigned k) {
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("return probabilities: small values") {
  const auto t = return_probabilities(Ball::build(oracle_for("tree:3"), 4), 4);
  CHECK(t.entries[0].p == 1);
  CHECK(t.entries[1].p == BigRational(1, 3));
  const auto z1 = return_probabilities(Ball::build(oracle_for("z1"), 5), 5);
  CHECK(z1.entries[1].p == BigRational(1, 2));
  for (unsigned n = 0; n <= 5; ++n)
    CHECK(z1.entries[n].closed_walks == binomial(2 * n, n));
  CHECK_THROWS_AS(return_probabilities(Ball::build(oracle_for("z2"), 3), 4), ValidationError);
  CHECK_THROWS_AS(return_probabilities(Ball::from_adjacency({{1}, {0, 2}, {1}}), 2),
                  ValidationError);
}

TEST_CASE("square lattice closed walks are squared central binomials") {
  const auto z = return_probabilities(Ball::build(oracle_for("z2"), 20), 20);
  for (unsigned n = 0; n <= 20; ++n) {
    const BigInt c = binomial(2 * n, n);
    CHECK(z.entries[n].closed_walks == c * c);
  }
  CHECK(z.rho_nondecreasing);
  for (unsigned n = 2; n <= 20; ++n) CHECK(*z.entries[n].lambda < *z.entries[n - 1].lambda);
}

TEST_CASE("ball DP agrees with the distance chain on trees") {
  for (unsigned D : {3u, 4u}) {
    const auto ball = return_probabilities(Ball::build(oracle_for("tree:" + std::to_string(D)), 7), 7);
    const auto chain = tree_return_probabilities(D, 7);
    for (unsigned n = 0; n <= 7; ++n) CHECK(ball.entries[n].p == chain.entries[n].p);
  }
}

TEST_CASE("worker count does not change the series") {
  const Ball b = Ball::build(oracle_for("bs12"), 9);
  const auto one = return_probabilities(b, 9, 1);
  const auto four = return_probabilities(b, 9, 4);
  for (unsigned n = 0; n <= 9; ++n) CHECK(one.entries[n].closed_walks == four.entries[n].closed_walks);
  CHECK(one.rho_nondecreasing);
}

TEST_CASE("rho is nondecreasing") {
  const auto t = tree_return_probabilities(3, 200);
  CHECK(t.rho_nondecreasing);
  for (unsigned n = 1; n <= 200; ++n) {
    CHECK(t.entries[n].p > 0);
    CHECK(t.entries[n].p <= 1);
  }
  const double rho = 2 * std::sqrt(2.0) / 3;
  CHECK(*t.entries[200].rho < rho);
  CHECK(*t.rho_ratio < rho);
  CHECK(std::abs(*t.rho_ratio - rho) < 0.01);
  CHECK(*t.entries[200].lambda == doctest::Approx(0.073).epsilon(0.01));
  const auto z = return_probabilities(Ball::build(oracle_for("z2"), 30), 30);
  CHECK(z.rho_nondecreasing);
  CHECK(return_probabilities(Ball::build(oracle_for("bs12"), 10), 10).rho_nondecreasing);
}

TEST_CASE("tree spectral bottom") {
  const Surd l3 = lambda_tree(3);
  CHECK(l3.exact == "1 - 2*sqrt(2)/3");
  CHECK(l3.value == doctest::Approx(0.057191).epsilon(1e-5));
  const Surd l4 = lambda_tree(4);
  CHECK(l4.exact == "1 - sqrt(3)/2");
  CHECK(l4.value == doctest::Approx(0.133975).epsilon(1e-5));
  CHECK(lambda_tree(5).exact == "1/5");
  CHECK(lambda_tree(10).exact == "2/5");
  CHECK(lambda_tree(10000).value > 0.97);
  CHECK_THROWS_AS(lambda_tree(2), ValidationError);
}

TEST_CASE("lambda sandwich") {
  const SandwichCheck t3 = check_lambda_sandwich(1.0 / 3, lambda_tree(3).value);
  CHECK(t3.pass());
  CHECK(t3.half_phi_sq == doctest::Approx(1.0 / 18));
  CHECK(check_lambda_sandwich(0, 0).pass());
  const SandwichCheck bad = check_lambda_sandwich(0.1, 0.2);
  CHECK_FALSE(bad.pass());
  CHECK(bad.first);
  CHECK(bad.second);
  CHECK_FALSE(bad.third);
  CHECK_THROWS_AS(check_lambda_sandwich(1.5, 0), ValidationError);
  for (unsigned D = 3; D <= 50; ++D)
    CHECK(check_lambda_sandwich(phi_tree(D).convert_to<double>(), lambda_tree(D).value).pass());
}

TEST_CASE("girth bound") {
  const auto g = girth_lambda_bound(3, 4u);
  CHECK(g.correction == BigRational(1, 192));
  CHECK(g.value == doctest::Approx(0.051983).epsilon(1e-4));
  CHECK(girth_lambda_bound(4, 3u).correction == BigRational(2, 4 * 243));
  CHECK(girth_lambda_bound(3, 60u).value == doctest::Approx(lambda_tree(3).value));
  CHECK_THROWS_AS(girth_lambda_bound(3, std::nullopt), ValidationError);
  CHECK_THROWS_AS(girth_lambda_bound(3, 2u), ValidationError);
}

TEST_CASE("connective constant lower bounds") {
  for (unsigned D = 3; D <= 50; ++D) {
    const MuBound b = mu_lower_nonamenable({D, 0.0});
    CHECK(b.value == std::sqrt(static_cast<double>(D - 1)));
    CHECK(b.value == mu_basic_bounds(D).lower);
    const BigRational c = theorem_constant_c(D);
    CHECK(c.convert_to<double>() * lambda_tree(D).value <= 1.0);
    const MuBound t = mu_lower_nonamenable({D, lambda_tree(D).value, LambdaSource::exact});
    CHECK(t.value <= D - 1 + 1e-9);
    CHECK(t.status == "rigorous");
  }
  const MuBound t3 = mu_lower_nonamenable({3, lambda_tree(3).value, LambdaSource::exact});
  CHECK(t3.c == 6);
  CHECK(t3.value == doctest::Approx(std::pow(2.0, (1 + 6 * lambda_tree(3).value) / 2)));
  CHECK(t3.value == doctest::Approx(1.593).epsilon(1e-3));
  CHECK(mu_lower_nonamenable({4, 0.1}).value == doctest::Approx(std::pow(3.0, 0.65)));
  CHECK(mu_lower_nonamenable({4, 0.1, LambdaSource::estimated}).status == "conjectural");
  CHECK_THROWS_AS(mu_lower_nonamenable({2, 0.0}), ValidationError);

  const MuBound g = mu_lower_girth({3, 0.057, LambdaSource::supplied, 100u, 1.0});
  CHECK(g.value < 2);
  CHECK(g.value > 1.9);
  double prev = 0;
  for (unsigned girth : {3u, 10u, 100u, 1000u, 100000u}) {
    const double v = mu_lower_girth({3, 0.057, LambdaSource::supplied, girth, 1.0}).value;
    CHECK(v > prev);
    CHECK(v <= 2);
    prev = v;
  }
  CHECK(2 - prev < 1e-3);
  CHECK(mu_lower_girth({3, 0.057, LambdaSource::supplied, std::nullopt, 1.0}).value == 2);
  CHECK(mu_lower_girth({3, 0.057, LambdaSource::supplied, 10u, 2.0}).value <
        mu_lower_girth({3, 0.057, LambdaSource::supplied, 10u, 1.0}).value);
  CHECK_THROWS_AS(mu_lower_girth({3, 0.0, LambdaSource::supplied, 10u, 1.0}), ValidationError);
  CHECK(mu_basic_bounds(5).lower == 2);
  CHECK(mu_basic_bounds(5).upper == 4);
}
