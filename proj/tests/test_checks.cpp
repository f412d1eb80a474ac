#include <doctest.h>

#include <cmath>

#include "hippo/approx.hpp"
#include "hippo/checks.hpp"
#include "hippo/operators.hpp"

using doctest::Approx;
using namespace hippo;

TEST_CASE("line fit") {
  const LineFit f = fit_line({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 5.0, 7.0});
  CHECK(f.slope == Approx(2.0));
  CHECK(f.intercept == Approx(1.0));
  CHECK_THROWS_AS(fit_line({1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_line({1.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("equivariance") {
  const Signal s = gen_sine_mix(4096, 100.0);
  CHECK(equivariance_deviation(s, 1, 16) == 0.0);

  // Both streams of a constant settle on e_0: exactly under forward Euler,
  // with an O(1/k) bias under bilinear steps.
  const auto ones = [](std::size_t n) { return Signal::uniform(1.0, std::vector<double>(n, 1.0)); };
  CHECK(equivariance_deviation(ones(4096), 2, 16, 0.0) <= 1e-12);
  CHECK(equivariance_deviation(ones(8192), 2, 16) < equivariance_deviation(ones(4096), 2, 16));
  CHECK(equivariance_deviation(ones(4096), 2, 16) <= 1e-2);

  const CheckReport r = check_equivariance(s, 2, 16);
  CHECK(r.pass);
  CHECK_THROWS_AS(equivariance_deviation(gen_sine_mix(101, 1.0), 2, 8), std::invalid_argument);
  CHECK_THROWS_AS(equivariance_deviation(Signal::timestamped({0.0, 1.0}, {1.0, 1.0}), 2, 8), std::invalid_argument);

  const CheckReport refined = check_equivariance_refinement(sine_mix, 100.0, 4096, 2, 16);
  CAPTURE(refined.measurements[3].second);
  CAPTURE(refined.measurements[4].second);
  CHECK(refined.pass);
}

TEST_CASE("gradient norm of a single factor") {
  const int N = 6;
  const long k0 = 5;
  const Eigen::MatrixXd A = legs_matrix(N);
  const Eigen::VectorXd J = (Eigen::MatrixXd::Identity(N, N) - A / 6.0) * legs_input(N) / 5.0;
  const std::vector<double> n = gradient_norms(N, k0, {6});
  CHECK(n[0] == Approx(J.norm()).epsilon(1e-14));
}

TEST_CASE("gradient norm telescopes to 1/l at N=1") {
  const std::vector<long> ells = {100, 300, 1000, 3000, 10000};
  const std::vector<double> n = gradient_norms(1, 50, ells);
  for (std::size_t i = 0; i < ells.size(); ++i)
    CHECK(std::abs(n[i] - 1.0 / static_cast<double>(ells[i])) <= 1e-12);
  const CheckReport r = check_gradient_norm(1, 50, ells);
  CHECK(r.fitted->slope == Approx(-1.0).epsilon(1e-9));
  CHECK(r.pass);
  CHECK_THROWS_AS(check_gradient_norm(1, 50, {100, 200, 300}), std::invalid_argument);
  CHECK_THROWS_AS(gradient_norms(4, 50, {40}), std::invalid_argument);
}

TEST_CASE("gradient norm matches an explicit product chain") {
  const int N = 4;
  const Eigen::MatrixXd A = legs_matrix(N);
  Eigen::VectorXd v = legs_input(N) / 3.0;
  for (int j = 4; j <= 40; ++j) v = (Eigen::MatrixXd::Identity(N, N) - A / j) * v;
  CHECK(gradient_norms(N, 3, {40})[0] == Approx(v.norm()).epsilon(1e-12));
}

TEST_CASE("discretization comparison") {
  const CheckReport r = compare_discretizations(gen_sine_mix(1000, 100.0), 64);
  CHECK(r.pass);
  CHECK_FALSE(r.degenerate);
  CHECK(r.measurements.size() == 3);

  const CheckReport c = compare_discretizations(Signal::uniform(1.0, std::vector<double>(500, 2.0)), 16);
  CHECK(c.degenerate);
  CHECK(c.pass);
}

TEST_CASE("reports are reproducible") {
  const Signal s = gen_whitenoise(20000, 1e-4, 1.0, 3);
  const CheckReport a = compare_discretizations(s, 32);
  const CheckReport b = compare_discretizations(gen_whitenoise(20000, 1e-4, 1.0, 3), 32);
  REQUIRE(a.measurements.size() == b.measurements.size());
  for (std::size_t i = 0; i < a.measurements.size(); ++i) CHECK(a.measurements[i] == b.measurements[i]);
}

TEST_CASE("projection error") {
  // polynomials of degree < N are reproduced
  CHECK(legs_projection_error([](double x) { return 1.0 + x - 0.1 * x * x; }, 3.0, 3) <= 1e-12);
  CHECK(legs_projection_error([](double x) { return x * x; }, 1.0, 2) ==
        Approx(1.0 / (6.0 * std::sqrt(5.0))).epsilon(1e-9));
}

TEST_CASE("window sensitivity") {
  const CheckReport r = check_window_sensitivity(1000, 100.0, 0.1, 64, 5.0);
  CHECK(r.pass);
}
