#include <doctest.h>

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "hippo/approx.hpp"

using doctest::Approx;
using namespace hippo;

namespace {

const double kPi = std::numbers::pi;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = a + (b - a) * i / (n - 1);
  return x;
}

}  // namespace

TEST_CASE("reconstruct examples") {
  const std::vector<double> xs = linspace(0.0, 3.0, 31);
  const Reconstruction zero = reconstruct<double>(LegT{2.0}, Eigen::VectorXd::Zero(6), 3.0, xs);
  CHECK(zero.values.isZero(0.0));

  const Reconstruction one = reconstruct<double>(LegS{}, Eigen::VectorXd::Unit(5, 0), 3.0, xs);
  for (int i = 0; i < 31; ++i) CHECK(one.values(i) == Approx(1.0).epsilon(1e-14));
  CHECK(one.outside_count() == 0);

  const Reconstruction flagged = reconstruct<double>(LegS{}, Eigen::VectorXd::Unit(5, 0), 3.0, {-0.5, 1.0, 3.5});
  CHECK(flagged.outside == std::vector<bool>{true, false, true});
  CHECK(flagged.values(0) == 0.0);
  CHECK(flagged.values(2) == 0.0);
}

TEST_CASE("legs reconstructs a line from two coefficients") {
  const Eigen::VectorXcd c = project_quadrature(LegS{}, 2, 1.0, [](double x) { return std::complex<double>(x); });
  CHECK(c(0).real() == Approx(0.5).epsilon(1e-12));
  CHECK(c(1).real() == Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-12));
  const std::vector<double> xs = linspace(0.0, 1.0, 101);
  const Reconstruction r = reconstruct<double>(LegS{}, c.real(), 1.0, xs);
  for (int i = 0; i < 101; ++i) CHECK(std::abs(r.values(i) - xs[i]) <= 1e-6);
}

TEST_CASE("reconstruct domain errors") {
  CHECK_THROWS_AS(reconstruct<double>(LegS{}, Eigen::VectorXd::Ones(3), 0.0, {0.0}), std::domain_error);
  CHECK_THROWS_AS(reconstruct<double>(LagT{-0.5, 1.0}, Eigen::VectorXd::Ones(3), 2.0, {2.0}), std::domain_error);
  CHECK_NOTHROW(reconstruct<double>(LagT{-0.5, 1.0}, Eigen::VectorXd::Ones(3), 2.0, {1.9}));
  CHECK_NOTHROW(reconstruct<double>(LagT{0.5, 1.0}, Eigen::VectorXd::Ones(3), 2.0, {2.0}));
}

TEST_CASE("fourier reconstruction of a real signal") {
  const double theta = 2.0, t = 5.0;
  const auto f = [&](double x) { return std::complex<double>(std::cos(2 * kPi * x / theta) + 0.3); };
  const Eigen::VectorXcd c = project_quadrature(FourT{theta}, 4, t, f);
  const std::vector<double> xs = linspace(t - theta, t, 41);
  const Reconstruction r = reconstruct<std::complex<double>>(FourT{theta}, c, t, xs);
  for (int i = 0; i < 41; ++i) CHECK(std::abs(r.values(i) - f(xs[i]).real()) <= 1e-9);
}

TEST_CASE("mse") {
  CHECK(mse(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 2.0}) == 0.0);
  CHECK(mse(std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 1.0}) == 1.0);
  CHECK(mse(std::vector<double>{0.0, 3.0}, std::vector<double>{0.0, 0.0}) == 4.5);
  CHECK_THROWS_AS(mse(std::vector<double>{0.0}, std::vector<double>{0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(mse(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("white noise") {
  const Signal a = gen_whitenoise(4096, 1e-2, 1.0, 42);
  const Signal b = gen_whitenoise(4096, 1e-2, 1.0, 42);
  const Signal c = gen_whitenoise(4096, 1e-2, 1.0, 43);
  CHECK(a.values() == b.values());
  CHECK(a.values() != c.values());
  CHECK(a.dt() == 1e-2);

  double mean = 0.0, var = 0.0;
  for (double v : a.values()) mean += v;
  mean /= 4096;
  for (double v : a.values()) var += (v - mean) * (v - mean);
  var /= 4096;
  CHECK(var == Approx(1.0).epsilon(0.1));

  const Signal half = gen_whitenoise(4096, 1e-2, 1.0, 42, 0.5);
  CHECK(half.values()[7] == Approx(0.5 * a.values()[7]).epsilon(1e-12));

  CHECK_THROWS_AS(gen_whitenoise(10, 0.5, 1.0, 0), std::invalid_argument);
}

TEST_CASE("white noise is band limited") {
  // Hann-windowed periodogram; bins are 1 / (n dt) apart.
  const std::size_t n = 1 << 16;
  const double dt = 1e-2, band = 1.0;
  const Signal s = gen_whitenoise(n, dt, band, 7);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = s.values()[i] * std::pow(std::sin(kPi * i / n), 2);
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec;
  fft.fwd(spec, x);
  double total = 0.0, above = 0.0;
  for (std::size_t k = 1; k < n / 2; ++k) {
    const double p = std::norm(spec[k]);
    total += p;
    if (k / (n * dt) > band) above += p;
  }
  CAPTURE(above / total);
  CHECK(above / total <= 1e-2);
}

TEST_CASE("sine mixture") {
  CHECK(sine_mix(0.0) == 0.0);
  const double x = 7 * kPi / 2;
  CHECK(sine_mix(x) == Approx(std::sin(x) / 4 + std::sin(x / 3) / 2 + std::sin(x / 7)).epsilon(1e-15));
  const Signal s = gen_sine_mix();
  CHECK(s.size() == 1000);
  CHECK(s.dt() == Approx(100.0 / 999.0));
  CHECK(s.values().front() == 0.0);
  CHECK(s.values().back() == Approx(sine_mix(100.0)).epsilon(1e-12));
  CHECK_THROWS_AS(gen_sine_mix(1, 1.0), std::invalid_argument);
}

TEST_CASE("basis functions survive project and reconstruct") {
  // Relative error in L2(nu^(t)), the norm the projection is optimal in.
  constexpr int N = 8;
  const double t = 6.0;
  std::vector<int> freqs = {0, 1, 2, 3, 5, 8, 13, 21};
  const std::vector<Family> families = {LegT{2.0, LegtScaling::orthonormal},
                                        LegT{2.0, LegtScaling::lmu},
                                        LagT{0.0, 1.0},
                                        LagT{0.5, 2.0},
                                        LagT{-0.5, 0.7},
                                        LegS{},
                                        FourT{2.0},
                                        Fru{2.0, freqs},
                                        ChebT{2.0}};
  for (const Family& fam : families) {
    CAPTURE(describe(fam));
    const QuadratureRule rule = measure_rule(fam, t, N);
    std::vector<double> xs, ws;
    for (std::size_t i = 0; i < rule.size(); ++i)
      if (rule.weights[i] > 0.0 && support(fam, t).contains(rule.nodes[i])) {
        xs.push_back(rule.nodes[i]);
        ws.push_back(rule.weights[i]);
      }
    for (int m = 0; m < N; ++m) {
      const auto g = [&](double x) { return basis_eval(fam, t, m, x); };
      const Eigen::VectorXcd c = project_quadrature(fam, N, t, g);
      const Eigen::VectorXcd r = reconstruct_expansion(fam, c, t, xs);
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        num += ws[i] * std::norm(r(i) - g(xs[i]));
        den += ws[i] * std::norm(g(xs[i]));
      }
      CAPTURE(m);
      CHECK(std::sqrt(num / den) <= 1e-6);
    }
  }
}

TEST_CASE("stream grids") {
  const Signal u = Signal::uniform(0.5, {1.0, 2.0, 3.0});
  CHECK(stream_grid(SchemeSpec::gbt(0.5, 0.5), u) == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(stream_grid(SchemeSpec::gbt_indexed(0.5), u) == std::vector<double>{0.0, 1.0, 2.0});
  const Signal ts = Signal::timestamped({1.0, 1.5, 2.5}, {1.0, 2.0, 3.0});
  CHECK(stream_grid(SchemeSpec::gbt_timestamped(0.5), ts) == std::vector<double>{0.0, 0.5, 1.0});
}

TEST_CASE("legt over the full range approximates the sine mixture") {
  const Signal s = gen_sine_mix();
  const Score sc = compress_and_score(LegT{100.0, LegtScaling::lmu}, SchemeSpec::gbt(0.5, s.dt()), s, 64);
  CAPTURE(sc.mse);
  CHECK(sc.mse <= 1e-2);
  // x = 0 and, up to rounding, x = dt sit on the edge of [t - theta, t]
  CHECK(sc.recon.outside_count() <= 2);
  CHECK(sc.grid.size() == 1000);
}

TEST_CASE("constant signals are reproduced") {
  // Forward Euler keeps the constant projection e_0 exactly.
  for (int N : {1, 16, 64}) {
    const Signal ones = Signal::uniform(1.0, std::vector<double>(10000, 1.0));
    const Score sc = compress_and_score(LegS{}, SchemeSpec::gbt_indexed(0.0), ones, N);
    CHECK(sc.mse <= 1e-6);
  }
}

TEST_CASE("scores of the other families are finite") {
  const Signal s = gen_sine_mix(400, 40.0);
  const std::vector<Family> fams = {LagT{0.0, 1.0}, FourT{10.0}, ChebT{10.0}, LegT{10.0}};
  for (const Family& fam : fams) {
    CAPTURE(describe(fam));
    const Score sc = compress_and_score(fam, SchemeSpec::gbt(0.5, s.dt()), s, 32);
    CHECK(std::isfinite(sc.mse));
    CHECK(sc.t == Approx(400 * s.dt()));
  }
}
