#include "hippo/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hippo/polys.hpp"

namespace hippo {

namespace {

void require_dim(int N, const char* who) {
  if (N < 1) throw std::invalid_argument(std::string(who) + ": dimension must be at least 1");
}

}  // namespace

RealGenerator build_legt(int N, double theta, LegtScaling scaling) {
  require_dim(N, "build_legt");
  const Family family = LegT{theta, scaling};
  validate(family);
  RealGenerator gen{family, TimeDependence::constant, Eigen::MatrixXd(N, N), Eigen::VectorXd(N)};
  for (int n = 0; n < N; ++n) {
    const double rn = std::sqrt(2.0 * n + 1.0);
    for (int k = 0; k < N; ++k) {
      const double sign = (n - k) % 2 ? -1.0 : 1.0;
      double a;
      if (scaling == LegtScaling::lmu)
        a = (2.0 * n + 1.0) * (n >= k ? sign : 1.0);
      else
        a = rn * std::sqrt(2.0 * k + 1.0) * (k <= n ? 1.0 : sign);
      gen.F(n, k) = -a / theta;
    }
    gen.G(n) = (scaling == LegtScaling::lmu ? (2.0 * n + 1.0) * (n % 2 ? -1.0 : 1.0) : rn) / theta;
  }
  return gen;
}

RealGenerator build_lagt(int N, double alpha, double beta) {
  require_dim(N, "build_lagt");
  const Family family = LagT{alpha, beta};
  validate(family);
  // Lambda_n = sqrt(Gamma(n+alpha+1) / Gamma(n+1)) = sqrt(Gamma(alpha+1) binom(n+alpha, n)).
  const double gamma_a1 = std::tgamma(alpha + 1.0);
  Eigen::VectorXd binom(N), lambda(N);
  for (int n = 0; n < N; ++n) {
    binom(n) = n == 0 ? 1.0 : binom(n - 1) * (n + alpha) / n;
    lambda(n) = std::sqrt(gamma_a1 * binom(n));
  }
  RealGenerator gen{family, TimeDependence::constant, Eigen::MatrixXd::Zero(N, N), Eigen::VectorXd(N)};
  const double diag = 0.5 * (1.0 + beta);
  for (int n = 0; n < N; ++n) {
    gen.F(n, n) = -diag;
    for (int k = 0; k < n; ++k) gen.F(n, k) = -lambda(k) / lambda(n);
  }
  const double scale = std::pow(beta, 0.5 * (1.0 - alpha)) / std::sqrt(std::tgamma(1.0 - alpha));
  gen.G = scale * binom.cwiseQuotient(lambda);
  return gen;
}

Eigen::MatrixXd legs_matrix(int N) {
  require_dim(N, "legs_matrix");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  for (int n = 0; n < N; ++n) {
    for (int k = 0; k < n; ++k) A(n, k) = std::sqrt(2.0 * n + 1.0) * std::sqrt(2.0 * k + 1.0);
    A(n, n) = n + 1.0;
  }
  return A;
}

Eigen::VectorXd legs_input(int N) {
  require_dim(N, "legs_input");
  Eigen::VectorXd B(N);
  for (int n = 0; n < N; ++n) B(n) = std::sqrt(2.0 * n + 1.0);
  return B;
}

RealGenerator build_legs(int N) {
  return RealGenerator{LegS{}, TimeDependence::inverse_time, -legs_matrix(N), legs_input(N)};
}

ComplexGenerator build_fourier_translated(int N, double theta) {
  require_dim(N, "build_fourier_translated");
  const Family family = FourT{theta};
  validate(family);
  ComplexGenerator gen{family, TimeDependence::constant,
                       Eigen::MatrixXcd::Constant(N, N, std::complex<double>(-1.0 / theta, 0.0)),
                       Eigen::VectorXcd::Constant(N, std::complex<double>(1.0 / theta, 0.0))};
  for (int n = 0; n < N; ++n) gen.F(n, n) = std::complex<double>(-1.0, 2.0 * std::numbers::pi * n) / theta;
  return gen;
}

ComplexGenerator build_fru(const std::vector<int>& freqs, double theta) {
  if (freqs.empty()) throw std::invalid_argument("build_fru: frequency list is empty");
  const Family family = Fru{theta, freqs};
  validate(family);
  const auto N = static_cast<Eigen::Index>(freqs.size());
  return ComplexGenerator{family, TimeDependence::rotating, Eigen::MatrixXcd::Zero(N, N),
                          Eigen::VectorXcd::Constant(N, std::complex<double>(1.0 / theta, 0.0))};
}

RealGenerator build_chebyshev(int N, double theta) {
  require_dim(N, "build_chebyshev");
  const Family family = ChebT{theta};
  validate(family);
  // (1/n) T_n' = 2 (T_{n-1} + T_{n-3} + ...) ending in T_1 (n even) or T_0 / 2 (n odd);
  // rescaled to the sqrt(2)-normalized basis this is the staircase below.
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
  for (int n = 1; n < N; ++n) {
    for (int k = n - 1; k >= 1; k -= 2) M(n, k) = n;
    if (n % 2 == 1) M(n, 0) = n / std::numbers::sqrt2;
  }
  Eigen::VectorXd B = Eigen::VectorXd::Constant(N, std::numbers::sqrt2);
  B(0) = 1.0;
  B *= 2.0 * std::numbers::sqrt2 / std::numbers::pi;
  return RealGenerator{family, TimeDependence::constant, -(4.0 / theta) * M, B / theta};
}

AnyGenerator build(const Family& family, int N) {
  if (const auto* p = std::get_if<LegT>(&family)) return build_legt(N, p->theta, p->scaling);
  if (const auto* p = std::get_if<LagT>(&family)) return build_lagt(N, p->alpha, p->beta);
  if (std::holds_alternative<LegS>(family)) return build_legs(N);
  if (const auto* p = std::get_if<FourT>(&family)) return build_fourier_translated(N, p->theta);
  if (const auto* p = std::get_if<Fru>(&family)) return build_fru(p->freqs, p->theta);
  const auto& p = std::get<ChebT>(family);
  return build_chebyshev(N, p.theta);
}

Eigen::VectorXcd fru_input(const ComplexGenerator& gen, double t) {
  const auto* p = std::get_if<Fru>(&gen.family);
  if (!p) throw std::invalid_argument("fru_input: generator is not an FRU");
  Eigen::VectorXcd g(gen.dim());
  for (Eigen::Index n = 0; n < gen.dim(); ++n)
    g(n) = gen.G(n) * std::polar(1.0, 2.0 * std::numbers::pi * p->freqs[n] * t / p->theta);
  return g;
}

}  // namespace hippo
