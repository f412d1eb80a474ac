#pragma once

// Measure/basis families. Each family fixes, for every time t, a probability
// measure nu^(t) and an orthogonal basis g_n^(t) with <g_n, g_m> = lambda_n^2 delta_nm.

#include <complex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "hippo/quadrature.hpp"

namespace hippo {

enum class LegtScaling {
  orthonormal,  ///< lambda_n = 1
  lmu,          ///< lambda_n = (2n+1)^{1/2} (-1)^n
};

/// Uniform sliding window [t - theta, t], Legendre basis.
struct LegT {
  double theta = 1.0;
  LegtScaling scaling = LegtScaling::orthonormal;
};

/// Flipped generalized Laguerre weight on (-inf, t], tilted by beta.
struct LagT {
  double alpha = 0.0;
  double beta = 1.0;
};

/// Uniform measure on [0, t], scaled Legendre basis.
struct LegS {};

/// Uniform sliding window, Fourier basis e^{2 pi i n (x - t) / theta}.
struct FourT {
  double theta = 1.0;
};

/// Fourier recurrent unit: decoupled modes e^{-2 pi i n x / theta} for n in freqs.
struct Fru {
  double theta = 1.0;
  std::vector<int> freqs;
};

/// Chebyshev window (t - theta, t) with the tilt that makes the edge term vanish.
struct ChebT {
  double theta = 1.0;
};

using Family = std::variant<LegT, LagT, LegS, FourT, Fru, ChebT>;

std::string_view family_name(const Family& family);

/// Throws std::invalid_argument when parameters violate the family invariants.
void validate(const Family& family);

bool is_complex(const Family& family);

/// Support of nu^(t); lo is -inf for LagT. ChebT's support is open because
/// its tilt is unbounded at both window edges.
struct Support {
  double lo;
  double hi;
  bool open = false;
  bool contains(double x) const { return open ? (x > lo && x < hi) : (x >= lo && x <= hi); }
};

Support support(const Family& family, double t);

/// The lambda_n scaling of the basis (1 except for LegT with LMU scaling).
double basis_scale(const Family& family, int n);

/// g_n(t, x). Untilted families return the polynomial (possibly extrapolated)
/// outside the support; tilted families (LagT, ChebT) return 0 there.
/// Throws std::domain_error for LegS with t <= 0.
std::complex<double> basis_eval(const Family& family, double t, int n, double x);

/// out(n) = g_n(t, x) for n < out.size().
void basis_row(const Family& family, double t, double x, Eigen::Ref<Eigen::VectorXcd> out);

/// Real families only; throws std::invalid_argument for FourT / Fru.
void basis_row(const Family& family, double t, double x, Eigen::Ref<Eigen::VectorXd> out);

/// Quadrature for integrals against nu^(t), accurate for integrands built from
/// the first N basis functions times a smooth function. Endpoint singularities
/// of the ChebT and LagT densities are removed by substitution or grading.
QuadratureRule measure_rule(const Family& family, double t, int N);

/// One-line summary such as "legt(theta=1, scaling=lmu)".
std::string describe(const Family& family);

}  // namespace hippo
