#pragma once

// Numerical checks of the operator's theoretical properties.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hippo/signal.hpp"

namespace hippo {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

struct CheckReport {
  std::string name;
  std::vector<std::pair<std::string, double>> measurements;
  std::optional<LineFit> fitted;
  bool pass = false;
  bool degenerate = false;  ///< the property is vacuous for this input
  std::string threshold;
};

/// Ordinary least squares y = slope x + intercept. Needs at least two points.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Relative L2 distance between the final LegS coefficients of f and of
/// h_k = f_{factor k} (index-based GBT steps, bilinear by default). Passes at <= 5%.
double equivariance_deviation(const Signal& signal, int factor, int N, double alpha = 0.5);
CheckReport check_equivariance(const Signal& signal, int factor, int N);

/// Samples f on [0, x_max] at `length` and `2 length` points and requires the
/// deviation to be <= 5% at `length` and strictly smaller at `2 length`.
CheckReport check_equivariance_refinement(const std::function<double(double)>& f, double x_max, std::size_t length,
                                          int factor, int N);

/// |J(l)| for J(l) = (I - A/l) ... (I - A/(k0+1)) B / k0, for increasing ells.
std::vector<double> gradient_norms(int N, long k0, const std::vector<long>& ells);
/// Log-log slope of |J(l)| against l; passes for slope in [-1.2, -0.8].
CheckReport check_gradient_norm(int N, long k0, const std::vector<long>& ells);

/// LegS index-based runs with forward Euler, backward Euler and bilinear steps;
/// passes when bilinear has the strictly smallest reconstruction MSE.
CheckReport compare_discretizations(const Signal& signal, int N);

/// L2 error (on [0, t]) of the LegS quadrature projection of f with N terms.
double legs_projection_error(const std::function<double(double)>& f, double t, int N);

/// err(N) / err(factor N) for each N of the LegS projection of f on [0, t];
/// passes when every ratio lies in [lo, hi].
CheckReport check_error_decay(const std::string& name, const std::function<double(double)>& f, double t,
                              const std::vector<int>& Ns, int factor, double lo, double hi);

/// LegT with theta = fraction * T streamed over a sine mixture on [0, T]:
/// compares the error outside the window (x <= 0.8 T) with the error inside.
CheckReport check_window_sensitivity(std::size_t length, double T, double fraction, int N, double min_ratio);

}  // namespace hippo
