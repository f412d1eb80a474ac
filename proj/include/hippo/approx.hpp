#pragma once

// Online function approximation: signals, reconstruction from coefficients, scoring.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "hippo/discretize.hpp"
#include "hippo/family.hpp"
#include "hippo/signal.hpp"

namespace hippo {

struct Reconstruction {
  Eigen::VectorXd values;
  std::vector<bool> outside;  ///< query points outside the support (value set to 0)

  std::size_t outside_count() const;
};

/// Complex expansion sum_n c_n g_n(t, x) / lambda_n^2 at each x.
Eigen::VectorXcd reconstruct_expansion(const Family& family, const Eigen::VectorXcd& c, double t,
                                       const std::vector<double>& xs, std::vector<bool>* outside = nullptr);

/// Real-valued reconstruction of a real signal. For Fourier families the
/// coefficients of the negative frequencies are the conjugates of the stored
/// ones, so nonzero modes contribute twice their real part.
/// Throws std::domain_error for LegS with t <= 0 and for LagT with alpha < 0
/// queried exactly at x = t.
template <class Scalar>
Reconstruction reconstruct(const Family& family, const Vec<Scalar>& c, double t, const std::vector<double>& xs);

/// Mean squared difference; throws std::invalid_argument on empty or mismatched input.
double mse(const std::vector<double>& truth, const std::vector<double>& approx);
double mse(const Eigen::Ref<const Eigen::VectorXd>& truth, const Eigen::Ref<const Eigen::VectorXd>& approx);

/// Band-limited noise: 256 random-phase sinusoids with frequencies uniform in
/// (0, band_hz], rescaled to sample standard deviation `rms`.
Signal gen_whitenoise(std::size_t length, double dt, double band_hz, std::uint64_t seed, double rms = 1.0);

double sine_mix(double x);  ///< sin(x)/4 + sin(x/3)/2 + sin(x/7)

/// `length` samples of sine_mix on [0, x_max], both endpoints included.
Signal gen_sine_mix(std::size_t length = 1000, double x_max = 100.0);

/// c_n = int f conj(g_n) dnu^(t), by the family's measure quadrature.
Eigen::VectorXcd project_quadrature(const Family& family, int N, double t,
                                    const std::function<std::complex<double>(double)>& f);

/// Positions where the stream places each sample: x_i is the start of the
/// step that consumes sample i, so the final state sits at x_{n-1} + dt_{n-1}.
std::vector<double> stream_grid(const SchemeSpec& scheme, const Signal& signal);

struct Score {
  Eigen::VectorXcd final_c;
  double t = 0.0;
  std::vector<double> grid;
  std::vector<double> truth;
  Reconstruction recon;
  double mse = 0.0;  ///< over in-support points
  double wall_seconds = 0.0;
  double steps_per_second = 0.0;
};

/// Streams the signal, reconstructs on its own grid, scores the result.
Score compress_and_score(const Family& family, const SchemeSpec& scheme, const Signal& signal, int N);

}  // namespace hippo
