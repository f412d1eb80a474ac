#pragma once

// Continuous-time coefficient dynamics dc/dt = F(t) c + G(t) f for each family.
// The stored F is already signed: dc/dt = F c + G f with F = -A for the classical A.

#include <complex>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "hippo/family.hpp"

namespace hippo {

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class TimeDependence {
  constant,      ///< dc/dt = F c + G f
  inverse_time,  ///< dc/dt = (1/t) (F c + G f)  (LegS)
  rotating,      ///< dc/dt = diag(e^{2 pi i n t / theta}) G f, F = 0  (FRU)
};

template <class Scalar>
struct Generator {
  Family family;
  TimeDependence kind = TimeDependence::constant;
  Mat<Scalar> F;
  Vec<Scalar> G;

  Eigen::Index dim() const { return G.size(); }
  bool is_constant() const { return kind == TimeDependence::constant; }
};

using RealGenerator = Generator<double>;
using ComplexGenerator = Generator<std::complex<double>>;
using AnyGenerator = std::variant<RealGenerator, ComplexGenerator>;

RealGenerator build_legt(int N, double theta, LegtScaling scaling);
RealGenerator build_lagt(int N, double alpha, double beta);
RealGenerator build_legs(int N);
ComplexGenerator build_fourier_translated(int N, double theta);
ComplexGenerator build_fru(const std::vector<int>& freqs, double theta);
RealGenerator build_chebyshev(int N, double theta);

/// Dispatches on the family. N is ignored for Fru (its dimension is freqs.size()).
AnyGenerator build(const Family& family, int N);

/// The unsigned LegS matrix A (lower triangular, diagonal n+1) and B.
Eigen::MatrixXd legs_matrix(int N);
Eigen::VectorXd legs_input(int N);

/// G(t) for a rotating (FRU) generator: G_n e^{2 pi i freq_n t / theta}.
Eigen::VectorXcd fru_input(const ComplexGenerator& gen, double t);

}  // namespace hippo
