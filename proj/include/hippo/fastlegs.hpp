#pragma once

// O(N) kernels for the LegS operator A = D1 (L + D0) D2, L all-ones lower triangular.
// Every kernel writes into a caller-owned buffer and does not allocate.

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Core>

#include "hippo/errors.hpp"

namespace hippo {

template <class Scalar = double>
struct LegsFactors {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Vector d1, d2, d0;

  static LegsFactors make(Eigen::Index N) {
    if (N < 1) throw std::invalid_argument("LegsFactors: dimension must be at least 1");
    LegsFactors f;
    f.d1.resize(N);
    f.d0.resize(N);
    for (Eigen::Index n = 0; n < N; ++n) {
      f.d1(n) = std::sqrt(Scalar(2 * n + 1));
      f.d0(n) = Scalar(n + 1) / Scalar(2 * n + 1) - Scalar(1);
    }
    f.d2 = f.d1;
    return f;
  }

  Eigen::Index dim() const { return d1.size(); }

  /// Dense D1 (L + D0) D2, for tests and the benchmark baseline.
  Matrix dense() const {
    const Eigen::Index N = dim();
    Matrix L = Matrix::Zero(N, N);
    L.template triangularView<Eigen::Lower>().setOnes();
    L.diagonal() += d0;
    return d1.asDiagonal() * L * d2.asDiagonal();
  }
};

/// out = A v. out may alias v.
template <class Scalar>
void legs_matvec(const LegsFactors<Scalar>& F, const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& v,
                 Eigen::Ref<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> out) {
  const Eigen::Index N = F.dim();
  if (v.size() != N || out.size() != N) throw std::invalid_argument("legs_matvec: size mismatch");
  Scalar s(0);
  for (Eigen::Index n = 0; n < N; ++n) {
    const Scalar w = F.d2(n) * v(n);
    s += w;
    out(n) = F.d1(n) * (s + F.d0(n) * w);
  }
}

/// Solves (I - delta A) x = y into out via the prefix recurrence
/// S_n = a_n S_{n-1} + b_n on S_n = sum_{k<=n} d2_k x_k. out may alias y.
/// Throws SingularError(n) when the n-th pivot 1 - delta (n+1) vanishes.
template <class Scalar>
void legs_solve(const LegsFactors<Scalar>& F, Scalar delta, const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& y,
                Eigen::Ref<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> out) {
  const Eigen::Index N = F.dim();
  if (y.size() != N || out.size() != N) throw std::invalid_argument("legs_solve: size mismatch");
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  Scalar S(0);
  for (Eigen::Index n = 0; n < N; ++n) {
    const Scalar diag = F.d1(n) * F.d2(n) * (Scalar(1) + F.d0(n));
    const Scalar pivot = Scalar(1) - delta * diag;
    if (std::abs(pivot) <= 4 * eps * std::max(Scalar(1), std::abs(delta * diag))) throw SingularError(n);
    const Scalar x = (y(n) + delta * F.d1(n) * S) / pivot;
    S += F.d2(n) * x;
    out(n) = x;
  }
}

namespace detail {

/// Closed form x = cumsum(b / cumprod(a)) * cumprod(a) for the same prefix
/// recurrence. Underflows for large N; kept only to check the identity in tests.
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> legs_solve_cumprod(const LegsFactors<Scalar>& F, Scalar delta,
                                                           const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& y) {
  const Eigen::Index N = F.dim();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> a(N), b(N), P(N), S(N), x(N);
  for (Eigen::Index n = 0; n < N; ++n) {
    const Scalar pivot = Scalar(1) - delta * F.d1(n) * F.d2(n) * (Scalar(1) + F.d0(n));
    if (pivot == Scalar(0)) throw SingularError(n);
    a(n) = Scalar(1) + delta * F.d1(n) * F.d2(n) / pivot;
    b(n) = F.d2(n) * y(n) / pivot;
  }
  Scalar prod(1), acc(0);
  for (Eigen::Index n = 0; n < N; ++n) {
    prod *= a(n);
    P(n) = prod;
    acc += b(n) / prod;
    S(n) = acc * prod;
  }
  // S_n - S_{n-1} = d2_n x_n
  for (Eigen::Index n = 0; n < N; ++n) x(n) = (S(n) - (n ? S(n - 1) : Scalar(0))) / F.d2(n);
  return x;
}

}  // namespace detail

/// One GBT step of dc/dt = -(1/t) A c + (1/t) B f written with ratios:
/// out = (I + alpha r_next A)^{-1} [(I - (1-alpha) r_prev A) c + r_prev B f].
/// With r_prev = 1/k, r_next = 1/(k+1) this is the index-based step; c and out may alias.
template <class Scalar>
void legs_gbt_ratio(const LegsFactors<Scalar>& F, const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& B,
                    Scalar alpha, Scalar r_prev, Scalar r_next,
                    const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& c, Scalar f,
                    Eigen::Ref<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> out) {
  const Eigen::Index N = F.dim();
  if (B.size() != N || c.size() != N || out.size() != N) throw std::invalid_argument("legs_gbt: size mismatch");
  const Scalar w = (Scalar(1) - alpha) * r_prev;
  Scalar s(0);
  for (Eigen::Index n = 0; n < N; ++n) {
    const Scalar cn = c(n);
    const Scalar v = F.d2(n) * cn;
    s += v;
    out(n) = cn - w * F.d1(n) * (s + F.d0(n) * v) + r_prev * B(n) * f;
  }
  legs_solve<Scalar>(F, -alpha * r_next, out, out);
}

/// Index-based LegS GBT step from step k. k = 0 injects the first sample into a
/// zero state: out = (I + alpha A)^{-1} B f.
template <class Scalar>
void legs_gbt_fast(const LegsFactors<Scalar>& F, const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& B,
                   Scalar alpha, long k, const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& c, Scalar f,
                   Eigen::Ref<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> out) {
  if (k < 0) throw std::invalid_argument("legs_gbt_fast: negative step index");
  if (k == 0) {
    out.noalias() = B * f;
    legs_solve<Scalar>(F, -alpha, out, out);
    return;
  }
  legs_gbt_ratio<Scalar>(F, B, alpha, Scalar(1) / Scalar(k), Scalar(1) / Scalar(k + 1), c, f, out);
}

/// The same step through a dense A: O(N^2) matvec and triangular solve.
/// Benchmark baseline; `work` must have size N.
template <class Scalar>
void legs_gbt_dense(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A,
                    const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& B, Scalar alpha, long k,
                    const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& c, Scalar f,
                    Eigen::Ref<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> work,
                    Eigen::Ref<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> out) {
  const Scalar r_prev = k == 0 ? Scalar(1) : Scalar(1) / Scalar(k);
  const Scalar r_next = k == 0 ? Scalar(1) : Scalar(1) / Scalar(k + 1);
  const Scalar w = k == 0 ? Scalar(0) : (Scalar(1) - alpha) * r_prev;
  work.noalias() = A * c;
  work = (k == 0 ? Scalar(0) : Scalar(1)) * c - w * work + r_prev * f * B;
  // (I + alpha r_next A) is lower triangular.
  const Scalar g = alpha * r_next;
  const Eigen::Index N = A.rows();
  for (Eigen::Index n = 0; n < N; ++n) {
    Scalar acc = work(n);
    for (Eigen::Index j = 0; j < n; ++j) acc -= g * A(n, j) * out(j);
    out(n) = acc / (Scalar(1) + g * A(n, n));
  }
}

}  // namespace hippo
