#pragma once

// Classical orthogonal polynomials evaluated by three-term recurrence.

#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>
#include <stdexcept>
#include <variant>

#include <Eigen/Core>

namespace hippo {

/// Legendre polynomial P_n(x), orthogonal on [-1, 1] with unit weight.
template <std::floating_point T>
T legendre(int n, T x) {
  if (n < 0) throw std::invalid_argument("legendre: negative degree");
  if (n == 0) return T(1);
  T prev = T(1);
  T cur = x;
  for (int k = 1; k < n; ++k) {
    const T next = (T(2 * k + 1) * x * cur - T(k) * prev) / T(k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// P_n'(x) from P'_{k+1} = P'_{k-1} + (2k+1) P_k. Valid at the endpoints.
template <std::floating_point T>
T legendre_derivative(int n, T x) {
  if (n < 0) throw std::invalid_argument("legendre_derivative: negative degree");
  if (n == 0) return T(0);
  T p_prev = T(1), p_cur = x;   // P_{k-1}, P_k
  T d_prev = T(0), d_cur = T(1);  // P'_{k-1}, P'_k
  for (int k = 1; k < n; ++k) {
    const T d_next = d_prev + T(2 * k + 1) * p_cur;
    const T p_next = (T(2 * k + 1) * x * p_cur - T(k) * p_prev) / T(k + 1);
    p_prev = p_cur;
    p_cur = p_next;
    d_prev = d_cur;
    d_cur = d_next;
  }
  return d_cur;
}

/// Generalized Laguerre L_n^{(alpha)}(x). May overflow for very large x.
template <std::floating_point T>
T laguerre(int n, T alpha, T x) {
  if (n < 0) throw std::invalid_argument("laguerre: negative degree");
  if (!(alpha > T(-1))) throw std::invalid_argument("laguerre: alpha must exceed -1");
  if (n == 0) return T(1);
  T prev = T(1);
  T cur = T(1) + alpha - x;
  for (int k = 1; k < n; ++k) {
    const T next = ((T(2 * k + 1) + alpha - x) * cur - (T(k) + alpha) * prev) / T(k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Chebyshev polynomial of the first kind T_n(x).
template <std::floating_point T>
T chebyshev(int n, T x) {
  if (n < 0) throw std::invalid_argument("chebyshev: negative degree");
  if (n == 0) return T(1);
  T prev = T(1);
  T cur = x;
  for (int k = 1; k < n; ++k) {
    const T next = T(2) * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Whole-row variants: out(n) = poly_n(x) for n < out.size().

template <class Derived>
void legendre_row(typename Derived::Scalar x, Eigen::DenseBase<Derived>& out) {
  using T = typename Derived::Scalar;
  const Eigen::Index N = out.size();
  if (N == 0) return;
  out(0) = T(1);
  if (N == 1) return;
  out(1) = x;
  for (Eigen::Index k = 1; k + 1 < N; ++k)
    out(k + 1) = (T(2 * k + 1) * x * out(k) - T(k) * out(k - 1)) / T(k + 1);
}

template <class Derived>
void laguerre_row(typename Derived::Scalar alpha, typename Derived::Scalar x,
                  Eigen::DenseBase<Derived>& out) {
  using T = typename Derived::Scalar;
  const Eigen::Index N = out.size();
  if (N == 0) return;
  out(0) = T(1);
  if (N == 1) return;
  out(1) = T(1) + alpha - x;
  for (Eigen::Index k = 1; k + 1 < N; ++k)
    out(k + 1) = ((T(2 * k + 1) + alpha - x) * out(k) - (T(k) + alpha) * out(k - 1)) / T(k + 1);
}

template <class Derived>
void chebyshev_row(typename Derived::Scalar x, Eigen::DenseBase<Derived>& out) {
  using T = typename Derived::Scalar;
  const Eigen::Index N = out.size();
  if (N == 0) return;
  out(0) = T(1);
  if (N == 1) return;
  out(1) = x;
  for (Eigen::Index k = 1; k + 1 < N; ++k) out(k + 1) = T(2) * x * out(k) - out(k - 1);
}

/// binom(n + alpha, n) = prod_{j=1..n} (j + alpha) / j, i.e. L_n^{(alpha)}(0).
inline double laguerre_endpoint(int n, double alpha) {
  double r = 1.0;
  for (int j = 1; j <= n; ++j) r *= (j + alpha) / j;
  return r;
}

// ---------------------------------------------------------------------------

struct Legendre {};
struct GenLaguerre {
  double alpha = 0.0;
};
struct ChebyshevT {};
struct FourierMode {};

/// Identifies one of the underlying bases on its canonical domain.
using BasisId = std::variant<Legendre, GenLaguerre, ChebyshevT, FourierMode>;

/// Canonical (unshifted) basis value; FourierMode returns e^{2 pi i n x}.
inline std::complex<double> evaluate(const BasisId& id, int n, double x) {
  if (n < 0) throw std::invalid_argument("evaluate: negative index");
  struct Visitor {
    int n;
    double x;
    std::complex<double> operator()(Legendre) const { return legendre(n, x); }
    std::complex<double> operator()(GenLaguerre g) const { return laguerre(n, g.alpha, x); }
    std::complex<double> operator()(ChebyshevT) const { return chebyshev(n, x); }
    std::complex<double> operator()(FourierMode) const {
      return std::polar(1.0, 2.0 * std::numbers::pi * n * x);
    }
  };
  return std::visit(Visitor{n, x}, id);
}

}  // namespace hippo
