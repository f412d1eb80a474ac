#include "hippo/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hippo/polys.hpp"

namespace hippo {

QuadratureRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  QuadratureRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = legendre(order, x);
      dp = legendre_derivative(order, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    dp = legendre_derivative(order, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

namespace {

void append_panel(QuadratureRule& out, const QuadratureRule& ref, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < ref.size(); ++i) {
    out.nodes.push_back(mid + half * ref.nodes[i]);
    out.weights.push_back(half * ref.weights[i]);
  }
}

}  // namespace

QuadratureRule composite_gauss_legendre(double a, double b, int panels, int order) {
  if (panels < 1) throw std::invalid_argument("composite_gauss_legendre: panels must be positive");
  if (!(b > a)) throw std::invalid_argument("composite_gauss_legendre: empty interval");
  const QuadratureRule ref = gauss_legendre(order);
  QuadratureRule out;
  out.nodes.reserve(static_cast<std::size_t>(panels) * order);
  out.weights.reserve(static_cast<std::size_t>(panels) * order);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) append_panel(out, ref, a + p * h, p + 1 == panels ? b : a + (p + 1) * h);
  return out;
}

QuadratureRule graded_gauss_legendre(double a, double b, int levels, int panels, int order) {
  if (!(b > a)) throw std::invalid_argument("graded_gauss_legendre: empty interval");
  const QuadratureRule ref = gauss_legendre(order);
  QuadratureRule out;
  // First uniform panel [a, a + h] is split geometrically; the rest stays uniform.
  const double h = (b - a) / panels;
  double lo = a + h * std::ldexp(1.0, -levels);
  append_panel(out, ref, a, lo);
  for (int l = levels - 1; l >= 0; --l) {
    const double hi = a + h * std::ldexp(1.0, -l);
    append_panel(out, ref, lo, hi);
    lo = hi;
  }
  for (int p = 1; p < panels; ++p) append_panel(out, ref, a + p * h, p + 1 == panels ? b : a + (p + 1) * h);
  return out;
}

}  // namespace hippo
