#pragma once

#include <vector>

namespace hippo {

/// Nodes and weights; integral of h approximated by sum w_i h(x_i).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  auto integrate(F&& h) const {
    using R = decltype(h(0.0));
    R acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * h(nodes[i]);
    return acc;
  }
};

/// Gauss-Legendre rule of the given order on [-1, 1].
QuadratureRule gauss_legendre(int order);

/// Composite Gauss-Legendre on [a, b] with equal panels.
QuadratureRule composite_gauss_legendre(double a, double b, int panels, int order);

/// Composite rule on [a, b] whose panels shrink geometrically toward a
/// (`levels` halvings), then `panels` equal panels over the remainder.
/// Handles integrable endpoint singularities of the form (x - a)^p.
QuadratureRule graded_gauss_legendre(double a, double b, int levels, int panels, int order);

}  // namespace hippo
