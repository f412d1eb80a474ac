#include "hippo/family.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hippo/polys.hpp"

namespace hippo {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_theta(double theta, const char* who) {
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw std::invalid_argument(std::string(who) + ": theta must be positive and finite");
}

// zeta / Gamma(alpha + 1); the n-th basis prefactor is sqrt(this / binom(n + alpha, n)).
double lagt_zeta_ratio(const LagT& p) {
  return std::tgamma(1.0 - p.alpha) * std::pow(p.beta, p.alpha - 1.0) / std::tgamma(p.alpha + 1.0);
}

// (t-x)^alpha e^{-(1-beta)(t-x)/2}; zero once the exponential underflows.
double lagt_tilt(const LagT& p, double u) {
  const double log_tilt = -0.5 * (1.0 - p.beta) * u;
  if (u == 0.0) return p.alpha == 0.0 ? 1.0 : (p.alpha > 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  return std::exp(p.alpha * std::log(u) + log_tilt);
}

// Fills out(n) = g_n(t, x) for n < out.size(). Scalar is double or complex<double>.
template <class Vec>
void fill_row(const Family& family, double t, double x, Vec& out) {
  using Scalar = typename Vec::Scalar;
  const Eigen::Index N = out.size();
  std::visit(
      Overloaded{
          [&](const LegT& p) {
            Eigen::VectorXd P(N);
            legendre_row(2.0 * (x - t) / p.theta + 1.0, P);
            for (Eigen::Index n = 0; n < N; ++n)
              out(n) = Scalar(basis_scale(family, static_cast<int>(n)) * std::sqrt(2.0 * n + 1.0) * P(n));
          },
          [&](const LegS&) {
            if (!(t > 0.0)) throw std::domain_error("legs basis requires t > 0");
            Eigen::VectorXd P(N);
            legendre_row(2.0 * x / t - 1.0, P);
            for (Eigen::Index n = 0; n < N; ++n) out(n) = Scalar(std::sqrt(2.0 * n + 1.0) * P(n));
          },
          [&](const LagT& p) {
            const double u = t - x;
            if (u < 0.0) {
              out.setZero();
              return;
            }
            const double tilt = lagt_tilt(p, u);
            Eigen::VectorXd L(N);
            laguerre_row(p.alpha, u, L);
            const double ratio = lagt_zeta_ratio(p);
            double binom = 1.0;
            for (Eigen::Index n = 0; n < N; ++n) {
              if (n > 0) binom *= (n + p.alpha) / n;
              out(n) = Scalar(tilt == 0.0 ? 0.0 : std::sqrt(ratio / binom) * L(n) * tilt);
            }
          },
          [&](const ChebT& p) {
            const double s = (x - t) / p.theta + 1.0;
            if (s < 0.0 || s > 1.0) {
              out.setZero();
              return;
            }
            const double chi = 1.0 / std::sqrt(8.0 * s * (1.0 - s));
            Eigen::VectorXd T(N);
            chebyshev_row(2.0 * s - 1.0, T);
            for (Eigen::Index n = 0; n < N; ++n) out(n) = Scalar((n == 0 ? 1.0 : std::numbers::sqrt2) * T(n) * chi);
          },
          [&](const FourT& p) {
            if constexpr (std::is_same_v<Scalar, double>) {
              throw std::invalid_argument("fourt basis is complex");
            } else {
              for (Eigen::Index n = 0; n < N; ++n) out(n) = std::polar(1.0, kTwoPi * n * (x - t) / p.theta);
            }
          },
          [&](const Fru& p) {
            if constexpr (std::is_same_v<Scalar, double>) {
              throw std::invalid_argument("fru basis is complex");
            } else {
              if (N > static_cast<Eigen::Index>(p.freqs.size()))
                throw std::invalid_argument("fru basis index exceeds frequency list");
              for (Eigen::Index n = 0; n < N; ++n) out(n) = std::polar(1.0, -kTwoPi * p.freqs[n] * x / p.theta);
            }
          },
      },
      family);
}

}  // namespace

std::string_view family_name(const Family& family) {
  return std::visit(Overloaded{
                        [](const LegT&) { return std::string_view("legt"); },
                        [](const LagT&) { return std::string_view("lagt"); },
                        [](const LegS&) { return std::string_view("legs"); },
                        [](const FourT&) { return std::string_view("fourt"); },
                        [](const Fru&) { return std::string_view("fru"); },
                        [](const ChebT&) { return std::string_view("chebt"); },
                    },
                    family);
}

void validate(const Family& family) {
  std::visit(Overloaded{
                 [](const LegT& p) { require_theta(p.theta, "legt"); },
                 [](const LagT& p) {
                   if (!(p.alpha > -1.0)) throw std::invalid_argument("lagt: alpha must exceed -1");
                   if (!(p.alpha < 1.0)) throw std::invalid_argument("lagt: alpha must be below 1 (normalization diverges)");
                   if (!(p.beta > 0.0) || !std::isfinite(p.beta)) throw std::invalid_argument("lagt: beta must be positive");
                 },
                 [](const LegS&) {},
                 [](const FourT& p) { require_theta(p.theta, "fourt"); },
                 [](const Fru& p) {
                   require_theta(p.theta, "fru");
                   std::set<int> seen;
                   for (int f : p.freqs) {
                     if (f < 0) throw std::invalid_argument("fru: frequencies must be nonnegative");
                     if (!seen.insert(f).second) throw std::invalid_argument("fru: frequencies must be distinct");
                   }
                 },
                 [](const ChebT& p) { require_theta(p.theta, "chebt"); },
             },
             family);
}

bool is_complex(const Family& family) {
  return std::holds_alternative<FourT>(family) || std::holds_alternative<Fru>(family);
}

Support support(const Family& family, double t) {
  return std::visit(Overloaded{
                        [t](const LegT& p) { return Support{t - p.theta, t}; },
                        [t](const LagT&) { return Support{-std::numeric_limits<double>::infinity(), t}; },
                        [t](const LegS&) { return Support{0.0, t}; },
                        [t](const FourT& p) { return Support{t - p.theta, t}; },
                        [t](const Fru& p) { return Support{t - p.theta, t}; },
                        [t](const ChebT& p) { return Support{t - p.theta, t, true}; },
                    },
                    family);
}

double basis_scale(const Family& family, int n) {
  if (const auto* p = std::get_if<LegT>(&family); p && p->scaling == LegtScaling::lmu)
    return std::sqrt(2.0 * n + 1.0) * (n % 2 ? -1.0 : 1.0);
  return 1.0;
}

std::complex<double> basis_eval(const Family& family, double t, int n, double x) {
  if (n < 0) throw std::invalid_argument("basis_eval: negative index");
  Eigen::VectorXcd row(n + 1);
  fill_row(family, t, x, row);
  return row(n);
}

void basis_row(const Family& family, double t, double x, Eigen::Ref<Eigen::VectorXcd> out) {
  fill_row(family, t, x, out);
}

void basis_row(const Family& family, double t, double x, Eigen::Ref<Eigen::VectorXd> out) {
  fill_row(family, t, x, out);
}

QuadratureRule measure_rule(const Family& family, double t, int N) {
  constexpr int kOrder = 16;
  const int panels = std::max(256, 2 * N);
  auto uniform = [&](double lo, double hi) {
    QuadratureRule r = composite_gauss_legendre(lo, hi, panels, kOrder);
    for (double& w : r.weights) w /= (hi - lo);
    return r;
  };
  return std::visit(
      Overloaded{
          [&](const LegT& p) { return uniform(t - p.theta, t); },
          [&](const LegS&) {
            if (!(t > 0.0)) throw std::domain_error("legs measure requires t > 0");
            return uniform(0.0, t);
          },
          [&](const FourT& p) { return uniform(t - p.theta, t); },
          [&](const Fru& p) { return uniform(t - p.theta, t); },
          [&](const ChebT& p) {
            // s = (1 - cos phi) / 2 turns the density into (2/pi) sin^2(phi) dphi.
            QuadratureRule r = composite_gauss_legendre(0.0, std::numbers::pi, panels, kOrder);
            for (std::size_t i = 0; i < r.size(); ++i) {
              const double phi = r.nodes[i];
              const double sn = std::sin(phi);
              r.nodes[i] = t - p.theta + p.theta * 0.5 * (1.0 - std::cos(phi));
              r.weights[i] *= (2.0 / std::numbers::pi) * sn * sn;
            }
            return r;
          },
          [&](const LagT& p) {
            const double u_max = 8.0 * N + 150.0;
            const int lag_panels = static_cast<int>(std::ceil(u_max / 2.0));
            // Integrands behave like |u|^{-|alpha|} near u = 0 unless alpha = 0; deep grading resolves that.
            QuadratureRule r = graded_gauss_legendre(0.0, u_max, p.alpha != 0.0 ? 80 : 40, lag_panels, kOrder);
            const double norm = std::pow(p.beta, 1.0 - p.alpha) / std::tgamma(1.0 - p.alpha);
            for (std::size_t i = 0; i < r.size(); ++i) {
              const double u = r.nodes[i];
              r.weights[i] *= norm * std::exp(-p.alpha * std::log(u) - p.beta * u);
              r.nodes[i] = t - u;
              // Nodes that round onto x = t would evaluate the divergent (t - x)^alpha.
              if (p.alpha < 0.0 && !(t - r.nodes[i] > 0.0)) r.weights[i] = 0.0;
            }
            return r;
          },
      },
      family);
}

std::string describe(const Family& family) {
  std::ostringstream os;
  os << family_name(family) << '(';
  std::visit(Overloaded{
                 [&](const LegT& p) {
                   os << "theta=" << p.theta << ", scaling=" << (p.scaling == LegtScaling::lmu ? "lmu" : "orthonormal");
                 },
                 [&](const LagT& p) { os << "alpha=" << p.alpha << ", beta=" << p.beta; },
                 [&](const LegS&) {},
                 [&](const FourT& p) { os << "theta=" << p.theta; },
                 [&](const Fru& p) {
                   os << "theta=" << p.theta << ", freqs=[";
                   for (std::size_t i = 0; i < p.freqs.size(); ++i) os << (i ? "," : "") << p.freqs[i];
                   os << ']';
                 },
                 [&](const ChebT& p) { os << "theta=" << p.theta; },
             },
             family);
  os << ')';
  return os.str();
}

}  // namespace hippo
