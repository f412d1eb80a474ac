#include "hippo/approx.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "hippo/operators.hpp"

namespace hippo {

std::size_t Reconstruction::outside_count() const {
  std::size_t n = 0;
  for (bool b : outside) n += b;
  return n;
}

namespace {

void check_query(const Family& family, double t, double x) {
  if (std::holds_alternative<LegS>(family) && !(t > 0.0)) throw std::domain_error("legs reconstruction requires t > 0");
  if (const auto* p = std::get_if<LagT>(&family); p && p->alpha < 0.0 && x == t)
    throw std::domain_error("lagt with alpha < 0 diverges at x = t");
}

// 1 for the zero frequency, 2 for the others (their conjugate partners are implicit).
Eigen::VectorXd hermitian_weights(const Family& family, Eigen::Index N) {
  Eigen::VectorXd w = Eigen::VectorXd::Ones(N);
  if (std::holds_alternative<FourT>(family)) {
    for (Eigen::Index n = 1; n < N; ++n) w(n) = 2.0;
  } else if (const auto* p = std::get_if<Fru>(&family)) {
    for (Eigen::Index n = 0; n < N; ++n) w(n) = p->freqs.at(n) == 0 ? 1.0 : 2.0;
  }
  return w;
}

Eigen::VectorXd inverse_lambda_sq(const Family& family, Eigen::Index N) {
  Eigen::VectorXd s(N);
  for (Eigen::Index n = 0; n < N; ++n) {
    const double l = basis_scale(family, static_cast<int>(n));
    s(n) = 1.0 / (l * l);
  }
  return s;
}

}  // namespace

Eigen::VectorXcd reconstruct_expansion(const Family& family, const Eigen::VectorXcd& c, double t,
                                       const std::vector<double>& xs, std::vector<bool>* outside) {
  const Eigen::Index N = c.size();
  const Support supp = support(family, t);
  const Eigen::VectorXcd cs = c.cwiseProduct(inverse_lambda_sq(family, N).cast<std::complex<double>>());
  Eigen::VectorXcd out(static_cast<Eigen::Index>(xs.size()));
  Eigen::VectorXcd row(N);
  if (outside) outside->assign(xs.size(), false);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    check_query(family, t, xs[i]);
    if (!supp.contains(xs[i])) {
      out(i) = 0.0;
      if (outside) (*outside)[i] = true;
      continue;
    }
    basis_row(family, t, xs[i], row);
    out(i) = (row.array() * cs.array()).sum();
  }
  return out;
}

template <class Scalar>
Reconstruction reconstruct(const Family& family, const Vec<Scalar>& c, double t, const std::vector<double>& xs) {
  const Eigen::Index N = c.size();
  const Support supp = support(family, t);
  Reconstruction r{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(xs.size())), std::vector<bool>(xs.size(), false)};
  if (is_complex(family)) {
    const Eigen::VectorXcd cw =
        c.template cast<std::complex<double>>().cwiseProduct(hermitian_weights(family, N).cast<std::complex<double>>());
    Eigen::VectorXcd row(N);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      check_query(family, t, xs[i]);
      if (!supp.contains(xs[i])) {
        r.outside[i] = true;
        continue;
      }
      basis_row(family, t, xs[i], row);
      r.values(i) = (row.array() * cw.array()).real().sum();
    }
    return r;
  }
  if constexpr (!std::is_same_v<Scalar, double>) {
    if (c.imag().cwiseAbs().maxCoeff() > 0.0)
      throw std::invalid_argument("reconstruct: complex coefficients for a real family");
  }
  const Eigen::VectorXd cs = c.real().cwiseProduct(inverse_lambda_sq(family, N));
  Eigen::VectorXd row(N);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    check_query(family, t, xs[i]);
    if (!supp.contains(xs[i])) {
      r.outside[i] = true;
      continue;
    }
    basis_row(family, t, xs[i], row);
    r.values(i) = row.dot(cs);
  }
  return r;
}

template Reconstruction reconstruct<double>(const Family&, const Eigen::VectorXd&, double, const std::vector<double>&);
template Reconstruction reconstruct<std::complex<double>>(const Family&, const Eigen::VectorXcd&, double,
                                                          const std::vector<double>&);

double mse(const Eigen::Ref<const Eigen::VectorXd>& truth, const Eigen::Ref<const Eigen::VectorXd>& approx) {
  if (truth.size() == 0) throw std::invalid_argument("mse: empty input");
  if (truth.size() != approx.size()) throw std::invalid_argument("mse: length mismatch");
  return (truth - approx).squaredNorm() / static_cast<double>(truth.size());
}

double mse(const std::vector<double>& truth, const std::vector<double>& approx) {
  return mse(Eigen::Map<const Eigen::VectorXd>(truth.data(), static_cast<Eigen::Index>(truth.size())),
             Eigen::Map<const Eigen::VectorXd>(approx.data(), static_cast<Eigen::Index>(approx.size())));
}

Signal gen_whitenoise(std::size_t length, double dt, double band_hz, std::uint64_t seed, double rms) {
  if (!(band_hz > 0.0) || !(band_hz * dt < 0.5)) throw std::invalid_argument("gen_whitenoise: band must lie below Nyquist");
  if (!(rms > 0.0)) throw std::invalid_argument("gen_whitenoise: rms must be positive");
  constexpr int kModes = 256;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> omega(kModes), phase(kModes);
  for (int j = 0; j < kModes; ++j) {
    omega[j] = 2.0 * std::numbers::pi * band_hz * (1.0 - unit(rng));
    phase[j] = 2.0 * std::numbers::pi * unit(rng);
  }
  std::vector<double> v(length, 0.0);
  for (std::size_t i = 0; i < length; ++i) {
    const double x = static_cast<double>(i) * dt;
    double s = 0.0;
    for (int j = 0; j < kModes; ++j) s += std::sin(omega[j] * x + phase[j]);
    v[i] = s;
  }
  if (length > 1) {
    double mean = 0.0;
    for (double y : v) mean += y;
    mean /= static_cast<double>(length);
    double var = 0.0;
    for (double y : v) var += (y - mean) * (y - mean);
    var /= static_cast<double>(length);
    if (var > 0.0) {
      const double scale = rms / std::sqrt(var);
      for (double& y : v) y *= scale;
    }
  }
  return Signal::uniform(dt, std::move(v));
}

double sine_mix(double x) { return 0.25 * std::sin(x) + 0.5 * std::sin(x / 3.0) + std::sin(x / 7.0); }

Signal gen_sine_mix(std::size_t length, double x_max) {
  if (length < 2) throw std::invalid_argument("gen_sine_mix: need at least two samples");
  if (!(x_max > 0.0)) throw std::invalid_argument("gen_sine_mix: x_max must be positive");
  const double dt = x_max / static_cast<double>(length - 1);
  std::vector<double> v(length);
  for (std::size_t i = 0; i < length; ++i) v[i] = sine_mix(static_cast<double>(i) * dt);
  return Signal::uniform(dt, std::move(v));
}

Eigen::VectorXcd project_quadrature(const Family& family, int N, double t,
                                    const std::function<std::complex<double>(double)>& f) {
  if (N < 1) throw std::invalid_argument("project_quadrature: N must be positive");
  const QuadratureRule rule = measure_rule(family, t, N);
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(N);
  Eigen::VectorXcd row(N);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    if (rule.weights[i] == 0.0) continue;
    basis_row(family, t, rule.nodes[i], row);
    c += (rule.weights[i] * f(rule.nodes[i])) * row.conjugate();
  }
  return c;
}

std::vector<double> stream_grid(const SchemeSpec& scheme, const Signal& signal) {
  const std::vector<double> dts = step_sizes(scheme, signal);
  std::vector<double> x(dts.size());
  if (scheme.policy == StepPolicy::fixed) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i) * scheme.dt;
    return x;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < dts.size(); ++i) {
    x[i] = acc;
    acc += dts[i];
  }
  return x;
}

namespace {

template <class Scalar>
Score run_scored(const Generator<Scalar>& gen, const SchemeSpec& scheme, const Signal& signal) {
  Score s;
  const auto start = std::chrono::steady_clock::now();
  const auto states = run_stream(gen, scheme, signal, Record::final_only);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const CoefState<Scalar>& last = states.back();
  s.final_c = last.c.template cast<std::complex<double>>();
  s.t = last.t;
  s.wall_seconds = secs;
  s.steps_per_second = secs > 0.0 ? static_cast<double>(signal.size()) / secs : 0.0;
  s.grid = stream_grid(scheme, signal);
  s.truth = signal.values();
  s.recon = reconstruct(gen.family, last.c, last.t, s.grid);
  double acc = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    if (s.recon.outside[i]) continue;
    const double d = s.truth[i] - s.recon.values(static_cast<Eigen::Index>(i));
    acc += d * d;
    ++used;
  }
  if (used == 0) throw std::invalid_argument("compress_and_score: no sample lies inside the final support");
  s.mse = acc / static_cast<double>(used);
  return s;
}

}  // namespace

Score compress_and_score(const Family& family, const SchemeSpec& scheme, const Signal& signal, int N) {
  return std::visit([&](const auto& gen) { return run_scored(gen, scheme, signal); }, build(family, N));
}

}  // namespace hippo
