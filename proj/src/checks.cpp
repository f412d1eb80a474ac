#include "hippo/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hippo/approx.hpp"
#include "hippo/discretize.hpp"
#include "hippo/fastlegs.hpp"
#include "hippo/operators.hpp"

namespace hippo {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Eigen::VectorXd legs_final(const std::vector<double>& values, int N, double alpha) {
  const Signal s = Signal::uniform(1.0, values);
  return run_stream(build_legs(N), SchemeSpec::gbt_indexed(alpha), s).back().c;
}

}  // namespace

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need at least two paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: abscissae are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

double equivariance_deviation(const Signal& signal, int factor, int N, double alpha) {
  if (!signal.is_uniform()) throw std::invalid_argument("equivariance check needs a uniform signal");
  if (factor < 1) throw std::invalid_argument("equivariance factor must be positive");
  if (signal.empty() || signal.size() % static_cast<std::size_t>(factor) != 0)
    throw std::invalid_argument("signal length is not divisible by the factor");
  const std::vector<double>& f = signal.values();
  std::vector<double> h(f.size() / factor);
  for (std::size_t k = 0; k < h.size(); ++k) h[k] = f[k * factor];
  const Eigen::VectorXd cf = legs_final(f, N, alpha);
  const Eigen::VectorXd ch = factor == 1 ? cf : legs_final(h, N, alpha);
  const double denom = cf.norm();
  const double diff = (cf - ch).norm();
  if (denom == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / denom;
}

CheckReport check_equivariance(const Signal& signal, int factor, int N) {
  CheckReport r;
  r.name = "equivariance";
  r.threshold = "relative deviation <= 0.05";
  const double dev = equivariance_deviation(signal, factor, N);
  r.measurements = {{"length", static_cast<double>(signal.size())},
                    {"factor", static_cast<double>(factor)},
                    {"N", static_cast<double>(N)},
                    {"deviation", dev}};
  r.pass = dev <= 0.05;
  return r;
}

CheckReport check_equivariance_refinement(const std::function<double(double)>& f, double x_max, std::size_t length,
                                          int factor, int N) {
  auto sample = [&](std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = f(x_max * static_cast<double>(i) / static_cast<double>(n));
    return Signal::uniform(x_max / static_cast<double>(n), std::move(v));
  };
  const double d1 = equivariance_deviation(sample(length), factor, N);
  const double d2 = equivariance_deviation(sample(2 * length), factor, N);
  CheckReport r;
  r.name = "equivariance_refinement";
  r.threshold = "deviation <= 0.05 at length and strictly smaller at 2 length";
  r.measurements = {{"length", static_cast<double>(length)},
                    {"factor", static_cast<double>(factor)},
                    {"N", static_cast<double>(N)},
                    {"deviation", d1},
                    {"deviation_doubled", d2}};
  r.pass = d1 <= 0.05 && d2 < d1;
  return r;
}

std::vector<double> gradient_norms(int N, long k0, const std::vector<long>& ells) {
  if (k0 < 1) throw std::invalid_argument("gradient_norms: k0 must be positive");
  const auto F = LegsFactors<double>::make(N);
  Eigen::VectorXd v = legs_input(N) / static_cast<double>(k0);
  Eigen::VectorXd Av(N);
  std::vector<double> out;
  long j = k0;
  for (long ell : ells) {
    if (ell <= j) throw std::invalid_argument("gradient_norms: ells must increase and exceed k0");
    for (++j; j <= ell; ++j) {
      legs_matvec<double>(F, v, Av);
      v -= Av / static_cast<double>(j);
    }
    --j;
    out.push_back(v.norm());
  }
  return out;
}

CheckReport check_gradient_norm(int N, long k0, const std::vector<long>& ells) {
  if (ells.size() < 4) throw std::invalid_argument("check_gradient_norm: at least four points are required");
  const std::vector<double> norms = gradient_norms(N, k0, ells);
  std::vector<double> lx, ly;
  CheckReport r;
  r.name = "gradient_norm";
  r.threshold = "log-log slope in [-1.2, -0.8]";
  r.measurements = {{"N", static_cast<double>(N)}, {"k0", static_cast<double>(k0)}};
  for (std::size_t i = 0; i < ells.size(); ++i) {
    lx.push_back(std::log(static_cast<double>(ells[i])));
    ly.push_back(std::log(norms[i]));
    r.measurements.emplace_back("norm@" + std::to_string(ells[i]), norms[i]);
  }
  r.fitted = fit_line(lx, ly);
  r.pass = r.fitted->slope >= -1.2 && r.fitted->slope <= -0.8;
  return r;
}

CheckReport compare_discretizations(const Signal& signal, int N) {
  if (!signal.is_uniform()) throw std::invalid_argument("compare_discretizations needs a uniform signal");
  CheckReport r;
  r.name = "discretization";
  r.threshold = "bilinear mse strictly below forward and backward Euler";
  const std::vector<double>& v = signal.values();
  const bool constant = std::all_of(v.begin(), v.end(), [&](double y) { return y == v.front(); });
  const std::pair<const char*, double> schemes[] = {{"forward_euler", 0.0}, {"backward_euler", 1.0}, {"bilinear", 0.5}};
  double errs[3];
  for (int i = 0; i < 3; ++i) {
    errs[i] = compress_and_score(LegS{}, SchemeSpec::gbt_indexed(schemes[i].second), signal, N).mse;
    r.measurements.emplace_back(std::string("mse_") + schemes[i].first, errs[i]);
  }
  if (constant) {
    r.degenerate = true;
    r.pass = true;
    r.threshold += " (skipped: constant signal)";
    return r;
  }
  r.pass = errs[2] < errs[0] && errs[2] < errs[1];
  return r;
}

double legs_projection_error(const std::function<double(double)>& f, double t, int N) {
  const Family fam = LegS{};
  const Eigen::VectorXcd c = project_quadrature(fam, N, t, f);
  const Eigen::VectorXd cr = c.real();
  const QuadratureRule rule = measure_rule(fam, t, N);
  Eigen::VectorXd row(N);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    basis_row(fam, t, rule.nodes[i], row);
    const double d = f(rule.nodes[i]) - row.dot(cr);
    acc += rule.weights[i] * d * d;
  }
  return std::sqrt(acc);
}

CheckReport check_error_decay(const std::string& name, const std::function<double(double)>& f, double t,
                              const std::vector<int>& Ns, int factor, double lo, double hi) {
  CheckReport r;
  r.name = name;
  r.threshold = "err(N)/err(" + std::to_string(factor) + "N) in [" + fmt(lo) + ", " + fmt(hi) + "]";
  r.pass = !Ns.empty();
  for (int N : Ns) {
    const double e1 = legs_projection_error(f, t, N);
    const double e2 = legs_projection_error(f, t, factor * N);
    const double ratio = e1 / e2;
    r.measurements.emplace_back("err@" + std::to_string(N), e1);
    r.measurements.emplace_back("err@" + std::to_string(factor * N), e2);
    r.measurements.emplace_back("ratio@" + std::to_string(N), ratio);
    r.pass = r.pass && ratio >= lo && ratio <= hi;
  }
  return r;
}

CheckReport check_window_sensitivity(std::size_t length, double T, double fraction, int N, double min_ratio) {
  const Signal s = gen_sine_mix(length, T);
  const double theta = fraction * static_cast<double>(length) * s.dt();
  const Score sc = compress_and_score(LegT{theta, LegtScaling::lmu}, SchemeSpec::gbt(0.5, s.dt()), s, N);
  double out_acc = 0.0, in_acc = 0.0;
  std::size_t out_n = 0, in_n = 0;
  for (std::size_t i = 0; i < sc.grid.size(); ++i) {
    const double x = sc.grid[i];
    const double d = sc.truth[i] - sc.recon.values(static_cast<Eigen::Index>(i));
    if (x <= 0.8 * T) {
      out_acc += d * d;
      ++out_n;
    }
    if (x >= sc.t - theta) {
      in_acc += d * d;
      ++in_n;
    }
  }
  CheckReport r;
  r.name = "window_sensitivity";
  r.threshold = "mse on [0, 0.8T] >= " + fmt(min_ratio) + " x mse inside the window";
  const double out_mse = out_n ? out_acc / static_cast<double>(out_n) : 0.0;
  const double in_mse = in_n ? in_acc / static_cast<double>(in_n) : 0.0;
  r.measurements = {{"theta", theta}, {"mse_early", out_mse}, {"mse_window", in_mse},
                    {"ratio", in_mse > 0.0 ? out_mse / in_mse : std::numeric_limits<double>::infinity()}};
  r.pass = out_mse >= min_ratio * in_mse && out_n > 0 && in_n > 0;
  return r;
}

}  // namespace hippo
