#include "hippo/discretize.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace hippo {

namespace {

template <class Scalar>
Eigen::PartialPivLU<Mat<Scalar>> factor_checked(const Mat<Scalar>& M) {
  Eigen::PartialPivLU<Mat<Scalar>> lu(M);
  const double rc = lu.rcond();
  if (!(rc > 16 * std::numeric_limits<double>::epsilon()))
    throw NumericalError("singular system in implicit step (reciprocal condition " + std::to_string(rc) + ")");
  return lu;
}

template <class Scalar>
void require_constant(const Generator<Scalar>& gen, const char* who) {
  if (!gen.is_constant()) throw std::invalid_argument(std::string(who) + ": generator is not time invariant");
}

void require_dt(double dt, const char* who) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument(std::string(who) + ": dt must be positive");
}

}  // namespace

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("matrix_exp: matrix is not square");
  return M.exp();
}

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("matrix_exp: matrix is not square");
  return M.exp();
}

template <class Scalar>
void check_scheme(const Generator<Scalar>& gen, const SchemeSpec& scheme) {
  if (scheme.method == Method::gbt && !(scheme.alpha >= 0.0 && scheme.alpha <= 1.0))
    throw std::invalid_argument("gbt alpha must lie in [0, 1]");
  if (scheme.policy == StepPolicy::fixed) require_dt(scheme.dt, "fixed step");
  switch (gen.kind) {
    case TimeDependence::constant:
      if (scheme.policy == StepPolicy::index_based)
        throw std::invalid_argument("index-based steps apply only to the legs generator");
      break;
    case TimeDependence::inverse_time:
      if (scheme.method == Method::zoh) throw std::invalid_argument("zoh requires a time-invariant generator");
      break;
    case TimeDependence::rotating:
      if (scheme.method == Method::zoh) throw std::invalid_argument("zoh requires a time-invariant generator");
      if (scheme.alpha != 0.0) throw std::invalid_argument("fru is stepped by forward Euler (alpha = 0) only");
      if (scheme.policy == StepPolicy::index_based)
        throw std::invalid_argument("index-based steps apply only to the legs generator");
      break;
  }
}

template <class Scalar>
CoefState<Scalar> gbt_step(const Generator<Scalar>& gen, double alpha, double dt, const CoefState<Scalar>& state,
                           double f) {
  require_constant(gen, "gbt_step");
  require_dt(dt, "gbt_step");
  const Eigen::Index N = gen.dim();
  const Mat<Scalar> I = Mat<Scalar>::Identity(N, N);
  Vec<Scalar> rhs = (I + Scalar(dt * (1.0 - alpha)) * gen.F) * state.c + Scalar(dt * f) * gen.G;
  CoefState<Scalar> next{rhs, state.k + 1, state.t + dt};
  if (alpha != 0.0) next.c = factor_checked<Scalar>(I - Scalar(dt * alpha) * gen.F).solve(rhs);
  return next;
}

template <class Scalar>
Discretized<Scalar> discretize_gbt(const Generator<Scalar>& gen, double alpha, double dt) {
  require_constant(gen, "discretize_gbt");
  require_dt(dt, "discretize_gbt");
  const Eigen::Index N = gen.dim();
  const Mat<Scalar> I = Mat<Scalar>::Identity(N, N);
  Discretized<Scalar> d{I + Scalar(dt * (1.0 - alpha)) * gen.F, Scalar(dt) * gen.G};
  if (alpha != 0.0) {
    const auto lu = factor_checked<Scalar>(I - Scalar(dt * alpha) * gen.F);
    d.Abar = lu.solve(d.Abar);
    d.Bbar = lu.solve(d.Bbar);
  }
  return d;
}

template <class Scalar>
Discretized<Scalar> discretize_zoh(const Generator<Scalar>& gen, double dt) {
  require_constant(gen, "discretize_zoh");
  require_dt(dt, "discretize_zoh");
  const Eigen::Index N = gen.dim();
  const Mat<Scalar> Fdt = Scalar(dt) * gen.F;
  Eigen::PartialPivLU<Mat<Scalar>> lu(gen.F);
  if (lu.rcond() > 1e-8) {
    Mat<Scalar> Phi = matrix_exp(Fdt);
    Vec<Scalar> Gam = lu.solve((Phi - Mat<Scalar>::Identity(N, N)) * gen.G);
    return {std::move(Phi), std::move(Gam)};
  }
  // exp([[F, G], [0, 0]] dt) = [[e^{F dt}, int_0^dt e^{F s} ds G], [0, 1]]
  Mat<Scalar> aug = Mat<Scalar>::Zero(N + 1, N + 1);
  aug.topLeftCorner(N, N) = Fdt;
  aug.topRightCorner(N, 1) = Scalar(dt) * gen.G;
  const Mat<Scalar> E = matrix_exp(aug);
  return {E.topLeftCorner(N, N), E.topRightCorner(N, 1)};
}

template <class Scalar>
CoefState<Scalar> zoh_step(const Generator<Scalar>& gen, double dt, const CoefState<Scalar>& state, double f) {
  const Discretized<Scalar> d = discretize_zoh(gen, dt);
  return {d.Abar * state.c + Scalar(f) * d.Bbar, state.k + 1, state.t + dt};
}

CoefState<double> legs_step(const Eigen::MatrixXd& A, const Eigen::VectorXd& B, double alpha,
                            const CoefState<double>& state, double f) {
  const Eigen::Index N = B.size();
  if (A.rows() != N || A.cols() != N || state.c.size() != N) throw std::invalid_argument("legs_step: size mismatch");
  if (state.k < 0) throw std::invalid_argument("legs_step: negative step index");
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N, N);
  const double k = static_cast<double>(state.k);
  Eigen::VectorXd rhs;
  Eigen::MatrixXd lhs;
  if (state.k == 0) {
    rhs = B * f;
    lhs = I + alpha * A;
  } else {
    rhs = (I - ((1.0 - alpha) / k) * A) * state.c + (f / k) * B;
    lhs = I + (alpha / (k + 1.0)) * A;
  }
  return {factor_checked<double>(lhs).solve(rhs), state.k + 1, state.t + 1.0};
}

template <class Scalar>
Stepper<Scalar>::Stepper(Generator<Scalar> gen, SchemeSpec scheme) : gen_(std::move(gen)), scheme_(scheme) {
  check_scheme(gen_, scheme_);
  if (gen_.kind == TimeDependence::inverse_time) {
    if constexpr (std::is_same_v<Scalar, double>) {
      legs_ = LegsFactors<double>::make(gen_.dim());
      legs_B_ = gen_.G;
    } else {
      throw std::invalid_argument("legs generator is real");
    }
  }
  scratch_.resize(gen_.dim());
  if (gen_.is_constant() && scheme_.policy == StepPolicy::fixed) cached(scheme_.dt);
}

template <class Scalar>
const Discretized<Scalar>& Stepper<Scalar>::cached(double dt) {
  if (!cache_dt_ || *cache_dt_ != dt) {
    cache_ = scheme_.method == Method::zoh ? discretize_zoh(gen_, dt) : discretize_gbt(gen_, scheme_.alpha, dt);
    cache_dt_ = dt;
  }
  return cache_;
}

template <class Scalar>
void Stepper<Scalar>::advance(CoefState<Scalar>& state, double f, double dt) {
  if (!std::isfinite(f)) throw NumericalError("non-finite input sample");
  switch (gen_.kind) {
    case TimeDependence::constant: {
      require_dt(dt, "step");
      const Discretized<Scalar>& d = cached(dt);
      scratch_.noalias() = d.Abar * state.c;
      state.c = scratch_ + Scalar(f) * d.Bbar;
      break;
    }
    case TimeDependence::rotating: {
      require_dt(dt, "step");
      if constexpr (!std::is_same_v<Scalar, double>) state.c += Scalar(dt * f) * fru_input(gen_, state.t);
      break;
    }
    case TimeDependence::inverse_time: {
      if constexpr (std::is_same_v<Scalar, double>) {
        const double alpha = scheme_.alpha;
        if (scheme_.policy == StepPolicy::index_based) {
          legs_gbt_fast<double>(legs_, legs_B_, alpha, state.k, state.c, f, state.c);
          state.t += 1.0;
        } else {
          require_dt(dt, "step");
          if (state.k == 0) {
            legs_gbt_fast<double>(legs_, legs_B_, alpha, 0, state.c, f, state.c);
          } else {
            legs_gbt_ratio<double>(legs_, legs_B_, alpha, dt / state.t, dt / (state.t + dt), state.c, f, state.c);
          }
          state.t += dt;
        }
        ++state.k;
        if (scheme_.policy == StepPolicy::fixed) state.t = static_cast<double>(state.k) * scheme_.dt;
        return;
      }
      break;
    }
  }
  ++state.k;
  state.t = scheme_.policy == StepPolicy::fixed ? static_cast<double>(state.k) * scheme_.dt : state.t + dt;
}

std::vector<double> step_sizes(const SchemeSpec& scheme, const Signal& signal) {
  const std::size_t n = signal.size();
  std::vector<double> dts(n, 1.0);
  if (scheme.policy == StepPolicy::fixed) {
    std::fill(dts.begin(), dts.end(), scheme.dt);
  } else if (scheme.policy == StepPolicy::timestamped) {
    const std::vector<double> t = signal.times();
    if (n == 1) {
      if (!(t[0] > 0.0)) throw SemanticError("single timestamped sample needs t > 0 to define its step");
      dts[0] = t[0];
    } else if (n > 1) {
      dts[0] = t[1] - t[0];
      for (std::size_t i = 1; i < n; ++i) dts[i] = t[i] - t[i - 1];
    }
  }
  return dts;
}

template <class Scalar>
std::vector<CoefState<Scalar>> run_stream(const Generator<Scalar>& gen, const SchemeSpec& scheme, const Signal& signal,
                                          Record record) {
  if (signal.empty()) throw std::invalid_argument("run_stream: empty signal");
  Stepper<Scalar> stepper(gen, scheme);
  const std::vector<double> dts = step_sizes(scheme, signal);
  const std::vector<double>& f = signal.values();
  std::vector<CoefState<Scalar>> out;
  if (record == Record::all) out.reserve(f.size());
  CoefState<Scalar> state = stepper.initial_state();
  for (std::size_t i = 0; i < f.size(); ++i) {
    try {
      stepper.advance(state, f[i], dts[i]);
    } catch (const StreamError&) {
      throw;
    } catch (const std::exception& e) {
      throw StreamError(i, e.what());
    }
    if (!state.c.allFinite()) throw StreamError(i, "coefficients became non-finite");
    if (record == Record::all) out.push_back(state);
  }
  if (record == Record::final_only) out.push_back(std::move(state));
  return out;
}

#define HIPPO_INSTANTIATE(S)                                                                                   \
  template void check_scheme<S>(const Generator<S>&, const SchemeSpec&);                                     \
  template CoefState<S> gbt_step<S>(const Generator<S>&, double, double, const CoefState<S>&, double);       \
  template CoefState<S> zoh_step<S>(const Generator<S>&, double, const CoefState<S>&, double);               \
  template Discretized<S> discretize_gbt<S>(const Generator<S>&, double, double);                            \
  template Discretized<S> discretize_zoh<S>(const Generator<S>&, double);                                    \
  template class Stepper<S>;                                                                                  \
  template std::vector<CoefState<S>> run_stream<S>(const Generator<S>&, const SchemeSpec&, const Signal&, Record);

HIPPO_INSTANTIATE(double)
HIPPO_INSTANTIATE(std::complex<double>)

#undef HIPPO_INSTANTIATE

}  // namespace hippo
