#pragma once

// Discrete recurrences c_{k+1} = Abar c_k + Bbar f_k from a Generator.

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "hippo/fastlegs.hpp"
#include "hippo/operators.hpp"
#include "hippo/signal.hpp"

namespace hippo {

enum class Method { gbt, zoh };
enum class StepPolicy { fixed, timestamped, index_based };

struct SchemeSpec {
  Method method = Method::gbt;
  double alpha = 0.5;  ///< GBT only: 0 forward Euler, 1 backward Euler, 0.5 bilinear
  StepPolicy policy = StepPolicy::fixed;
  double dt = 1.0;  ///< fixed policy only

  static SchemeSpec gbt(double alpha, double dt) { return {Method::gbt, alpha, StepPolicy::fixed, dt}; }
  static SchemeSpec gbt_timestamped(double alpha) { return {Method::gbt, alpha, StepPolicy::timestamped, 0.0}; }
  static SchemeSpec gbt_indexed(double alpha) { return {Method::gbt, alpha, StepPolicy::index_based, 0.0}; }
  static SchemeSpec zoh(double dt) { return {Method::zoh, 0.0, StepPolicy::fixed, dt}; }
};

template <class Scalar>
struct CoefState {
  Vec<Scalar> c;
  long k = 0;
  double t = 0.0;

  static CoefState zero(Eigen::Index N) { return {Vec<Scalar>::Zero(N), 0, 0.0}; }
};

/// Throws std::invalid_argument if the scheme cannot drive this generator.
template <class Scalar>
void check_scheme(const Generator<Scalar>& gen, const SchemeSpec& scheme);

template <class Scalar>
CoefState<Scalar> gbt_step(const Generator<Scalar>& gen, double alpha, double dt, const CoefState<Scalar>& state, double f);

template <class Scalar>
CoefState<Scalar> zoh_step(const Generator<Scalar>& gen, double dt, const CoefState<Scalar>& state, double f);

/// Matrix exponential (scaling and squaring with Pade approximants).
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& M);
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& M);

/// Index-based LegS GBT step through dense LU. A is the unsigned LegS matrix.
/// state.k = 0 injects f into a zero state. No step size enters.
CoefState<double> legs_step(const Eigen::MatrixXd& A, const Eigen::VectorXd& B, double alpha,
                            const CoefState<double>& state, double f);

/// Discrete (Abar, Bbar) for a constant generator and step dt.
template <class Scalar>
struct Discretized {
  Mat<Scalar> Abar;
  Vec<Scalar> Bbar;
};

template <class Scalar>
Discretized<Scalar> discretize_gbt(const Generator<Scalar>& gen, double alpha, double dt);
template <class Scalar>
Discretized<Scalar> discretize_zoh(const Generator<Scalar>& gen, double dt);

/// Advances a state through a generator under a scheme. For constant
/// generators (Abar, Bbar) are cached per distinct dt; LegS runs on the O(N) kernels.
template <class Scalar>
class Stepper {
 public:
  Stepper(Generator<Scalar> gen, SchemeSpec scheme);

  const Generator<Scalar>& generator() const { return gen_; }
  const SchemeSpec& scheme() const { return scheme_; }
  CoefState<Scalar> initial_state() const { return CoefState<Scalar>::zero(gen_.dim()); }

  /// Consumes one sample f held over a step of length dt (ignored for index-based LegS).
  void advance(CoefState<Scalar>& state, double f, double dt);

 private:
  const Discretized<Scalar>& cached(double dt);

  Generator<Scalar> gen_;
  SchemeSpec scheme_;
  std::optional<double> cache_dt_;
  Discretized<Scalar> cache_;
  LegsFactors<double> legs_;
  Eigen::VectorXd legs_B_;
  Vec<Scalar> scratch_;
};

enum class Record { final_only, all };

/// Step sizes a signal implies under a policy: fixed dt, the timestamp
/// differences (the first sample takes the first gap, or t_0 if it is alone),
/// or 1 per sample for index-based runs.
std::vector<double> step_sizes(const SchemeSpec& scheme, const Signal& signal);

/// Folds the stepper over the signal. Record::all returns one state per sample,
/// Record::final_only returns just the last. Step failures are rethrown as
/// StreamError carrying the sample index.
template <class Scalar>
std::vector<CoefState<Scalar>> run_stream(const Generator<Scalar>& gen, const SchemeSpec& scheme, const Signal& signal,
                                          Record record = Record::final_only);

}  // namespace hippo
