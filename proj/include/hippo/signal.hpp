#pragma once

#include <cstddef>
#include <vector>

namespace hippo {

/// A sampled input: either uniform (dt, values) or timestamped (t_i, f_i) pairs.
class Signal {
 public:
  /// Throws std::invalid_argument for dt <= 0 or non-finite values.
  static Signal uniform(double dt, std::vector<double> values);
  /// Throws SemanticError unless timestamps strictly increase.
  static Signal timestamped(std::vector<double> times, std::vector<double> values);

  bool is_uniform() const { return uniform_; }
  double dt() const { return dt_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  const std::vector<double>& values() const { return values_; }
  /// Sample times; i * dt for uniform signals.
  /// For timestamped signals dt() is the mean spacing (1 if fewer than two samples).
  std::vector<double> times() const;
  double time(std::size_t i) const { return is_uniform() ? static_cast<double>(i) * dt_ : times_[i]; }

 private:
  Signal() = default;
  bool uniform_ = true;
  double dt_ = 0.0;
  std::vector<double> times_;
  std::vector<double> values_;
};

}  // namespace hippo
