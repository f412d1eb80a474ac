#include "hippo/signal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hippo/errors.hpp"

namespace hippo {

namespace {

void require_finite(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i])) throw SemanticError("non-finite value at sample " + std::to_string(i));
}

}  // namespace

Signal Signal::uniform(double dt, std::vector<double> values) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("signal dt must be positive");
  require_finite(values);
  Signal s;
  s.dt_ = dt;
  s.values_ = std::move(values);
  return s;
}

Signal Signal::timestamped(std::vector<double> times, std::vector<double> values) {
  if (times.size() != values.size()) throw std::invalid_argument("timestamp and value counts differ");
  require_finite(times);
  require_finite(values);
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw SemanticError("timestamps must strictly increase (sample " + std::to_string(i) + ")");
  Signal s;
  s.uniform_ = false;
  s.dt_ = times.size() > 1 ? (times.back() - times.front()) / static_cast<double>(times.size() - 1) : 1.0;
  s.times_ = std::move(times);
  s.values_ = std::move(values);
  return s;
}

std::vector<double> Signal::times() const {
  if (!is_uniform()) return times_;
  std::vector<double> t(values_.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i) * dt_;
  return t;
}

}  // namespace hippo
