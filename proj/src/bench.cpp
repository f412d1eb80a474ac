#include "hippo/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>

#include "hippo/fastlegs.hpp"
#include "hippo/operators.hpp"

namespace hippo {

std::string_view impl_name(StepImpl impl) { return impl == StepImpl::fast ? "fast" : "dense"; }

BenchResult bench_legs_step(int N, long steps, StepImpl impl, std::uint64_t seed) {
  if (steps < 1) throw std::invalid_argument("bench: steps must be positive");
  const auto F = LegsFactors<double>::make(N);
  const Eigen::MatrixXd A = legs_matrix(N);
  const Eigen::VectorXd B = legs_input(N);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> f(static_cast<std::size_t>(steps));
  for (double& v : f) v = normal(rng);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(N), next(N), work(N);

  auto step = [&](long k, double fk) {
    if (impl == StepImpl::fast) {
      legs_gbt_fast<double>(F, B, 0.5, k, c, fk, c);
    } else {
      legs_gbt_dense<double>(A, B, 0.5, k, c, fk, work, next);
      c.swap(next);
    }
  };
  const long warm = std::min<long>(1000, std::max<long>(1, steps / 10));
  for (long k = 0; k < warm; ++k) step(k, f[static_cast<std::size_t>(k % steps)]);
  const auto start = std::chrono::steady_clock::now();
  for (long k = 0; k < steps; ++k) step(warm + k, f[static_cast<std::size_t>(k)]);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  BenchResult r;
  r.N = N;
  r.impl = impl;
  r.steps = steps;
  r.seconds = secs;
  r.steps_per_second = secs > 0.0 ? static_cast<double>(steps) / secs : 0.0;
  r.checksum = c.sum();
  return r;
}

}  // namespace hippo
