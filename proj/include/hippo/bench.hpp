#pragma once

// Single-threaded timing of one LegS GBT step.

#include <cstdint>
#include <string_view>

namespace hippo {

enum class StepImpl { fast, dense };

std::string_view impl_name(StepImpl impl);

struct BenchResult {
  int N = 0;
  StepImpl impl = StepImpl::fast;
  long steps = 0;
  double seconds = 0.0;
  double steps_per_second = 0.0;
  double checksum = 0.0;  ///< keeps the loop observable
};

/// Times `steps` bilinear LegS steps on a seeded random input after a short warm-up.
/// The dense variant multiplies and solves with the full N x N matrix.
BenchResult bench_legs_step(int N, long steps, StepImpl impl, std::uint64_t seed = 0);

}  // namespace hippo
