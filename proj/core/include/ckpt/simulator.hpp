// Copyright 2026 The ckptplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CKPT_SIMULATOR_HPP
#define CKPT_SIMULATOR_HPP

#include <cstdint>

#include "ckpt/time.hpp"

namespace ckpt {

/// Monte Carlo trial configuration. One trial replays `cycles` independent
/// failure cycles of the checkpoint/fault/detection/rollback timeline.
struct SimConfig {
  ModelParams params;
  TimeQuantity t_c;                 ///< checkpoint period, start-to-start
  std::int64_t cycles = 100000;     ///< failure cycles to simulate
  std::uint64_t seed = 0;
  std::int64_t retention_depth = 1; ///< snapshots kept; see default_retention_depth
};

/// Smallest retention depth, floor(t_e/t_c) + 2, that guarantees a valid
/// snapshot is still retained whenever at least one save completed before
/// the fault.
std::int64_t default_retention_depth(const ModelParams& p, TimeQuantity t_c);

/// Throws std::invalid_argument unless t_c > t_s, cycles >= 1 and
/// retention_depth >= 1 (field named in the message).
SimConfig validate_config(const SimConfig& config);

/// Aggregated trial statistics. Standard errors come from the per-cycle
/// sample variance; the availability one uses the delta method on the
/// ratio of sums.
struct SimResult {
  TimeQuantity mean_lost_time_per_cycle;
  double availability_estimate = 0.0;
  TimeQuantity stderr_lost_time;
  double stderr_availability = 0.0;
  std::int64_t cycles = 0;
  std::int64_t restarts_from_origin = 0;  ///< cycles with no valid retained snapshot
};

struct CycleOutcome {
  TimeQuantity wall;             ///< fault_time + t_e + t_r
  TimeQuantity retained_useful;  ///< useful work surviving the rollback
  bool restarted_from_origin = false;
};

/// Deterministic replay of one failure cycle.
///
/// Timeline conventions: each period of length t_c performs t_c - t_s of
/// useful work followed by an exposed save of t_s completing at the period
/// boundary. A save completing at or before fault_time is valid (the
/// boundary save counts as completed); saves completing after the fault
/// hold corrupt state. Saves keep happening until detection at
/// fault_time + t_e, so snapshots completing at or before detection time
/// exist but the post-fault ones are invalid. Rollback targets the newest
/// valid snapshot among the retention_depth most recent at detection time;
/// when none qualifies the cycle restarts from origin with nothing
/// retained. One fault per cycle; faults during recovery are out of scope.
CycleOutcome single_cycle(const ModelParams& p, TimeQuantity t_c,
                          std::int64_t retention_depth, TimeQuantity fault_time);

/// Runs `config.cycles` independent cycles with exponential fault times of
/// mean t_f and aggregates them.
///
/// Random number contract (fixed, for cross-platform reproducibility):
/// cycle i consumes exactly one SplitMix64 output
///   z = mix(seed + (i+1) * 0x9E3779B97F4A7C15)
/// mapped to u = ((z >> 11) + 1) * 2^-53 in (0, 1], and the fault time is
/// the inverse-transform sample -t_f * ln(u). Randomness depends only on
/// (seed, cycle index), and aggregation runs over fixed-size blocks
/// combined in index order, so results are bit-identical for a given seed
/// regardless of thread count.
///
/// threads == 0 picks a thread count automatically.
SimResult run_trials(const SimConfig& config, unsigned threads = 0);

/// run_trials plus the matching analytic model at config.t_c (continuous
/// model when t_e == 0, the floor-term latency model otherwise).
struct ModelComparison {
  SimResult simulated;
  TimeQuantity model_lost_time;
  double model_availability = 0.0;
  TimeQuantity abs_error_lost_time;
  double abs_error_availability = 0.0;
};

ModelComparison compare_with_model(const SimConfig& config, unsigned threads = 0);

namespace detail {
/// The i-th SplitMix64 stream output for the given seed; exposed so tests
/// can pin the stream.
std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t index);
/// Uniform draw in (0, 1] derived from splitmix64(seed, index).
double uniform_unit(std::uint64_t seed, std::uint64_t index);
}  // namespace detail

}  // namespace ckpt

#endif  // CKPT_SIMULATOR_HPP
