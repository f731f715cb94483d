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

#include "ckpt/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ckpt/analytic.hpp"
#include "ckpt/piecewise.hpp"

namespace ckpt {

namespace {

// Cycles per aggregation block. Fixed so that the floating-point summation
// order is identical for every thread count.
constexpr std::int64_t kBlockCycles = 8192;

struct BlockSums {
  double lost = 0.0;
  double lost_sq = 0.0;
  double wall = 0.0;
  double wall_sq = 0.0;
  double retained = 0.0;
  double retained_sq = 0.0;
  double wall_retained = 0.0;
  std::int64_t origin_restarts = 0;
};

}  // namespace

namespace detail {

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform_unit(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>((splitmix64(seed, index) >> 11) + 1) * 0x1.0p-53;
}

}  // namespace detail

std::int64_t default_retention_depth(const ModelParams& p, TimeQuantity t_c) {
  if (!(t_c.secs() > 0.0)) throw std::domain_error("t_c must be positive");
  return static_cast<std::int64_t>(guarded_floor(p.t_e.secs() / t_c.secs())) + 2;
}

SimConfig validate_config(const SimConfig& config) {
  std::string errors;
  auto add = [&errors](const char* msg) {
    if (!errors.empty()) errors += "; ";
    errors += msg;
  };
  if (!(config.params.t_f.secs() > 0.0)) add("t_f must be positive");
  if (!(config.t_c.secs() > config.params.t_s.secs())) {
    add("t_c must exceed t_s (a period must fit its exposed save)");
  }
  if (config.cycles < 1) add("cycles must be >= 1");
  if (config.retention_depth < 1) add("retention_depth must be >= 1");
  if (!errors.empty()) throw std::invalid_argument(errors);
  return config;
}

CycleOutcome single_cycle(const ModelParams& p, TimeQuantity t_c,
                          std::int64_t retention_depth, TimeQuantity fault_time) {
  const double tc = t_c.secs(), ts = p.t_s.secs(), te = p.t_e.secs(), tr = p.t_r.secs();
  if (!(tc > ts)) throw std::domain_error("t_c must exceed t_s");
  if (retention_depth < 1) throw std::domain_error("retention_depth must be >= 1");
  const double fault = fault_time.secs();
  const double detection = fault + te;

  // Save j completes at j*t_c. Valid saves completed at or before the
  // fault; snapshots present at detection completed at or before it.
  const auto valid = static_cast<std::int64_t>(guarded_floor(fault / tc));
  const auto present = static_cast<std::int64_t>(guarded_floor(detection / tc));

  CycleOutcome out;
  out.wall = TimeQuantity::seconds(fault + te + tr);
  const bool recoverable = valid >= 1 && valid >= present - retention_depth + 1;
  if (recoverable) {
    out.retained_useful = TimeQuantity::seconds(static_cast<double>(valid) * (tc - ts));
    out.restarted_from_origin = false;
  } else {
    out.retained_useful = TimeQuantity::seconds(0.0);
    out.restarted_from_origin = true;
  }
  return out;
}

SimResult run_trials(const SimConfig& config, unsigned threads) {
  validate_config(config);
  const std::int64_t cycles = config.cycles;
  const std::int64_t blocks = (cycles + kBlockCycles - 1) / kBlockCycles;
  const double tf = config.params.t_f.secs();

  std::vector<BlockSums> sums(static_cast<std::size_t>(blocks));
  auto run_block = [&](std::int64_t block) {
    BlockSums acc;
    const std::int64_t begin = block * kBlockCycles;
    const std::int64_t end = std::min(cycles, begin + kBlockCycles);
    for (std::int64_t i = begin; i < end; ++i) {
      double u = detail::uniform_unit(config.seed, static_cast<std::uint64_t>(i));
      TimeQuantity fault = TimeQuantity::seconds(-tf * std::log(u));
      CycleOutcome cycle =
          single_cycle(config.params, config.t_c, config.retention_depth, fault);
      double wall = cycle.wall.secs();
      double retained = cycle.retained_useful.secs();
      double lost = wall - retained;
      acc.lost += lost;
      acc.lost_sq += lost * lost;
      acc.wall += wall;
      acc.wall_sq += wall * wall;
      acc.retained += retained;
      acc.retained_sq += retained * retained;
      acc.wall_retained += wall * retained;
      acc.origin_restarts += cycle.restarted_from_origin ? 1 : 0;
    }
    sums[static_cast<std::size_t>(block)] = acc;
  };

  unsigned hw = std::thread::hardware_concurrency();
  unsigned want = threads != 0 ? threads : (hw != 0 ? hw : 1);
  auto worker_count = static_cast<unsigned>(
      std::min<std::int64_t>(blocks, static_cast<std::int64_t>(want)));
  if (worker_count <= 1) {
    for (std::int64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (unsigned w = 0; w < worker_count; ++w) {
      pool.emplace_back([&] {
        for (std::int64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
          run_block(b);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  // Combine in block order: the summation order never depends on threads.
  BlockSums total;
  for (const BlockSums& b : sums) {
    total.lost += b.lost;
    total.lost_sq += b.lost_sq;
    total.wall += b.wall;
    total.wall_sq += b.wall_sq;
    total.retained += b.retained;
    total.retained_sq += b.retained_sq;
    total.wall_retained += b.wall_retained;
    total.origin_restarts += b.origin_restarts;
  }

  const auto n = static_cast<double>(cycles);
  SimResult result;
  result.cycles = cycles;
  result.restarts_from_origin = total.origin_restarts;
  result.mean_lost_time_per_cycle = TimeQuantity::seconds(total.lost / n);
  if (cycles >= 2) {
    double var = (total.lost_sq - total.lost * total.lost / n) / (n - 1.0);
    result.stderr_lost_time = TimeQuantity::seconds(std::sqrt(std::max(0.0, var) / n));
  }
  if (total.wall > 0.0) {
    double ratio = total.retained / total.wall;
    result.availability_estimate = ratio;
    if (cycles >= 2) {
      // Delta method on the ratio of sums: variance of the residuals
      // retained_i - ratio * wall_i around the fitted ratio.
      double resid_sq = total.retained_sq - 2.0 * ratio * total.wall_retained +
                        ratio * ratio * total.wall_sq;
      double mean_wall = total.wall / n;
      result.stderr_availability =
          std::sqrt(std::max(0.0, resid_sq) / (n - 1.0) / n) / mean_wall;
    }
  }
  return result;
}

ModelComparison compare_with_model(const SimConfig& config, unsigned threads) {
  validate_config(config);
  ModelComparison cmp;
  cmp.simulated = run_trials(config, threads);
  if (config.params.t_e.secs() == 0.0) {
    cmp.model_lost_time = lost_time(config.params, config.t_c);
    cmp.model_availability = availability(config.params, config.t_c);
  } else {
    cmp.model_lost_time = lost_time_latency(config.params, config.t_c);
    cmp.model_availability = availability_latency(config.params, config.t_c);
  }
  cmp.abs_error_lost_time = TimeQuantity::seconds(
      std::abs(cmp.simulated.mean_lost_time_per_cycle.secs() - cmp.model_lost_time.secs()));
  cmp.abs_error_availability =
      std::abs(cmp.simulated.availability_estimate - cmp.model_availability);
  return cmp;
}

}  // namespace ckpt
