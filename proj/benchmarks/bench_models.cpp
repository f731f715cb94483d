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

#include <benchmark/benchmark.h>

#include "ckpt/analytic.hpp"
#include "ckpt/piecewise.hpp"
#include "ckpt/simulator.hpp"

namespace {

const ckpt::ModelParams kParams{
    ckpt::TimeQuantity::hours(1),
    ckpt::TimeQuantity::seconds(1),
    ckpt::TimeQuantity::minutes(4),
    ckpt::TimeQuantity::minutes(2),
};

void BM_LostTimeContinuous(benchmark::State& state) {
  ckpt::TimeQuantity tc = ckpt::TimeQuantity::seconds(84.85);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ckpt::lost_time(kParams, tc));
  }
}
BENCHMARK(BM_LostTimeContinuous);

void BM_LostTimeLatency(benchmark::State& state) {
  ckpt::TimeQuantity tc = ckpt::TimeQuantity::seconds(84.85);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ckpt::lost_time_latency(kParams, tc));
  }
}
BENCHMARK(BM_LostTimeLatency);

void BM_ClosedFormOptima(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ckpt::optimal_tc_lost_time(kParams));
    benchmark::DoNotOptimize(ckpt::optimal_tc_availability(kParams));
  }
}
BENCHMARK(BM_ClosedFormOptima);

void BM_OptimizePiecewise(benchmark::State& state) {
  ckpt::Domain domain = ckpt::default_domain(kParams);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ckpt::optimize_piecewise(kParams, ckpt::Objective::lost_time, domain));
  }
}
BENCHMARK(BM_OptimizePiecewise);

void BM_GridScan(benchmark::State& state) {
  ckpt::Domain domain = ckpt::default_domain(kParams);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ckpt::optimize_grid(kParams, ckpt::Objective::lost_time, domain));
  }
}
BENCHMARK(BM_GridScan);

void BM_Sweep(benchmark::State& state) {
  ckpt::Domain domain{ckpt::TimeQuantity::minutes(0.5), ckpt::TimeQuantity::minutes(10)};
  ckpt::TimeQuantity step = ckpt::TimeQuantity::minutes(0.01);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ckpt::sweep(kParams, ckpt::SweepModel::with_latency, domain, step));
  }
}
BENCHMARK(BM_Sweep);

void BM_SimulatorCycles(benchmark::State& state) {
  ckpt::SimConfig cfg;
  cfg.params = kParams;
  cfg.t_c = ckpt::TimeQuantity::seconds(130);
  cfg.cycles = state.range(0);
  cfg.seed = 0;
  cfg.retention_depth = ckpt::default_retention_depth(kParams, cfg.t_c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ckpt::run_trials(cfg, 1));
  }
  state.SetItemsProcessed(state.iterations() * cfg.cycles);
}
BENCHMARK(BM_SimulatorCycles)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
