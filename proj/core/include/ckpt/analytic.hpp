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

#ifndef CKPT_ANALYTIC_HPP
#define CKPT_ANALYTIC_HPP

#include "ckpt/time.hpp"

namespace ckpt {

enum class Objective { lost_time, availability };

enum class Method { closed_form, segment_enumeration, grid_scan };

/// A recommended checkpoint interval together with the objective value it
/// achieves and the method that produced it. Lost-time values are seconds;
/// availability values are dimensionless fractions.
struct Optimum {
  TimeQuantity t_c_opt;
  double objective_value = 0.0;
  Objective objective = Objective::lost_time;
  Method method = Method::closed_form;
};

/// Mean wall-clock time lost per failure cycle for checkpoint interval t_c:
/// save overhead (t_f/t_c)*t_s, mean discarded residual t_c/2 and recovery
/// t_r. Continuous model; detection latency is assumed negligible.
TimeQuantity lost_time(const ModelParams& p, TimeQuantity t_c);

/// d(lost_time)/d(t_c) = -t_f*t_s/t_c^2 + 1/2 (dimensionless).
double lost_time_slope(const ModelParams& p, TimeQuantity t_c);

/// Lost-time-minimizing interval, t_c = sqrt(2*t_f*t_s), with the lost time
/// re-evaluated at that point.
Optimum optimal_tc_lost_time(const ModelParams& p);

/// Fraction of wall-clock time spent on retained useful work:
/// (t_f - t_f*t_s/t_c) / (t_f + t_c/2 + t_r). Not clamped: t_c < t_s yields
/// a negative value, which deliberately shows up in sweeps.
double availability(const ModelParams& p, TimeQuantity t_c);

/// d(availability)/d(t_c), per second.
double availability_slope(const ModelParams& p, TimeQuantity t_c);

/// Availability-maximizing interval,
/// t_c = t_s + sqrt(2*(t_f+t_r)*t_s + t_s^2), with the availability
/// re-evaluated at that point.
Optimum optimal_tc_availability(const ModelParams& p);

}  // namespace ckpt

#endif  // CKPT_ANALYTIC_HPP
