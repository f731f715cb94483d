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

#ifndef CKPT_PIECEWISE_HPP
#define CKPT_PIECEWISE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ckpt/analytic.hpp"
#include "ckpt/time.hpp"

namespace ckpt {

/// Closed interval of candidate checkpoint intervals.
struct Domain {
  TimeQuantity lo;
  TimeQuantity hi;
};

enum class BreakpointSource { failure_term, latency_term };

/// A discontinuity of the floor-term objectives: t_c = t_f/k where the
/// completed-checkpoint count changes, or t_c = t_e/k where the
/// detection-period count changes.
struct Breakpoint {
  TimeQuantity t_c;
  BreakpointSource source = BreakpointSource::failure_term;
  std::int64_t k = 1;
};

enum class SweepModel { continuous, with_latency };

struct SweepPoint {
  TimeQuantity t_c;
  TimeQuantity lost_time;
  double availability = 0.0;
};

/// Sampled (t_c, lost time, availability) curves, the plotting interface
/// for the latency figures. t_c is strictly increasing across points.
struct SweepSeries {
  std::vector<SweepPoint> points;
  ModelParams params;
  SweepModel model = SweepModel::continuous;
};

/// Lost time per failure cycle with detection latency:
/// floor(t_f/t_c)*t_s + floor(t_e/t_c)*t_c + t_c/2 + t_r.
///
/// Floor arguments within 1e-12 relative of an integer round to it, so
/// humanly-round inputs (t_c = 2min with t_e = 2min) behave predictably.
TimeQuantity lost_time_latency(const ModelParams& p, TimeQuantity t_c);

/// Availability with detection latency:
/// (t_f - floor(t_f/t_c)*t_s) / (t_f + floor(t_e/t_c)*t_c + t_c/2 + t_r).
double availability_latency(const ModelParams& p, TimeQuantity t_c);

/// Floor evaluation shared by the latency models: floor(x) with a 1e-12
/// relative guard band that snaps near-integers to the integer.
double guarded_floor(double q);

/// All discontinuities {t_f/k} and {t_e/k} inside [lo, hi], sorted
/// ascending and deduplicated within 1e-12 relative (coincident locations
/// keep the smaller k; failure_term wins ties).
std::vector<Breakpoint> breakpoints(const ModelParams& p, Domain domain);

/// Minimizes lost_time_latency (or maximizes availability_latency) over
/// the domain by enumerating continuity segments.
///
/// Between adjacent breakpoints both floor counts are constant, lost time
/// is strictly increasing in t_c and availability strictly decreasing
/// (while its numerator is positive), so each segment's best value is its
/// left-edge limit, computed by substituting the segment's constant floor
/// counts at the left endpoint. The reported t_c_opt sits just past the
/// floor guard band above that endpoint so that re-evaluating the model at
/// t_c_opt reproduces objective_value instead of the pre-jump value.
/// Domain endpoints are evaluated directly as additional candidates.
///
/// Falls back to grid_scan (with a note on stderr) when the domain spans
/// more than 10^6 segments.
Optimum optimize_piecewise(const ModelParams& p, Objective objective, Domain domain);

/// Independent oracle for optimize_piecewise: evaluates the latency model
/// on a uniform grid over the domain. step_seconds <= 0 selects the
/// default of 1e-3 of the domain width.
Optimum optimize_grid(const ModelParams& p, Objective objective, Domain domain,
                      double step_seconds = 0.0);

/// Default optimization domain [max(t_s, 1s), min(t_f, hi)] used when the
/// caller does not give one. Throws std::domain_error when the clipped
/// domain is empty.
Domain default_domain(const ModelParams& p,
                      std::optional<TimeQuantity> lo = std::nullopt,
                      std::optional<TimeQuantity> hi = std::nullopt);

/// Samples both objectives at t_c = lo, lo+step, ... <= hi with the chosen
/// model. lo == hi yields a single-point series.
SweepSeries sweep(const ModelParams& p, SweepModel model, Domain domain, TimeQuantity step);

/// CSV with header "t_c_minutes,lost_time_minutes,availability", one row
/// per sample, 9 significant digits, '\n' line endings.
void write_sweep_csv(std::ostream& os, const SweepSeries& series);

}  // namespace ckpt

#endif  // CKPT_PIECEWISE_HPP
