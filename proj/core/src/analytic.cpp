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

#include "ckpt/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace ckpt {

namespace {

double require_positive_tc(TimeQuantity t_c) {
  double tc = t_c.secs();
  if (!(tc > 0.0)) throw std::domain_error("t_c must be positive");
  return tc;
}

}  // namespace

TimeQuantity lost_time(const ModelParams& p, TimeQuantity t_c) {
  double tc = require_positive_tc(t_c);
  double tf = p.t_f.secs(), ts = p.t_s.secs(), tr = p.t_r.secs();
  return TimeQuantity::seconds(tf / tc * ts + tc / 2.0 + tr);
}

double lost_time_slope(const ModelParams& p, TimeQuantity t_c) {
  double tc = require_positive_tc(t_c);
  return -p.t_f.secs() * p.t_s.secs() / (tc * tc) + 0.5;
}

Optimum optimal_tc_lost_time(const ModelParams& p) {
  validate_params(p, /*for_optimization=*/true);
  TimeQuantity tc = TimeQuantity::seconds(std::sqrt(2.0 * p.t_f.secs() * p.t_s.secs()));
  return Optimum{tc, lost_time(p, tc).secs(), Objective::lost_time, Method::closed_form};
}

double availability(const ModelParams& p, TimeQuantity t_c) {
  double tc = require_positive_tc(t_c);
  double tf = p.t_f.secs(), ts = p.t_s.secs(), tr = p.t_r.secs();
  return (tf - tf * ts / tc) / (tf + tc / 2.0 + tr);
}

double availability_slope(const ModelParams& p, TimeQuantity t_c) {
  double tc = require_positive_tc(t_c);
  double tf = p.t_f.secs(), ts = p.t_s.secs(), tr = p.t_r.secs();
  double denom = tc / 2.0 + tf + tr;
  return (tf * ts / (tc * tc)) / denom + (tf * ts / tc - tf) / (2.0 * denom * denom);
}

Optimum optimal_tc_availability(const ModelParams& p) {
  validate_params(p, /*for_optimization=*/true);
  double tf = p.t_f.secs(), ts = p.t_s.secs(), tr = p.t_r.secs();
  TimeQuantity tc = TimeQuantity::seconds(ts + std::sqrt(2.0 * (tf + tr) * ts + ts * ts));
  return Optimum{tc, availability(p, tc), Objective::availability, Method::closed_form};
}

}  // namespace ckpt
