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

#include "ckpt/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <ostream>
#include <stdexcept>

namespace ckpt {

namespace {

constexpr double kFloorGuard = 1e-12;
constexpr std::int64_t kMaxSegments = 1'000'000;
constexpr double kMaxSweepPoints = 1e8;

void require_domain(const Domain& d) {
  if (!(d.lo.secs() > 0.0) || !(d.lo.secs() < d.hi.secs())) {
    throw std::domain_error("domain must satisfy 0 < lo < hi");
  }
}

double lost_time_latency_raw(double tf, double ts, double tr, double te, double tc) {
  return guarded_floor(tf / tc) * ts + guarded_floor(te / tc) * tc + tc / 2.0 + tr;
}

double availability_latency_raw(double tf, double ts, double tr, double te, double tc) {
  return (tf - guarded_floor(tf / tc) * ts) /
         (tf + guarded_floor(te / tc) * tc + tc / 2.0 + tr);
}

// Left-edge limit of a segment whose floor counts are (m, n): the floors
// are substituted as constants at the segment's left endpoint. No
// epsilon-offset evaluation.
double segment_limit(double tf, double ts, double tr, double edge, double m, double n,
                     Objective objective) {
  if (objective == Objective::lost_time) {
    return m * ts + n * edge + edge / 2.0 + tr;
  }
  return (tf - m * ts) / (tf + n * edge + edge / 2.0 + tr);
}

bool improves(double candidate, double best, Objective objective) {
  return objective == Objective::lost_time ? candidate < best : candidate > best;
}

// Estimated breakpoint count, to reject pathological domains before
// materializing the list.
std::int64_t estimate_breakpoints(const ModelParams& p, const Domain& d) {
  std::int64_t total = 0;
  for (double period : {p.t_f.secs(), p.t_e.secs()}) {
    if (period <= 0.0) continue;
    double k_max = std::floor(period / d.lo.secs() + 1e-9);
    double k_min = std::max(1.0, std::ceil(period / d.hi.secs() - 1e-9));
    if (k_max >= k_min) total += static_cast<std::int64_t>(k_max - k_min) + 1;
  }
  return total;
}

}  // namespace

double guarded_floor(double q) {
  double nearest = std::round(q);
  if (std::abs(q - nearest) <= kFloorGuard * std::max(1.0, std::abs(q))) {
    return nearest;
  }
  return std::floor(q);
}

TimeQuantity lost_time_latency(const ModelParams& p, TimeQuantity t_c) {
  double tc = t_c.secs();
  if (!(tc > 0.0)) throw std::domain_error("t_c must be positive");
  return TimeQuantity::seconds(
      lost_time_latency_raw(p.t_f.secs(), p.t_s.secs(), p.t_r.secs(), p.t_e.secs(), tc));
}

double availability_latency(const ModelParams& p, TimeQuantity t_c) {
  double tc = t_c.secs();
  if (!(tc > 0.0)) throw std::domain_error("t_c must be positive");
  return availability_latency_raw(p.t_f.secs(), p.t_s.secs(), p.t_r.secs(), p.t_e.secs(), tc);
}

std::vector<Breakpoint> breakpoints(const ModelParams& p, Domain domain) {
  require_domain(domain);
  const double lo = domain.lo.secs(), hi = domain.hi.secs();

  // Half-open membership (lo, hi]: a discontinuity exactly at the lower
  // bound starts no new segment inside the domain.
  std::vector<Breakpoint> pts;
  auto collect = [&](double period, BreakpointSource source) {
    if (period <= 0.0) return;
    auto k_min = static_cast<std::int64_t>(std::max(1.0, std::ceil(period / hi - 1e-9)));
    auto k_max = static_cast<std::int64_t>(std::floor(period / lo + 1e-9));
    for (std::int64_t k = k_min; k <= k_max; ++k) {
      double t = period / static_cast<double>(k);
      if (t > lo * (1.0 + kFloorGuard) && t <= hi * (1.0 + kFloorGuard)) {
        pts.push_back(Breakpoint{TimeQuantity::seconds(t), source, k});
      }
    }
  };
  collect(p.t_f.secs(), BreakpointSource::failure_term);
  collect(p.t_e.secs(), BreakpointSource::latency_term);

  std::sort(pts.begin(), pts.end(), [](const Breakpoint& a, const Breakpoint& b) {
    if (a.t_c.secs() != b.t_c.secs()) return a.t_c.secs() < b.t_c.secs();
    if (a.k != b.k) return a.k < b.k;
    return a.source < b.source;  // failure_term ahead of latency_term
  });

  std::vector<Breakpoint> out;
  for (const Breakpoint& bp : pts) {
    if (!out.empty()) {
      double prev = out.back().t_c.secs(), cur = bp.t_c.secs();
      if (std::abs(cur - prev) <= kFloorGuard * std::max(prev, cur)) {
        if (bp.k < out.back().k) out.back() = bp;
        continue;
      }
    }
    out.push_back(bp);
  }
  return out;
}

Optimum optimize_grid(const ModelParams& p, Objective objective, Domain domain,
                      double step_seconds) {
  require_domain(domain);
  validate_params(p, /*for_optimization=*/true);
  const double lo = domain.lo.secs(), hi = domain.hi.secs();
  double step = step_seconds > 0.0 ? step_seconds : 1e-3 * (hi - lo);
  if (!(step > 0.0) || (hi - lo) / step > kMaxSweepPoints) {
    throw std::domain_error("invalid grid step");
  }
  const double tf = p.t_f.secs(), ts = p.t_s.secs(), tr = p.t_r.secs(), te = p.t_e.secs();

  double best_t = lo;
  double best_v = objective == Objective::lost_time
                      ? lost_time_latency_raw(tf, ts, tr, te, lo)
                      : availability_latency_raw(tf, ts, tr, te, lo);
  for (std::int64_t i = 1;; ++i) {
    double t = lo + static_cast<double>(i) * step;
    if (t - hi > hi * kFloorGuard) break;
    double v = objective == Objective::lost_time
                   ? lost_time_latency_raw(tf, ts, tr, te, t)
                   : availability_latency_raw(tf, ts, tr, te, t);
    if (improves(v, best_v, objective)) {
      best_t = t;
      best_v = v;
    }
  }
  return Optimum{TimeQuantity::seconds(best_t), best_v, objective, Method::grid_scan};
}

Optimum optimize_piecewise(const ModelParams& p, Objective objective, Domain domain) {
  require_domain(domain);
  validate_params(p, /*for_optimization=*/true);

  if (estimate_breakpoints(p, domain) > kMaxSegments) {
    std::cerr << "ckpt: domain spans more than " << kMaxSegments
              << " segments, falling back to grid scan\n";
    return optimize_grid(p, objective, domain);
  }

  const double lo = domain.lo.secs(), hi = domain.hi.secs();
  const double tf = p.t_f.secs(), ts = p.t_s.secs(), tr = p.t_r.secs(), te = p.t_e.secs();

  auto eval = [&](double t) {
    return objective == Objective::lost_time ? lost_time_latency_raw(tf, ts, tr, te, t)
                                             : availability_latency_raw(tf, ts, tr, te, t);
  };

  // Domain endpoints, evaluated directly with the guarded floors.
  double best_t = lo;
  double best_v = eval(lo);
  double v_hi = eval(hi);
  if (improves(v_hi, best_v, objective)) {
    best_t = hi;
    best_v = v_hi;
  }

  // Segment left edges: the domain's lower bound plus every breakpoint
  // strictly inside. The lo edge matters when lo itself sits on a
  // discontinuity, where the attained value at lo differs from the limit
  // just past it.
  std::vector<Breakpoint> bps = breakpoints(p, domain);
  std::vector<double> edges;
  edges.reserve(bps.size() + 1);
  edges.push_back(lo);
  for (const Breakpoint& bp : bps) {
    if (bp.t_c.secs() < hi * (1.0 - kFloorGuard)) edges.push_back(bp.t_c.secs());
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    double edge = edges[i];
    double next = i + 1 < edges.size() ? edges[i + 1] : hi;
    // Probe just past the floor guard band, staying inside the segment.
    double eps = std::max(std::min(0.25 * (next - edge), 1e-11 * edge), 2.5e-12 * edge);
    double probe = edge + eps;
    double m = guarded_floor(tf / probe);
    double n = guarded_floor(te / probe);
    double v = segment_limit(tf, ts, tr, edge, m, n, objective);
    if (improves(v, best_v, objective)) {
      best_t = probe;
      best_v = v;
    }
  }
  return Optimum{TimeQuantity::seconds(best_t), best_v, objective, Method::segment_enumeration};
}

Domain default_domain(const ModelParams& p, std::optional<TimeQuantity> lo,
                      std::optional<TimeQuantity> hi) {
  double d_lo = lo ? lo->secs() : std::max(p.t_s.secs(), 1.0);
  double d_hi = std::min(p.t_f.secs(), hi ? hi->secs() : p.t_f.secs());
  if (lo && hi) d_hi = hi->secs();  // fully explicit domains are taken as-is
  if (!(d_lo > 0.0) || !(d_lo < d_hi)) {
    throw std::domain_error("empty optimization domain after clipping");
  }
  return Domain{TimeQuantity::seconds(d_lo), TimeQuantity::seconds(d_hi)};
}

SweepSeries sweep(const ModelParams& p, SweepModel model, Domain domain, TimeQuantity step) {
  const double lo = domain.lo.secs(), hi = domain.hi.secs();
  if (!(lo > 0.0) || lo > hi) throw std::domain_error("domain must satisfy 0 < lo <= hi");
  if (!(step.secs() > 0.0)) throw std::domain_error("step must be positive");
  if (lo < hi && (hi - lo) / step.secs() > kMaxSweepPoints) {
    throw std::domain_error("step too small for domain");
  }

  SweepSeries series;
  series.params = p;
  series.model = model;
  for (std::int64_t i = 0;; ++i) {
    double t = lo + static_cast<double>(i) * step.secs();
    if (t - hi > hi * kFloorGuard) break;
    TimeQuantity tc = TimeQuantity::seconds(t);
    SweepPoint pt;
    pt.t_c = tc;
    if (model == SweepModel::continuous) {
      pt.lost_time = lost_time(p, tc);
      pt.availability = availability(p, tc);
    } else {
      pt.lost_time = lost_time_latency(p, tc);
      pt.availability = availability_latency(p, tc);
    }
    series.points.push_back(pt);
    if (lo == hi) break;
  }
  return series;
}

void write_sweep_csv(std::ostream& os, const SweepSeries& series) {
  os << "t_c_minutes,lost_time_minutes,availability\n";
  char buf[128];
  for (const SweepPoint& pt : series.points) {
    std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g\n", pt.t_c.mins(), pt.lost_time.mins(),
                  pt.availability);
    os << buf;
  }
}

}  // namespace ckpt
