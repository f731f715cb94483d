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

#include "ckpt/time.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace ckpt {

namespace {

double unit_factor(TimeUnit unit) {
  switch (unit) {
    case TimeUnit::seconds: return 1.0;
    case TimeUnit::minutes: return 60.0;
    case TimeUnit::hours: return 3600.0;
  }
  throw std::logic_error("unreachable time unit");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double suffix_factor(std::string_view suffix, std::string_view whole) {
  if (suffix.empty() || suffix == "s" || suffix == "sec") return 1.0;
  if (suffix == "m" || suffix == "min") return 60.0;
  if (suffix == "h" || suffix == "hr") return 3600.0;
  throw std::invalid_argument("unknown unit suffix '" + std::string(suffix) +
                              "' in duration '" + std::string(whole) + "'");
}

}  // namespace

TimeQuantity TimeQuantity::seconds(double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw std::invalid_argument("time quantity must be finite and non-negative");
  }
  return TimeQuantity(value);
}

TimeQuantity TimeQuantity::minutes(double value) { return seconds(value * 60.0); }
TimeQuantity TimeQuantity::hours(double value) { return seconds(value * 3600.0); }

double TimeQuantity::in(TimeUnit unit) const { return seconds_ / unit_factor(unit); }

const char* unit_suffix(TimeUnit unit) {
  switch (unit) {
    case TimeUnit::seconds: return "s";
    case TimeUnit::minutes: return "min";
    case TimeUnit::hours: return "h";
  }
  throw std::logic_error("unreachable time unit");
}

TimeUnit parse_unit(std::string_view text) {
  std::string_view t = trim(text);
  if (t == "s" || t == "sec") return TimeUnit::seconds;
  if (t == "m" || t == "min") return TimeUnit::minutes;
  if (t == "h" || t == "hr") return TimeUnit::hours;
  throw std::invalid_argument("unknown time unit '" + std::string(text) + "'");
}

TimeQuantity parse_duration(std::string_view text) {
  std::string_view body = trim(text);
  if (body.empty()) {
    throw std::invalid_argument("empty duration");
  }
  double magnitude = 0.0;
  const char* first = body.data();
  const char* last = body.data() + body.size();
  auto [ptr, ec] = std::from_chars(first, last, magnitude);
  if (ec == std::errc::invalid_argument || ptr == first) {
    throw std::invalid_argument("malformed duration '" + std::string(text) + "'");
  }
  if (ec == std::errc::result_out_of_range || !std::isfinite(magnitude)) {
    throw std::invalid_argument("duration out of range '" + std::string(text) + "'");
  }
  std::string_view suffix = trim(std::string_view(ptr, static_cast<size_t>(last - ptr)));
  double factor = suffix_factor(suffix, text);
  if (magnitude < 0.0) {
    throw std::invalid_argument("negative duration '" + std::string(text) + "'");
  }
  return TimeQuantity::seconds(magnitude * factor);
}

std::string format_duration(TimeQuantity t, TimeUnit unit, int sig_digits) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", sig_digits, t.in(unit));
  return std::string(buf) + unit_suffix(unit);
}

std::string format_duration(TimeQuantity t, TimeUnit unit) {
  const double secs = t.secs();
  for (int digits = 6; digits <= 17; ++digits) {
    std::string out = format_duration(t, unit, digits);
    double back = parse_duration(out).secs();
    double err = std::abs(back - secs);
    if (err <= 1e-9 * std::abs(secs) || (secs == 0.0 && back == 0.0)) {
      return out;
    }
  }
  return format_duration(t, unit, 17);
}

ModelParams validate_params(const ModelParams& p, bool for_optimization) {
  std::string errors;
  auto add = [&errors](const char* msg) {
    if (!errors.empty()) errors += "; ";
    errors += msg;
  };
  if (!(p.t_f.secs() > 0.0)) add("t_f must be positive");
  if (for_optimization && !(p.t_s.secs() > 0.0)) add("t_s must be positive for optimization");
  // t_s >= 0, t_r >= 0 and t_e >= 0 are enforced by TimeQuantity itself.
  if (!errors.empty()) throw std::invalid_argument(errors);
  return p;
}

}  // namespace ckpt
