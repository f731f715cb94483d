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

#ifndef CKPT_TIME_HPP
#define CKPT_TIME_HPP

#include <compare>
#include <string>
#include <string_view>

namespace ckpt {

enum class TimeUnit { seconds, minutes, hours };

/// A non-negative duration, stored canonically in seconds.
///
/// Every model quantity in this library (failure interarrival time,
/// checkpoint save time, recovery time, detection latency, checkpoint
/// interval) is one of these. All equations are evaluated in seconds;
/// minutes and hours exist only at I/O boundaries.
class TimeQuantity {
 public:
  constexpr TimeQuantity() = default;

  static TimeQuantity seconds(double value);
  static TimeQuantity minutes(double value);
  static TimeQuantity hours(double value);

  constexpr double secs() const { return seconds_; }
  constexpr double mins() const { return seconds_ / 60.0; }
  constexpr double hrs() const { return seconds_ / 3600.0; }
  double in(TimeUnit unit) const;

  auto operator<=>(const TimeQuantity&) const = default;

 private:
  explicit constexpr TimeQuantity(double seconds) : seconds_(seconds) {}
  double seconds_ = 0.0;
};

/// Parses a duration such as "1h", "4min", "90sec" or "1.41" (bare numbers
/// are seconds). Recognized suffixes: s, sec, m, min, h, hr. Whitespace
/// around the number and before the suffix is ignored.
///
/// Throws std::invalid_argument naming the offending token for malformed
/// numbers, unknown suffixes and negative values.
TimeQuantity parse_duration(std::string_view text);

/// Formats a duration in the requested unit with a unit suffix.
///
/// Starts at 6 significant digits and adds digits only when needed so that
/// parse_duration(format_duration(x, unit)) recovers x within 1e-9
/// relative. Human-scale values ("1h", "240s", "1.41min") stay short.
std::string format_duration(TimeQuantity t, TimeUnit unit);

/// Fixed-precision variant used for tabular output.
std::string format_duration(TimeQuantity t, TimeUnit unit, int sig_digits);

const char* unit_suffix(TimeUnit unit);

/// Parses "s", "min", "h" (and the parse_duration aliases) into a unit.
TimeUnit parse_unit(std::string_view text);

/// The four model times shared by every model in this library.
struct ModelParams {
  TimeQuantity t_f;  ///< mean time to failure
  TimeQuantity t_s;  ///< exposed checkpoint save time
  TimeQuantity t_r;  ///< checkpoint recovery time
  TimeQuantity t_e;  ///< error detection latency
};

/// Checks the ModelParams invariants and returns the params unchanged.
///
/// t_f must be strictly positive. When for_optimization is set t_s must be
/// strictly positive as well (the closed-form optima degenerate to zero
/// otherwise); evaluation only needs t_s >= 0, which the type guarantees.
/// Throws std::invalid_argument naming every violated field.
ModelParams validate_params(const ModelParams& p, bool for_optimization);

}  // namespace ckpt

#endif  // CKPT_TIME_HPP
