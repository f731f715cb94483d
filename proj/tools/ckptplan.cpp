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

// ckptplan: compute optimal checkpoint intervals, reproduce the reference
// table, emit sweep CSVs and validate the analytic models against the
// Monte Carlo simulator.
//
// Exit status: 0 success, 1 validation/parse error, 2 internal error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ckpt/analytic.hpp"
#include "ckpt/piecewise.hpp"
#include "ckpt/simulator.hpp"
#include "ckpt/time.hpp"

namespace {

using ckpt::Domain;
using ckpt::ModelParams;
using ckpt::Objective;
using ckpt::Optimum;
using ckpt::TimeQuantity;
using ckpt::TimeUnit;

// Round half away from zero to 2 decimals and format, e.g. 1.477 -> "1.48".
std::string fixed2(double x) {
  long long cents = std::llround(std::abs(x) * 100.0);
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%s%lld.%02lld", x < 0 ? "-" : "", cents / 100, cents % 100);
  return buf;
}

std::string full(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string sig9(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

const char* method_name(ckpt::Method m) {
  switch (m) {
    case ckpt::Method::closed_form: return "closed_form";
    case ckpt::Method::segment_enumeration: return "segment_enumeration";
    case ckpt::Method::grid_scan: return "grid_scan";
  }
  return "?";
}

struct CommonFlags {
  std::string tf, ts, tr = "0", te = "0";
  std::string unit = "min";
  std::string out;
};

ModelParams make_params(const CommonFlags& f) {
  return ModelParams{ckpt::parse_duration(f.tf), ckpt::parse_duration(f.ts),
                     ckpt::parse_duration(f.tr), ckpt::parse_duration(f.te)};
}

// Resolves --out: returns the stream to write to, keeping the file alive.
std::ostream& open_output(const std::string& out, std::ofstream& file) {
  if (out.empty()) return std::cout;
  file.open(out);
  if (!file) throw std::invalid_argument("cannot open output file '" + out + "'");
  return file;
}

std::string pick_model(const std::string& model_flag, const ModelParams& p) {
  if (!model_flag.empty()) return model_flag;
  return p.t_e.secs() > 0.0 ? "latency" : "continuous";
}

// ---------------------------------------------------------------- optimal

struct OptimalFlags {
  CommonFlags common;
  std::string model;
  std::string objective = "both";
  std::string from, to;
};

void cmd_optimal(const OptimalFlags& f) {
  ModelParams p = ckpt::validate_params(make_params(f.common), /*for_optimization=*/true);
  TimeUnit unit = ckpt::parse_unit(f.common.unit);
  std::string model = pick_model(f.model, p);

  Optimum lost, avail;
  if (model == "continuous") {
    lost = ckpt::optimal_tc_lost_time(p);
    avail = ckpt::optimal_tc_availability(p);
  } else if (model == "latency") {
    std::optional<TimeQuantity> lo, hi;
    if (!f.from.empty()) lo = ckpt::parse_duration(f.from);
    if (!f.to.empty()) hi = ckpt::parse_duration(f.to);
    Domain domain = ckpt::default_domain(p, lo, hi);
    lost = ckpt::optimize_piecewise(p, Objective::lost_time, domain);
    avail = ckpt::optimize_piecewise(p, Objective::availability, domain);
  } else {
    throw std::invalid_argument("unknown model '" + model + "'");
  }

  std::ofstream file;
  std::ostream& os = open_output(f.common.out, file);
  const char* sfx = ckpt::unit_suffix(unit);
  bool want_lost = f.objective == "both" || f.objective == "lost_time";
  bool want_avail = f.objective == "both" || f.objective == "availability";
  if (!want_lost && !want_avail) {
    throw std::invalid_argument("unknown objective '" + f.objective + "'");
  }

  if (want_lost) {
    os << "lost-time optimal:    T_c = " << fixed2(lost.t_c_opt.in(unit)) << " " << sfx
       << "   (lost time = " << fixed2(TimeQuantity::seconds(lost.objective_value).in(unit))
       << " " << sfx << ")\n";
  }
  if (want_avail) {
    os << "availability optimal: T_c = " << fixed2(avail.t_c_opt.in(unit)) << " " << sfx
       << "   (availability = " << fixed2(avail.objective_value) << ")\n";
  }
  if (want_lost) {
    os << "t_c_lost_time_opt_seconds=" << full(lost.t_c_opt.secs()) << "\n"
       << "lost_time_opt_seconds=" << full(lost.objective_value) << "\n"
       << "method_lost_time=" << method_name(lost.method) << "\n";
  }
  if (want_avail) {
    os << "t_c_availability_opt_seconds=" << full(avail.t_c_opt.secs()) << "\n"
       << "availability_opt=" << full(avail.objective_value) << "\n"
       << "method_availability=" << method_name(avail.method) << "\n";
  }
  os << "model=" << model << "\n";
}

// ------------------------------------------------------------------ table

struct TableRow {
  double tf_hours;
  double ts_secs;
  double tr_mins;
};

const std::vector<TableRow> kDefaultRows = {
    {1, 1, 4}, {1, 1, 16}, {1, 30, 4}, {1, 30, 16},
    {2, 1, 4}, {2, 1, 16}, {2, 30, 4}, {2, 30, 16},
};

std::vector<TableRow> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open rows file '" + path + "'");
  std::string line;
  int lineno = 0;
  std::vector<TableRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1) {
      if (line != "tf_hours,ts_secs,tr_mins") {
        throw std::invalid_argument("rows file line 1: expected header "
                                    "'tf_hours,ts_secs,tr_mins', got '" + line + "'");
      }
      continue;
    }
    TableRow row{};
    char extra = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &row.tf_hours, &row.ts_secs, &row.tr_mins,
                    &extra) != 3) {
      throw std::invalid_argument("rows file line " + std::to_string(lineno) +
                                  ": expected 'tf_hours,ts_secs,tr_mins' values, got '" +
                                  line + "'");
    }
    rows.push_back(row);
  }
  if (rows.empty()) {
    throw std::invalid_argument("rows file '" + path + "' contains no data rows");
  }
  return rows;
}

struct TableFlags {
  std::string rows;
  std::string out;
};

void cmd_table(const TableFlags& f) {
  std::vector<TableRow> rows = f.rows.empty() ? kDefaultRows : read_rows(f.rows);
  std::ofstream file;
  std::ostream& os = open_output(f.out, file);
  os << "tf_hours,ts_secs,tr_mins,lost_time_optimal_mins,availability_optimal_mins\n";
  char buf[64];
  for (const TableRow& row : rows) {
    ModelParams p{TimeQuantity::hours(row.tf_hours), TimeQuantity::seconds(row.ts_secs),
                  TimeQuantity::minutes(row.tr_mins), TimeQuantity::seconds(0)};
    Optimum lost = ckpt::optimal_tc_lost_time(p);
    Optimum avail = ckpt::optimal_tc_availability(p);
    std::snprintf(buf, sizeof(buf), "%g,%g,%g,", row.tf_hours, row.ts_secs, row.tr_mins);
    os << buf << fixed2(lost.t_c_opt.mins()) << "," << fixed2(avail.t_c_opt.mins()) << "\n";
  }
}

// ------------------------------------------------------------------ sweep

struct SweepFlags {
  CommonFlags common;
  std::string model;
  std::string from, to, step;
};

void cmd_sweep(const SweepFlags& f) {
  ModelParams p = ckpt::validate_params(make_params(f.common), /*for_optimization=*/false);
  std::string model = pick_model(f.model, p);
  ckpt::SweepModel sweep_model;
  if (model == "continuous") {
    sweep_model = ckpt::SweepModel::continuous;
  } else if (model == "latency") {
    sweep_model = ckpt::SweepModel::with_latency;
  } else {
    throw std::invalid_argument("unknown model '" + model + "'");
  }
  Domain domain{ckpt::parse_duration(f.from), ckpt::parse_duration(f.to)};
  ckpt::SweepSeries series = ckpt::sweep(p, sweep_model, domain, ckpt::parse_duration(f.step));
  std::ofstream file;
  std::ostream& os = open_output(f.common.out, file);
  ckpt::write_sweep_csv(os, series);
}

// --------------------------------------------------------------- simulate

struct SimulateFlags {
  CommonFlags common;
  std::string tc;
  std::int64_t cycles = 100000;
  std::uint64_t seed = 0;
  std::int64_t retention = 0;  // 0: derive the default from t_e and t_c
};

void cmd_simulate(const SimulateFlags& f) {
  ModelParams p = ckpt::validate_params(make_params(f.common), /*for_optimization=*/false);
  ckpt::SimConfig config;
  config.params = p;
  config.t_c = ckpt::parse_duration(f.tc);
  config.cycles = f.cycles;
  config.seed = f.seed;
  config.retention_depth =
      f.retention > 0 ? f.retention : ckpt::default_retention_depth(p, config.t_c);
  ckpt::validate_config(config);

  ckpt::ModelComparison cmp = ckpt::compare_with_model(config);
  const ckpt::SimResult& sim = cmp.simulated;
  double rel_lost = cmp.model_lost_time.secs() != 0.0
                        ? cmp.abs_error_lost_time.secs() / std::abs(cmp.model_lost_time.secs())
                        : 0.0;
  double rel_avail = cmp.model_availability != 0.0
                         ? cmp.abs_error_availability / std::abs(cmp.model_availability)
                         : 0.0;

  std::ofstream file;
  std::ostream& os = open_output(f.common.out, file);
  os << "cycles=" << sim.cycles << "\n"
     << "seed=" << config.seed << "\n"
     << "retention_depth=" << config.retention_depth << "\n"
     << "t_c_seconds=" << full(config.t_c.secs()) << "\n"
     << "mean_lost_time_per_cycle_seconds=" << full(sim.mean_lost_time_per_cycle.secs()) << "\n"
     << "stderr_lost_time_seconds=" << full(sim.stderr_lost_time.secs()) << "\n"
     << "availability_estimate=" << full(sim.availability_estimate) << "\n"
     << "stderr_availability=" << full(sim.stderr_availability) << "\n"
     << "restarts_from_origin=" << sim.restarts_from_origin << "\n"
     << "model=" << (p.t_e.secs() > 0.0 ? "latency" : "continuous") << "\n"
     << "model_lost_time_seconds=" << full(cmp.model_lost_time.secs()) << "\n"
     << "model_availability=" << full(cmp.model_availability) << "\n"
     << "abs_error_lost_time_seconds=" << full(cmp.abs_error_lost_time.secs()) << "\n"
     << "rel_error_lost_time=" << full(rel_lost) << "\n"
     << "abs_error_availability=" << full(cmp.abs_error_availability) << "\n"
     << "rel_error_availability=" << full(rel_avail) << "\n";
  os << "quantity,simulated,model,abs_error,rel_error\n"
     << "lost_time_seconds," << sig9(sim.mean_lost_time_per_cycle.secs()) << ","
     << sig9(cmp.model_lost_time.secs()) << "," << sig9(cmp.abs_error_lost_time.secs()) << ","
     << sig9(rel_lost) << "\n"
     << "availability," << sig9(sim.availability_estimate) << ","
     << sig9(cmp.model_availability) << "," << sig9(cmp.abs_error_availability) << ","
     << sig9(rel_avail) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"checkpoint interval planning toolkit"};
  app.require_subcommand(1);

  OptimalFlags opt;
  CLI::App* optimal = app.add_subcommand("optimal", "compute optimal checkpoint intervals");
  optimal->add_option("--tf", opt.common.tf, "mean time to failure")->required();
  optimal->add_option("--ts", opt.common.ts, "exposed checkpoint save time")->required();
  optimal->add_option("--tr", opt.common.tr, "checkpoint recovery time");
  optimal->add_option("--te", opt.common.te, "error detection latency");
  optimal->add_option("--model", opt.model, "continuous|latency (default by --te)");
  optimal->add_option("--objective", opt.objective, "lost_time|availability|both");
  optimal->add_option("--from", opt.from, "optimization domain lower bound");
  optimal->add_option("--to", opt.to, "optimization domain upper bound");
  optimal->add_option("--unit", opt.common.unit, "output unit: s|min|h");
  optimal->add_option("--out", opt.common.out, "write output to file");

  TableFlags tab;
  CLI::App* table = app.add_subcommand("table", "optimal intervals for parameter rows (CSV)");
  table->add_option("--rows", tab.rows, "CSV file with header tf_hours,ts_secs,tr_mins");
  table->add_option("--out", tab.out, "write output to file");

  SweepFlags swp;
  CLI::App* sweep = app.add_subcommand("sweep", "sample the objective curves (CSV)");
  sweep->add_option("--tf", swp.common.tf, "mean time to failure")->required();
  sweep->add_option("--ts", swp.common.ts, "exposed checkpoint save time")->required();
  sweep->add_option("--tr", swp.common.tr, "checkpoint recovery time")->required();
  sweep->add_option("--te", swp.common.te, "error detection latency");
  sweep->add_option("--from", swp.from, "first sampled t_c")->required();
  sweep->add_option("--to", swp.to, "last sampled t_c")->required();
  sweep->add_option("--step", swp.step, "sampling step")->required();
  sweep->add_option("--model", swp.model, "continuous|latency (default by --te)");
  sweep->add_option("--out", swp.common.out, "write output to file");

  SimulateFlags sml;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo validation vs the model");
  simulate->add_option("--tf", sml.common.tf, "mean time to failure")->required();
  simulate->add_option("--ts", sml.common.ts, "exposed checkpoint save time")->required();
  simulate->add_option("--tr", sml.common.tr, "checkpoint recovery time")->required();
  simulate->add_option("--tc", sml.tc, "checkpoint interval to simulate")->required();
  simulate->add_option("--te", sml.common.te, "error detection latency");
  simulate->add_option("--cycles", sml.cycles, "failure cycles to simulate");
  simulate->add_option("--seed", sml.seed, "random seed");
  simulate->add_option("--retention", sml.retention, "checkpoint snapshots kept");
  simulate->add_option("--out", sml.common.out, "write output to file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(optimal)) cmd_optimal(opt);
    if (app.got_subcommand(table)) cmd_table(tab);
    if (app.got_subcommand(sweep)) cmd_sweep(swp);
    if (app.got_subcommand(simulate)) cmd_simulate(sml);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
