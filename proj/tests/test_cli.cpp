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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "ckpt/piecewise.hpp"
#include "ckpt/time.hpp"

#ifndef CKPTPLAN_BIN
#error "CKPTPLAN_BIN must point at the ckptplan executable"
#endif

namespace {

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  std::string err_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                         "/ckptplan_cli_stderr.txt";
  std::string cmd = std::string(CKPTPLAN_BIN) + " " + args + " 2>" + err_path;
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.out.append(buf.data(), n);
  }
  int rc = pclose(pipe);
  result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream err(err_path);
  std::stringstream ss;
  ss << err.rdbuf();
  result.err = ss.str();
  return result;
}

// Value of a "key=value" line emitted by the CLI (key anchored at a line start).
double key_value(const std::string& out, const std::string& key) {
  std::string needle = "\n" + key + "=";
  size_t pos = out.find(needle);
  if (pos == std::string::npos && out.rfind(key + "=", 0) == 0) pos = 0;
  REQUIRE(pos != std::string::npos);
  return std::strtod(out.c_str() + pos + needle.size() - (pos == 0 ? 1 : 0), nullptr);
}

std::string temp_file(const std::string& name) {
  return std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/" + name;
}

}  // namespace

TEST_CASE("optimal prints rounded and full-precision optima") {
  RunResult r = run_cli("optimal --tf 1h --ts 1s --tr 4min");
  CHECK(r.status == 0);
  CHECK(r.out.find("T_c = 1.41 min") != std::string::npos);
  CHECK(r.out.find("T_c = 1.48 min") != std::string::npos);
  CHECK(key_value(r.out, "t_c_lost_time_opt_seconds") == doctest::Approx(84.852813742385706));
  CHECK(key_value(r.out, "t_c_availability_opt_seconds") ==
        doctest::Approx(88.641314458421945));
  CHECK(r.out.find("method_lost_time=closed_form") != std::string::npos);
  CHECK(r.out.find("model=continuous") != std::string::npos);
}

TEST_CASE("optimal with detection latency reports both optima just above t_e") {
  RunResult r = run_cli("optimal --tf 1h --ts 1s --tr 4min --te 2min");
  CHECK(r.status == 0);
  CHECK(r.out.find("model=latency") != std::string::npos);
  CHECK(r.out.find("method_lost_time=segment_enumeration") != std::string::npos);
  double lost_tc = key_value(r.out, "t_c_lost_time_opt_seconds");
  double avail_tc = key_value(r.out, "t_c_availability_opt_seconds");
  CHECK(lost_tc / 60.0 > 2.0);
  CHECK(lost_tc / 60.0 <= 2.2);
  CHECK(avail_tc / 60.0 > 2.0);
  CHECK(avail_tc / 60.0 <= 2.2);
}

TEST_CASE("optimal accepts an explicit optimization domain") {
  RunResult r = run_cli("optimal --tf 1h --ts 1s --tr 4min --te 2min "
                        "--from 0.5min --to 10min");
  CHECK(r.status == 0);
  // the latency breakpoint at t_e lies inside [0.5, 10] min, so the
  // optimum matches the default-domain run
  CHECK(key_value(r.out, "t_c_lost_time_opt_seconds") / 60.0 > 2.0);
  CHECK(key_value(r.out, "t_c_lost_time_opt_seconds") / 60.0 <= 2.2);
  CHECK(key_value(r.out, "lost_time_opt_seconds") == doctest::Approx(329.0));
}

TEST_CASE("optimal respects --unit and --objective") {
  RunResult r = run_cli("optimal --tf 1h --ts 1s --tr 4min --unit s --objective lost_time");
  CHECK(r.status == 0);
  CHECK(r.out.find("T_c = 84.85 s") != std::string::npos);
  CHECK(r.out.find("availability") == std::string::npos);
}

TEST_CASE("table reproduces the default rows") {
  RunResult r = run_cli("table");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "tf_hours,ts_secs,tr_mins,lost_time_optimal_mins,availability_optimal_mins\n"
        "1,1,4,1.41,1.48\n"
        "1,1,16,1.41,1.61\n"
        "1,30,4,7.75,8.52\n"
        "1,30,16,7.75,9.23\n"
        "2,1,4,2.00,2.05\n"
        "2,1,16,2.00,2.15\n"
        "2,30,4,10.95,11.65\n"
        "2,30,16,10.95,12.17\n");
}

TEST_CASE("table reads a custom rows file and reports bad lines") {
  std::string rows = temp_file("ckptplan_rows.csv");
  {
    std::ofstream f(rows);
    f << "tf_hours,ts_secs,tr_mins\n1,30,16\n";
  }
  RunResult ok = run_cli("table --rows " + rows);
  CHECK(ok.status == 0);
  CHECK(ok.out.find("1,30,16,7.75,9.23\n") != std::string::npos);

  {
    std::ofstream f(rows);
    f << "tf_hours,ts_secs,tr_mins\n1,30\n";
  }
  RunResult bad = run_cli("table --rows " + rows);
  CHECK(bad.status == 1);
  CHECK(bad.err.find("line 2") != std::string::npos);
}

TEST_CASE("sweep emits the pinned CSV schema") {
  RunResult r = run_cli("sweep --tf 1h --ts 1s --tr 4min --te 1min "
                        "--from 0.5min --to 10min --step 0.01min");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("t_c_minutes,lost_time_minutes,availability\n", 0) == 0);
  // header + 951 samples
  size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 952);

  RunResult single = run_cli("sweep --tf 1h --ts 1s --tr 4min --from 2min --to 2min --step 1s");
  size_t single_lines = 0;
  for (char c : single.out) single_lines += c == '\n';
  CHECK(single_lines == 2);
}

TEST_CASE("sweep rows re-evaluate to the same printed values") {
  RunResult r = run_cli("sweep --tf 1h --ts 1s --tr 4min --te 1min "
                        "--from 1min --to 2min --step 6s");
  CHECK(r.status == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);  // header
  ckpt::ModelParams p{ckpt::TimeQuantity::hours(1), ckpt::TimeQuantity::seconds(1),
                      ckpt::TimeQuantity::minutes(4), ckpt::TimeQuantity::minutes(1)};
  int i = 0;
  while (std::getline(lines, line)) {
    ckpt::TimeQuantity tc = ckpt::TimeQuantity::seconds(60.0 + 6.0 * i);
    char expected[128];
    std::snprintf(expected, sizeof(expected), "%.9g,%.9g,%.9g", tc.mins(),
                  ckpt::lost_time_latency(p, tc).mins(),
                  ckpt::availability_latency(p, tc));
    CHECK(line == expected);
    ++i;
  }
  CHECK(i == 11);
}

TEST_CASE("optimal reproduces the second reference row") {
  RunResult r = run_cli("optimal --tf 2h --ts 30s --tr 16min");
  CHECK(r.status == 0);
  CHECK(r.out.find("T_c = 10.95 min") != std::string::npos);
  CHECK(r.out.find("T_c = 12.17 min") != std::string::npos);
}

TEST_CASE("sweep --out writes the same bytes to a file") {
  std::string out_path = temp_file("ckptplan_sweep.csv");
  RunResult direct = run_cli("sweep --tf 1h --ts 1s --tr 4min --from 1min --to 2min --step 6s");
  RunResult filed = run_cli("sweep --tf 1h --ts 1s --tr 4min --from 1min --to 2min --step 6s "
                            "--out " + out_path);
  CHECK(filed.status == 0);
  CHECK(filed.out.empty());
  std::ifstream f(out_path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == direct.out);
}

TEST_CASE("simulate is byte-identical for a fixed seed") {
  std::string cmd = "simulate --tf 1h --ts 1s --tr 4min --tc 1.414min --cycles 20000 --seed 0";
  RunResult a = run_cli(cmd);
  RunResult b = run_cli(cmd);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("mean_lost_time_per_cycle_seconds=") != std::string::npos);
  CHECK(a.out.find("quantity,simulated,model,abs_error,rel_error\n") != std::string::npos);

  RunResult other = run_cli("simulate --tf 1h --ts 1s --tr 4min --tc 1.414min "
                            "--cycles 20000 --seed 1");
  CHECK(other.out != a.out);
}

TEST_CASE("simulate --retention exposes the corrupt-snapshot corner case") {
  // depth 1 with a long detection latency: the only retained snapshot was
  // almost always saved after the fault, so nearly every cycle restarts
  // from origin; the default depth keeps restarts to fault-before-first-save
  RunResult shallow = run_cli("simulate --tf 1h --ts 1s --tr 4min --te 5min --tc 1min "
                              "--cycles 2000 --seed 3 --retention 1");
  RunResult deep = run_cli("simulate --tf 1h --ts 1s --tr 4min --te 5min --tc 1min "
                           "--cycles 2000 --seed 3");
  CHECK(shallow.status == 0);
  CHECK(deep.out.find("retention_depth=7") != std::string::npos);
  double shallow_restarts = key_value(shallow.out, "restarts_from_origin");
  double deep_restarts = key_value(deep.out, "restarts_from_origin");
  CHECK(shallow_restarts > 1800);
  CHECK(deep_restarts < 100);
}

TEST_CASE("sweep --model continuous ignores the detection latency") {
  RunResult r = run_cli("sweep --tf 1h --ts 1s --tr 4min --te 2min --model continuous "
                        "--from 2min --to 2min --step 1s");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "t_c_minutes,lost_time_minutes,availability\n"
        "2,5.5,0.915384615\n");
}

TEST_CASE("exit statuses distinguish validation errors") {
  CHECK(run_cli("optimal --tf 0h --ts 1s").status == 1);
  CHECK(run_cli("optimal --ts 1s").status == 1);          // missing required --tf
  CHECK(run_cli("optimal --tf 1h --ts 1s --bogus").status == 1);
  CHECK(run_cli("nonsense").status == 1);
  CHECK(run_cli("").status == 1);                         // a subcommand is required
  CHECK(run_cli("simulate --tf 1h --ts 30s --tr 0 --tc 10s").status == 1);  // t_c <= t_s
  CHECK(run_cli("sweep --tf 1h --ts 1s --tr 0 --from 5min --to 2min --step 1s").status == 1);
  CHECK(run_cli("--help").status == 0);
  CHECK(run_cli("optimal --help").status == 0);
}

TEST_CASE("optimal validation failures mention the field") {
  RunResult r = run_cli("optimal --tf 1h --ts 0s");
  CHECK(r.status == 1);
  CHECK(r.err.find("t_s") != std::string::npos);
}
