// Copyright 2026 The DTT Scheduler Authors
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

#pragma once

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "dtt/pipeline.hpp"
#include "dtt/routing.hpp"

namespace dtt::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(DTT_FIXTURE_DIR) + "/" + name;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string read_fixture(const std::string& name) { return read_text(fixture_path(name)); }

inline std::shared_ptr<const HardwareGraph> hardware(const std::string& name) {
  return std::make_shared<const HardwareGraph>(parse_hardware(read_fixture(name)));
}

/// Hardware, workload and seeds of a fixture family ("quad_pe", "hetero", ...).
struct Scenario {
  std::shared_ptr<const HardwareGraph> graph;
  std::vector<Operation> ops;
  InitialMemory memory;
};

inline Scenario scenario(const std::string& prefix, const std::string& hw = "") {
  Scenario s;
  s.graph = hardware(hw.empty() ? prefix + "_hardware.json" : hw);
  s.ops = parse_workload(read_fixture(prefix + "_workload.json"));
  s.memory = parse_initial_memory(read_fixture(prefix + "_seeds.json"));
  return s;
}

inline PipelineResult run(const Scenario& s, const PipelineConfig& config = {}) {
  return run_pipeline(s.graph, s.ops, s.memory, config);
}

struct GoldenRow {
  DatumId datum;
  std::string src;
  Cycle start;
  std::string dst;
  Cycle end;
};

inline std::vector<GoldenRow> golden_rows(const std::string& csv_name) {
  std::vector<GoldenRow> rows;
  std::istringstream in(read_fixture(csv_name));
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string f[5];
    for (auto& x : f) std::getline(ls, x, ',');
    rows.push_back({std::stoll(f[0]), f[1], std::stoll(f[2]), f[3], std::stoll(f[4])});
  }
  return rows;
}

struct CommandResult {
  int status = -1;
  std::string out;
};

/// Runs the dtt CLI with `args`; stdout is captured, stderr discarded.
inline CommandResult run_cli(const std::string& args) {
  std::string cmd = std::string(DTT_CLI_PATH) + " " + args + " 2>/dev/null";
  CommandResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace dtt::testing
