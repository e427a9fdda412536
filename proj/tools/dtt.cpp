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

// dtt: schedule, compare, verify, compress and reconstruct accelerator
// schedules from the command line.
//
// Exit status: 0 success, 1 scheduling/verification/round-trip failure,
// 2 usage or input error.

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dtt/pipeline.hpp"
#include "dtt/routing.hpp"

namespace {

using namespace dtt;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

// Bad input files: parse or validation problems.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

template <typename F>
auto load(const std::string& path, F parse) {
  try {
    return parse(read_file(path));
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::shared_ptr<const HardwareGraph> load_hardware(const std::string& path) {
  return std::make_shared<const HardwareGraph>(load(path, parse_hardware));
}

struct RunConfig {
  std::string hardware;
  std::string workload;
  std::string seeds;
  Cycle horizon = 0;
  double wait_epsilon = 0;
  int stride = 4;
  Cycle control_latency = 0;
  Cycle slack = 0;
  std::string format = "csv";
  std::string output;
  std::string out_dir;
};

PipelineConfig pipeline_config(const RunConfig& rc) {
  PipelineConfig pc;
  if (rc.horizon > 0) pc.horizon = rc.horizon;
  if (rc.wait_epsilon > 0) pc.wait_epsilon = cost_from_decimal(rc.wait_epsilon);
  return pc;
}

int cmd_schedule(const RunConfig& rc) {
  auto graph = load_hardware(rc.hardware);
  auto ops = load(rc.workload, parse_workload);
  InitialMemory memory;
  if (!rc.seeds.empty()) memory = load(rc.seeds, parse_initial_memory);
  auto result = run_pipeline(graph, ops, memory, pipeline_config(rc));
  const auto& st = result.state;

  if (!rc.out_dir.empty()) {
    fs::create_directories(rc.out_dir);
    auto at = [&](const std::string& f) { return (fs::path(rc.out_dir) / f).string(); };
    write_output(at("schedule.json"), serialize_schedule(document_of(st), &result.stats));
    write_output(at("movements.csv"), movements_to_csv(st.movements()));
    write_output(at("placements.csv"), placements_to_csv(result.placements, ops, *graph));
    write_output(at("placements.json"), placements_to_json(result.placements, ops, *graph));
    write_output(at("stats.json"), stats_to_json(result.stats));
    write_output(at("gantt.txt"), render_gantt(st, result.stats.makespan));
  }

  std::string primary;
  if (rc.format == "json") {
    primary = serialize_schedule(document_of(st), &result.stats);
  } else if (rc.format == "text") {
    primary = placements_to_csv(result.placements, ops, *graph) + "\n" +
              movements_to_text(st.movements()) + "\n" + stats_to_text(result.stats) + "\n" +
              render_gantt(st, result.stats.makespan);
  } else {
    primary = movements_to_csv(st.movements());
  }
  write_output(rc.output, primary);
  return kOk;
}

struct Side {
  std::optional<PipelineResult> result;
  std::string error;
  std::set<std::string> wires;
};

Side run_side(const std::string& hw, const std::vector<Operation>& ops, const InitialMemory& mem,
              const PipelineConfig& pc) {
  Side s;
  auto graph = load_hardware(hw);
  for (const auto& w : graph->wires()) s.wires.insert(w.name);
  try {
    s.result = run_pipeline(graph, ops, mem, pc);
  } catch (const Error& e) {
    s.error = e.what();
  }
  return s;
}

int cmd_compare(const RunConfig& a, const std::string& hardware_b) {
  auto ops = load(a.workload, parse_workload);
  InitialMemory memory;
  if (!a.seeds.empty()) memory = load(a.seeds, parse_initial_memory);
  auto pc = pipeline_config(a);
  auto fa = std::async(std::launch::async, run_side, a.hardware, std::cref(ops),
                       std::cref(memory), std::cref(pc));
  auto fb = std::async(std::launch::async, run_side, hardware_b, std::cref(ops),
                       std::cref(memory), std::cref(pc));
  Side sa = fa.get();
  Side sb = fb.get();

  nlohmann::ordered_json j;
  auto side_json = [](const Side& s, const std::string& path) {
    nlohmann::ordered_json o;
    o["hardware"] = path;
    if (s.result) {
      o["ok"] = true;
      o["total_energy"] = s.result->stats.total_energy;
      o["makespan"] = s.result->stats.makespan;
    } else {
      o["ok"] = false;
      o["error"] = s.error;
    }
    return o;
  };
  j["a"] = side_json(sa, a.hardware);
  j["b"] = side_json(sb, hardware_b);
  if (sa.result && sb.result) {
    const auto& x = sa.result->stats;
    const auto& y = sb.result->stats;
    j["delta_energy"] = y.total_energy - x.total_energy;
    j["delta_makespan"] = y.makespan - x.makespan;
    nlohmann::ordered_json only = nlohmann::ordered_json::object();
    for (const auto& w : sa.wires) {
      if (!sb.wires.contains(w)) only[w] = {{"side", "a"}, {"utilization", x.per_wire_utilization.at(w)}};
    }
    for (const auto& w : sb.wires) {
      if (!sa.wires.contains(w)) only[w] = {{"side", "b"}, {"utilization", y.per_wire_utilization.at(w)}};
    }
    j["exclusive_wire_utilization"] = std::move(only);
  }

  std::string out;
  if (a.format == "json") {
    out = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    auto line = [&](const char* label, const Side& s) {
      os << label << ": ";
      if (s.result) {
        os << "energy " << s.result->stats.total_energy << ", makespan " << s.result->stats.makespan
           << "\n";
      } else {
        os << "infeasible: " << s.error << "\n";
      }
    };
    line("a", sa);
    line("b", sb);
    if (j.contains("delta_makespan")) {
      os << "delta_energy (b - a): " << j["delta_energy"].get<double>() << "\n";
      os << "delta_makespan (b - a): " << j["delta_makespan"].get<Cycle>() << "\n";
      for (const auto& [w, v] : j["exclusive_wire_utilization"].items()) {
        os << "wire " << w << " (only in " << v["side"].get<std::string>()
           << ") utilization: " << v["utilization"].get<double>() << "\n";
      }
    }
    out = os.str();
  }
  write_output(a.output, out);
  return sa.result && sb.result ? kOk : kFailure;
}

// Movements, placements and actors referenced by the schedule must exist.
std::vector<std::string> hardware_mismatches(const ScheduleDocument& doc, const HardwareGraph& g) {
  std::vector<std::string> out;
  for (const auto& m : doc.movements) {
    if (!g.find_wire(m.wire)) out.push_back("unknown wire " + m.wire);
    if (!g.find_node(m.src)) out.push_back("unknown node " + m.src);
    if (!g.find_node(m.dst)) out.push_back("unknown node " + m.dst);
  }
  for (const auto& p : doc.placements) {
    if (!g.find_actor(p.actor)) out.push_back("unknown actor " + p.actor);
  }
  for (const auto& f : doc.memory) {
    if (!g.find_node(f.node)) out.push_back("unknown node " + f.node);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int cmd_verify(const RunConfig& rc, const std::string& schedule_path) {
  auto graph = load_hardware(rc.hardware);
  auto doc = load(schedule_path, parse_schedule);
  std::vector<Operation> ops;
  if (!rc.workload.empty()) ops = load(rc.workload, parse_workload);
  if (auto bad = hardware_mismatches(doc, *graph); !bad.empty()) {
    nlohmann::ordered_json j;
    j["ok"] = false;
    j["error"] = "schedule does not match hardware";
    j["mismatches"] = bad;
    write_output(rc.output, j.dump(2) + "\n");
    return kFailure;
  }
  for (const auto& p : doc.placements) {
    if (p.op_index >= ops.size()) {
      throw InputError("placement refers to operation " + std::to_string(p.op_index) +
                       "; pass the matching --workload");
    }
  }
  SimInputs in;
  in.placements = doc.placements;
  in.workload = ops;
  in.seeds = doc.memory;
  if (!rc.seeds.empty()) in.seeds = load(rc.seeds, parse_initial_memory).facts;
  in.reductions = doc.reductions;
  in.sizes = doc.sizes;
  auto plan = emit_control_packets(doc.movements, rc.control_latency, rc.slack);
  auto report = simulate(*graph, plan.packets, in);
  write_output(rc.output, report_to_json(report));
  return report.ok() ? kOk : kFailure;
}

int round_trip(const ScheduleState& original, const WaypointProgram& program,
               std::shared_ptr<const HardwareGraph> graph) {
  auto rebuilt = reconstruct(program, std::move(graph));
  if (auto diff = first_difference(rebuilt.movements(), original.movements())) {
    std::cerr << "round trip mismatch at movement " << *diff << ": ";
    if (*diff < original.movements().size()) {
      std::cerr << "expected " << to_string(original.movements()[*diff]);
    }
    if (*diff < rebuilt.movements().size()) {
      std::cerr << ", got " << to_string(rebuilt.movements()[*diff]);
    }
    std::cerr << "\n";
    return kFailure;
  }
  if (!rebuilt.same_schedule(original)) {
    std::cerr << "round trip mismatch: occupancy records differ\n";
    return kFailure;
  }
  return kOk;
}

int cmd_compress(const RunConfig& rc, const std::string& schedule_path) {
  auto graph = load_hardware(rc.hardware);
  auto doc = load(schedule_path, parse_schedule);
  auto state = rebuild_schedule(doc, graph);
  auto program = compress_waypoints(state, state.paths(), rc.stride);
  write_output(rc.output, serialize_program(program));
  return round_trip(state, program, graph);
}

int cmd_reconstruct(const RunConfig& rc, const std::string& program_path,
                    const std::string& against) {
  auto graph = load_hardware(rc.hardware);
  auto program = load(program_path, parse_program);
  auto state = reconstruct(program, graph);
  write_output(rc.output, serialize_schedule(document_of(state), nullptr));
  if (against.empty()) return kOk;
  auto doc = load(against, parse_schedule);
  if (auto diff = first_difference(state.movements(), doc.movements)) {
    std::cerr << "reconstructed schedule differs at movement " << *diff << "\n";
    return kFailure;
  }
  return kOk;
}

void add_common(CLI::App* sub, RunConfig& rc, bool workload_required) {
  sub->add_option("--hardware", rc.hardware, "hardware description (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  auto* w = sub->add_option("--workload", rc.workload, "workload (JSON)")->check(CLI::ExistingFile);
  if (workload_required) w->required();
  sub->add_option("--seeds", rc.seeds, "initial memory (JSON)")->check(CLI::ExistingFile);
  sub->add_option("-o,--output", rc.output, "primary output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ahead-of-time accelerator scheduler"};
  app.require_subcommand(1);
  RunConfig rc;
  std::string hardware_b, schedule_path, program_path, against;

  auto* sched = app.add_subcommand("schedule", "place and route a workload");
  add_common(sched, rc, true);
  sched->add_option("--horizon", rc.horizon, "scheduling horizon override")
      ->check(CLI::PositiveNumber);
  sched->add_option("--wait-epsilon", rc.wait_epsilon, "wait wire cost override")
      ->check(CLI::PositiveNumber);
  sched->add_option("--format", rc.format, "csv, json or text")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  sched->add_option("--out-dir", rc.out_dir, "also write all artifacts into this directory");

  auto* cmp = app.add_subcommand("compare", "schedule one workload on two hardware variants");
  add_common(cmp, rc, true);
  cmp->add_option("--hardware-b", hardware_b, "second hardware description")
      ->required()
      ->check(CLI::ExistingFile);
  cmp->add_option("--horizon", rc.horizon)->check(CLI::PositiveNumber);
  cmp->add_option("--wait-epsilon", rc.wait_epsilon)->check(CLI::PositiveNumber);
  cmp->add_option("--format", rc.format, "json or text")->check(CLI::IsMember({"json", "text", "csv"}));

  auto* ver = app.add_subcommand("verify", "replay a schedule in the simulator");
  add_common(ver, rc, false);
  ver->add_option("--schedule", schedule_path, "schedule (JSON)")->required()->check(CLI::ExistingFile);
  ver->add_option("--control-latency", rc.control_latency)->check(CLI::NonNegativeNumber);
  ver->add_option("--slack", rc.slack)->check(CLI::NonNegativeNumber);

  auto* comp = app.add_subcommand("compress", "keep waypoints only; checks the round trip");
  add_common(comp, rc, false);
  comp->add_option("--schedule", schedule_path)->required()->check(CLI::ExistingFile);
  comp->add_option("--stride", rc.stride)->check(CLI::PositiveNumber);

  auto* rec = app.add_subcommand("reconstruct", "rebuild a schedule from waypoints");
  add_common(rec, rc, false);
  rec->add_option("--program", program_path)->required()->check(CLI::ExistingFile);
  rec->add_option("--against", against, "schedule to diff the result against")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sched) return cmd_schedule(rc);
    if (*cmp) {
      if (rc.format == "csv") rc.format = "text";
      return cmd_compare(rc, hardware_b);
    }
    if (*ver) return cmd_verify(rc, schedule_path);
    if (*comp) return cmd_compress(rc, schedule_path);
    if (*rec) return cmd_reconstruct(rc, program_path, against);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
