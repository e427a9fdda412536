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

#include "dtt/schedule.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <set>
#include <sstream>

#include "dtt/routing.hpp"
#include "json_util.hpp"

namespace dtt {

using detail::JsonPath;
using detail::ojson;

// --- stats --------------------------------------------------------------------

ScheduleStats compute_stats(const HardwareGraph& graph, const std::vector<Movement>& movements,
                            const std::vector<Placement>& placements,
                            const std::vector<ReductionRecord>& reductions) {
  ScheduleStats s;
  std::map<std::string, std::set<Cycle>> busy;
  for (const auto& m : movements) {
    s.energy_units += graph.wire(m.wire).cost;
    s.makespan = std::max(s.makespan, m.end_cycle);
    busy[m.wire].insert(m.start_cycle);
  }
  for (const auto& p : placements) {
    s.makespan = std::max(s.makespan, p.arrival_cycle + graph.actor(p.actor).op_delay);
  }
  for (const auto& r : reductions) s.makespan = std::max(s.makespan, r.cycle);
  s.total_energy = to_energy(s.energy_units);
  for (const auto& w : graph.wires()) {
    double u = 0.0;
    if (s.makespan > 0) {
      auto it = busy.find(w.name);
      std::size_t used = 0;
      if (it != busy.end()) {
        used = static_cast<std::size_t>(std::count_if(
            it->second.begin(), it->second.end(),
            [&](Cycle c) { return c >= 0 && c < s.makespan; }));
      }
      u = static_cast<double>(used) / static_cast<double>(s.makespan);
    }
    s.per_wire_utilization[w.name] = u;
  }
  return s;
}

ScheduleStats compute_stats(const ScheduleState& state) {
  return compute_stats(state.graph(), state.movements(), state.placements(), state.reductions());
}

std::string stats_to_json(const ScheduleStats& stats) {
  ojson j;
  j["total_energy"] = stats.total_energy;
  j["makespan"] = stats.makespan;
  ojson u = ojson::object();
  for (const auto& [w, f] : stats.per_wire_utilization) u[w] = f;
  j["per_wire_utilization"] = std::move(u);
  return j.dump(2) + "\n";
}

std::string stats_to_text(const ScheduleStats& stats) {
  std::size_t width = std::string("total_energy").size();
  for (const auto& [w, f] : stats.per_wire_utilization) width = std::max(width, w.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width)) << "total_energy" << "  "
     << stats.total_energy << "\n";
  os << std::left << std::setw(static_cast<int>(width)) << "makespan" << "  " << stats.makespan
     << "\n\n";
  os << std::left << std::setw(static_cast<int>(width)) << "wire" << "  utilization\n";
  for (const auto& [w, f] : stats.per_wire_utilization) {
    os << std::left << std::setw(static_cast<int>(width)) << w << "  " << std::fixed
       << std::setprecision(3) << f << "\n";
    os.unsetf(std::ios::fixed);
  }
  return os.str();
}

// --- JSON pieces -------------------------------------------------------------

namespace {

ojson point_json(const SpaceTimePoint& p) { return {{"node", p.node}, {"cycle", p.cycle}}; }

SpaceTimePoint point_from(const ojson& j, const JsonPath& at) {
  return {detail::require<std::string>(j, "node", at), detail::require<Cycle>(j, "cycle", at)};
}

ojson cycle_or_forever(Cycle c) { return c >= kForever ? ojson(nullptr) : ojson(c); }

Cycle cycle_from(const ojson& j, std::string_view key, const JsonPath& at) {
  const auto& v = detail::require_field(j, key, at);
  if (v.is_null()) return kForever;
  return detail::require<Cycle>(j, key, at);
}

ojson facts_json(const std::vector<MemoryFact>& facts) {
  ojson a = ojson::array();
  for (const auto& f : facts) {
    ojson j{{"node", f.node}, {"cycle", f.cycle}};
    if (f.until) j["until"] = *f.until;
    j["data"] = f.data;
    j["produced"] = f.produced;
    a.push_back(std::move(j));
  }
  return a;
}

std::vector<MemoryFact> facts_from(const ojson& a, const JsonPath& at) {
  std::vector<MemoryFact> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    JsonPath p(at.str() + "[" + std::to_string(i) + "]");
    MemoryFact f;
    f.node = detail::require<std::string>(a[i], "node", p);
    f.cycle = detail::require<Cycle>(a[i], "cycle", p);
    if (a[i].contains("until")) f.until = detail::require<Cycle>(a[i], "until", p);
    f.data = detail::require_ids(a[i], "data", p);
    if (a[i].contains("produced")) f.produced = a[i]["produced"].get<bool>();
    out.push_back(std::move(f));
  }
  return out;
}

ojson sizes_json(const std::map<DatumId, Bytes>& sizes) {
  ojson a = ojson::array();
  for (const auto& [d, s] : sizes) a.push_back({{"datum", d}, {"size", s}});
  return a;
}

std::map<DatumId, Bytes> sizes_from(const ojson& a, const JsonPath& at) {
  std::map<DatumId, Bytes> out;
  for (const auto& j : a) out[detail::require<DatumId>(j, "datum", at)] = detail::require<Bytes>(j, "size", at);
  return out;
}

ojson placements_raw_json(const std::vector<Placement>& placements) {
  ojson a = ojson::array();
  for (const auto& p : placements) {
    a.push_back({{"op_index", p.op_index}, {"actor", p.actor}, {"arrival_cycle", p.arrival_cycle}});
  }
  return a;
}

std::vector<Placement> placements_from(const ojson& a, const JsonPath& at) {
  std::vector<Placement> out;
  for (const auto& j : a) {
    out.push_back({detail::require<std::size_t>(j, "op_index", at),
                   detail::require<std::string>(j, "actor", at),
                   detail::require<Cycle>(j, "arrival_cycle", at)});
  }
  return out;
}

ojson movement_json(const Movement& m) {
  return {{"datum", m.datum},         {"source_node", m.src}, {"start_cycle", m.start_cycle},
          {"end_node", m.dst},        {"end_cycle", m.end_cycle}, {"wire", m.wire}};
}

Movement movement_from(const ojson& j, const JsonPath& at) {
  return {detail::require<DatumId>(j, "datum", at),    detail::require<std::string>(j, "source_node", at),
          detail::require<Cycle>(j, "start_cycle", at), detail::require<std::string>(j, "end_node", at),
          detail::require<Cycle>(j, "end_cycle", at),   detail::require<std::string>(j, "wire", at)};
}

ojson reductions_json(const std::vector<ReductionRecord>& reductions) {
  ojson a = ojson::array();
  for (const auto& r : reductions) {
    ojson leaves = ojson::array();
    for (const auto& [d, n] : r.leaves) leaves.push_back({{"datum", d}, {"node", n}});
    a.push_back({{"result", r.result}, {"node", r.node}, {"cycle", r.cycle},
                 {"ready", r.ready}, {"leaves", std::move(leaves)}});
  }
  return a;
}

std::vector<ReductionRecord> reductions_from(const ojson& a, const JsonPath& at) {
  std::vector<ReductionRecord> out;
  for (const auto& j : a) {
    ReductionRecord r;
    r.result = detail::require<DatumId>(j, "result", at);
    r.node = detail::require<std::string>(j, "node", at);
    r.cycle = detail::require<Cycle>(j, "cycle", at);
    r.ready = detail::require<Cycle>(j, "ready", at);
    for (const auto& l : detail::require_array(j, "leaves", at)) {
      r.leaves.emplace_back(detail::require<DatumId>(l, "datum", at),
                            detail::require<std::string>(l, "node", at));
    }
    out.push_back(std::move(r));
  }
  return out;
}

ojson path_json(const Path& p) {
  ojson steps = ojson::array();
  for (const auto& s : p.steps) steps.push_back({{"wire", s.wire}, {"launch", s.launch}});
  return {{"datum", p.datum},
          {"origin", point_json(p.origin)},
          {"destination", point_json(p.destination)},
          {"release", cycle_or_forever(p.release)},
          {"cost_units", p.cost},
          {"steps", std::move(steps)}};
}

Path path_from(const ojson& j, const JsonPath& at) {
  Path p;
  p.datum = detail::require<DatumId>(j, "datum", at);
  p.origin = point_from(detail::require_field(j, "origin", at), at);
  p.destination = point_from(detail::require_field(j, "destination", at), at);
  p.release = cycle_from(j, "release", at);
  p.cost = detail::require<CostUnits>(j, "cost_units", at);
  for (const auto& s : detail::require_array(j, "steps", at)) {
    p.steps.push_back({detail::require<std::string>(s, "wire", at),
                       detail::require<Cycle>(s, "launch", at)});
  }
  return p;
}

}  // namespace

// --- schedule documents ------------------------------------------------------

ScheduleDocument document_of(const ScheduleState& state) {
  ScheduleDocument d;
  d.horizon = state.horizon();
  d.wait_epsilon = state.wait_epsilon();
  d.memory = state.memory_facts();
  d.sizes = state.datum_sizes();
  d.placements = state.placements();
  d.movements = state.movements();
  d.paths = state.paths();
  d.reductions = state.reductions();
  return d;
}

std::string serialize_schedule(const ScheduleDocument& doc, const ScheduleStats* stats) {
  ojson j;
  j["horizon"] = doc.horizon;
  j["wait_epsilon_units"] = doc.wait_epsilon;
  j["memory"] = facts_json(doc.memory);
  j["sizes"] = sizes_json(doc.sizes);
  j["placements"] = placements_raw_json(doc.placements);
  ojson moves = ojson::array();
  for (const auto& m : doc.movements) moves.push_back(movement_json(m));
  j["movements"] = std::move(moves);
  ojson paths = ojson::array();
  for (const auto& p : doc.paths) paths.push_back(path_json(p));
  j["paths"] = std::move(paths);
  j["reductions"] = reductions_json(doc.reductions);
  if (stats) j["stats"] = ojson::parse(stats_to_json(*stats));
  return j.dump(2) + "\n";
}

ScheduleDocument parse_schedule(std::string_view text) {
  ojson j = detail::parse_document(text, "schedule");
  JsonPath at("");
  ScheduleDocument d;
  d.horizon = detail::require<Cycle>(j, "horizon", at);
  d.wait_epsilon = detail::optional_field<CostUnits>(j, "wait_epsilon_units", at, kDefaultWaitEpsilon);
  d.memory = facts_from(detail::require_array(j, "memory", at), JsonPath("memory"));
  if (j.contains("sizes")) d.sizes = sizes_from(detail::require_array(j, "sizes", at), JsonPath("sizes"));
  d.placements = placements_from(detail::require_array(j, "placements", at), JsonPath("placements"));
  for (const auto& m : detail::require_array(j, "movements", at)) {
    d.movements.push_back(movement_from(m, JsonPath("movements")));
  }
  if (j.contains("paths")) {
    for (const auto& p : detail::require_array(j, "paths", at)) {
      d.paths.push_back(path_from(p, JsonPath("paths")));
    }
  }
  if (j.contains("reductions")) {
    d.reductions = reductions_from(detail::require_array(j, "reductions", at), JsonPath("reductions"));
  }
  return d;
}

ScheduleState rebuild_schedule(const ScheduleDocument& doc,
                               std::shared_ptr<const HardwareGraph> graph) {
  ScheduleState state(std::move(graph), doc.horizon);
  state.set_wait_epsilon(doc.wait_epsilon);
  for (const auto& [d, s] : doc.sizes) state.set_datum_size(d, s);
  for (const auto& f : doc.memory) apply_fact(state, f);
  state.set_placements(doc.placements);
  for (Path p : doc.paths) {
    p.version = state.version();
    reserve(state, p);
  }
  for (const auto& r : doc.reductions) {
    route_reduction(state, r.result, {r.node, r.cycle}, r.leaves, r.ready);
  }
  if (auto diff = first_difference(state.movements(), doc.movements)) {
    std::string detail = *diff < doc.movements.size() ? to_string(doc.movements[*diff])
                                                      : "missing recorded movements";
    throw ValidationError("schedule does not replay on this hardware; first difference at movement " +
                          std::to_string(*diff) + ": " + detail);
  }
  return state;
}

// --- tables --------------------------------------------------------------------

std::string movements_to_csv(const std::vector<Movement>& movements) {
  std::ostringstream os;
  os << "datum,source_node,start_cycle,end_node,end_cycle\n";
  for (const auto& m : movements) {
    os << m.datum << ',' << m.src << ',' << m.start_cycle << ',' << m.dst << ',' << m.end_cycle
       << '\n';
  }
  return os.str();
}

std::string movements_to_json(const std::vector<Movement>& movements) {
  ojson a = ojson::array();
  for (const auto& m : movements) a.push_back(movement_json(m));
  return a.dump(2) + "\n";
}

std::string movements_to_text(const std::vector<Movement>& movements) {
  std::vector<std::array<std::string, 6>> rows;
  rows.push_back({"datum", "source_node", "start", "end_node", "end", "wire"});
  for (const auto& m : movements) {
    rows.push_back({std::to_string(m.datum), m.src, std::to_string(m.start_cycle), m.dst,
                    std::to_string(m.end_cycle), m.wire});
  }
  std::array<std::size_t, 6> width{};
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < 6; ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::ostringstream os;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < 6; ++i) {
      os << std::left << std::setw(static_cast<int>(width[i])) << r[i] << (i == 5 ? "\n" : "  ");
    }
  }
  return os.str();
}

std::string placements_to_csv(const std::vector<Placement>& placements,
                              const std::vector<Operation>& ops, const HardwareGraph& graph) {
  std::ostringstream os;
  os << "op_index,actor,cycle,node,data\n";
  for (const auto& p : placements) {
    os << p.op_index << ',' << p.actor << ',' << p.arrival_cycle << ','
       << graph.actor(p.actor).input_node << ',';
    const auto& in = ops.at(p.op_index).inputs;
    for (std::size_t i = 0; i < in.size(); ++i) os << (i ? " " : "") << in[i];
    os << '\n';
  }
  return os.str();
}

std::string placements_to_json(const std::vector<Placement>& placements,
                               const std::vector<Operation>& ops, const HardwareGraph& graph) {
  ojson a = ojson::array();
  for (const auto& p : placements) {
    a.push_back({{"op_index", p.op_index},
                 {"actor", p.actor},
                 {"cycle", p.arrival_cycle},
                 {"node", graph.actor(p.actor).input_node},
                 {"data", ops.at(p.op_index).inputs}});
  }
  return a.dump(2) + "\n";
}

std::string render_gantt(const ScheduleState& state, Cycle last_cycle) {
  const auto& g = state.graph();
  std::vector<std::vector<std::string>> cells(g.nodes().size());
  std::size_t width = 1;
  for (Cycle c = 0; c <= last_cycle; ++c) width = std::max(width, std::to_string(c).size());
  for (std::size_t n = 0; n < g.nodes().size(); ++n) {
    for (Cycle c = 0; c <= last_cycle; ++c) {
      std::string cell;
      for (DatumId d : state.node_history(n, c)) {
        cell += (cell.empty() ? "" : ",") + std::to_string(d);
      }
      if (cell.empty()) cell = ".";
      width = std::max(width, cell.size());
      cells[n].push_back(std::move(cell));
    }
  }
  std::size_t label = std::string("cycle").size();
  for (const auto& n : g.nodes()) label = std::max(label, n.name.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(label)) << "cycle";
  for (Cycle c = 0; c <= last_cycle; ++c) {
    os << " | " << std::setw(static_cast<int>(width)) << c;
  }
  os << "\n";
  for (std::size_t n = 0; n < g.nodes().size(); ++n) {
    os << std::left << std::setw(static_cast<int>(label)) << g.nodes()[n].name;
    for (const auto& cell : cells[n]) os << " | " << std::setw(static_cast<int>(width)) << cell;
    os << "\n";
  }
  return os.str();
}

// --- waypoints ----------------------------------------------------------------

WaypointProgram compress_waypoints(const ScheduleState& state, const std::vector<Path>& paths,
                                   int stride) {
  if (stride < 1) throw ValidationError("waypoint stride must be positive");
  WaypointProgram prog;
  prog.stride = stride;
  prog.horizon = state.horizon();
  prog.wait_epsilon = state.wait_epsilon();
  prog.placements = state.placements();
  prog.memory = state.memory_facts();
  prog.sizes = state.datum_sizes();
  prog.reductions = state.reductions();
  for (const auto& path : paths) {
    auto pts = path.points(state.graph());
    WaypointRequest req{path.datum, path.destination, path.release, {}};
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i % static_cast<std::size_t>(stride) == 0 || i + 1 == pts.size()) {
        req.waypoints.push_back(pts[i]);
      }
    }
    prog.requests.push_back(std::move(req));
  }
  return prog;
}

ScheduleState reconstruct(const WaypointProgram& program,
                          std::shared_ptr<const HardwareGraph> graph) {
  ScheduleState state(std::move(graph), program.horizon);
  state.set_wait_epsilon(program.wait_epsilon);
  for (const auto& [d, s] : program.sizes) state.set_datum_size(d, s);
  for (const auto& f : program.memory) apply_fact(state, f);
  state.set_placements(program.placements);
  for (std::size_t r = 0; r < program.requests.size(); ++r) {
    const auto& req = program.requests[r];
    const auto& wp = req.waypoints;
    if (wp.empty() || wp.back() != req.target) {
      throw ValidationError("request " + std::to_string(r) + ": waypoints must end at the target");
    }
    Path full;
    full.datum = req.datum;
    full.origin = wp.front();
    full.destination = req.target;
    full.release = req.release;
    full.version = state.version();
    for (std::size_t i = 0; i + 1 < wp.size(); ++i) {
      bool last = i + 2 == wp.size();
      Cycle release = last ? req.release : wp[i + 1].cycle + 1;
      try {
        Path leg = route_leg(state, req.datum, wp[i], wp[i + 1], release);
        full.steps.insert(full.steps.end(), leg.steps.begin(), leg.steps.end());
        full.cost += leg.cost;
      } catch (const TimingFault& e) {
        throw TimingFault(e.datum(), e.target(), e.frontier(),
                          "request " + std::to_string(r) + ", leg " + std::to_string(i) +
                              " is infeasible on this hardware");
      }
    }
    reserve(state, full);
  }
  for (const auto& red : program.reductions) {
    route_reduction(state, red.result, {red.node, red.cycle}, red.leaves, red.ready);
  }
  return state;
}

std::string serialize_program(const WaypointProgram& program) {
  ojson j;
  j["stride"] = program.stride;
  j["horizon"] = program.horizon;
  j["wait_epsilon_units"] = program.wait_epsilon;
  j["placements"] = placements_raw_json(program.placements);
  j["memory"] = facts_json(program.memory);
  j["sizes"] = sizes_json(program.sizes);
  ojson reqs = ojson::array();
  for (const auto& r : program.requests) {
    ojson wps = ojson::array();
    for (const auto& w : r.waypoints) wps.push_back(point_json(w));
    reqs.push_back({{"datum", r.datum},
                    {"target", point_json(r.target)},
                    {"release", cycle_or_forever(r.release)},
                    {"waypoints", std::move(wps)}});
  }
  j["requests"] = std::move(reqs);
  j["reductions"] = reductions_json(program.reductions);
  return j.dump(2) + "\n";
}

WaypointProgram parse_program(std::string_view text) {
  ojson j = detail::parse_document(text, "waypoint program");
  JsonPath at("");
  WaypointProgram p;
  p.stride = detail::require<int>(j, "stride", at);
  if (p.stride < 1) throw ParseError("stride: must be positive");
  p.horizon = detail::require<Cycle>(j, "horizon", at);
  p.wait_epsilon = detail::optional_field<CostUnits>(j, "wait_epsilon_units", at, kDefaultWaitEpsilon);
  p.placements = placements_from(detail::require_array(j, "placements", at), JsonPath("placements"));
  p.memory = facts_from(detail::require_array(j, "memory", at), JsonPath("memory"));
  if (j.contains("sizes")) p.sizes = sizes_from(detail::require_array(j, "sizes", at), JsonPath("sizes"));
  const auto& reqs = detail::require_array(j, "requests", at);
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    JsonPath rp("requests[" + std::to_string(i) + "]");
    WaypointRequest r;
    r.datum = detail::require<DatumId>(reqs[i], "datum", rp);
    r.target = point_from(detail::require_field(reqs[i], "target", rp), rp);
    r.release = cycle_from(reqs[i], "release", rp);
    for (const auto& w : detail::require_array(reqs[i], "waypoints", rp)) {
      r.waypoints.push_back(point_from(w, rp));
    }
    p.requests.push_back(std::move(r));
  }
  if (j.contains("reductions")) {
    p.reductions = reductions_from(detail::require_array(j, "reductions", at), JsonPath("reductions"));
  }
  return p;
}

std::optional<std::size_t> first_difference(const std::vector<Movement>& a,
                                            const std::vector<Movement>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return i;
  }
  if (a.size() != b.size()) return n;
  return std::nullopt;
}

}  // namespace dtt
