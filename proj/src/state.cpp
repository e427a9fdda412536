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

#include "dtt/state.hpp"

#include <algorithm>
#include <sstream>

namespace dtt {

std::vector<SpaceTimePoint> Path::points(const HardwareGraph& graph) const {
  std::vector<SpaceTimePoint> out{origin};
  for (const auto& step : steps) {
    if (step.is_wait()) {
      out.push_back({out.back().node, step.launch + 1});
    } else {
      const auto& w = graph.wire(step.wire);
      out.push_back({w.dst, step.launch + w.delay});
    }
  }
  return out;
}

ScheduleState::ScheduleState(std::shared_ptr<const HardwareGraph> graph, Cycle horizon)
    : graph_(std::move(graph)), horizon_(horizon) {
  if (!graph_) throw ValidationError("schedule state needs a hardware graph");
  if (horizon < 0) throw ValidationError("negative horizon");
  presence_.resize(graph_->nodes().size());
  wire_use_.resize(graph_->wires().size());
}

void ScheduleState::extend_horizon(Cycle horizon) { horizon_ = std::max(horizon_, horizon); }

void ScheduleState::set_wait_epsilon(CostUnits epsilon) {
  if (epsilon <= 0) throw ValidationError("wait_epsilon must be positive");
  wait_epsilon_ = epsilon;
}

Bytes ScheduleState::datum_size(DatumId datum) const {
  auto it = sizes_.find(datum);
  return it == sizes_.end() ? 1 : it->second;
}

void ScheduleState::set_datum_size(DatumId datum, Bytes size) {
  if (size < 1) throw ValidationError("datum " + std::to_string(datum) + ": size must be >= 1");
  sizes_[datum] = size;
}

std::set<DatumId> ScheduleState::node_history(std::size_t node, Cycle cycle) const {
  std::set<DatumId> out;
  for (const auto& [d, ranges] : presence_[node]) {
    for (const auto& r : ranges) {
      if (r.contains(cycle)) {
        out.insert(d);
        break;
      }
    }
  }
  return out;
}

bool ScheduleState::holds(std::size_t node, DatumId datum, Cycle cycle) const {
  auto it = presence_[node].find(datum);
  if (it == presence_[node].end()) return false;
  return std::any_of(it->second.begin(), it->second.end(),
                     [cycle](const Interval& r) { return r.contains(cycle); });
}

Bytes ScheduleState::occupancy(std::size_t node, Cycle cycle) const {
  Bytes total = 0;
  for (const auto& [d, ranges] : presence_[node]) {
    for (const auto& r : ranges) {
      if (r.contains(cycle)) {
        total += datum_size(d);
        break;
      }
    }
  }
  return total;
}

Bytes ScheduleState::peak(std::size_t node, Interval range) const {
  if (range.begin >= range.end) return 0;
  // Occupancy is piecewise constant; it can only rise at an interval start.
  std::vector<Cycle> probes{range.begin};
  for (const auto& [d, ranges] : presence_[node]) {
    for (const auto& r : ranges) {
      if (r.begin > range.begin && r.begin < range.end) probes.push_back(r.begin);
    }
  }
  Bytes best = 0;
  for (Cycle c : probes) best = std::max(best, occupancy(node, c));
  return best;
}

Bytes ScheduleState::peak_with(std::size_t node, DatumId datum, Interval range) const {
  if (range.begin >= range.end) return 0;
  std::vector<Cycle> probes{range.begin};
  for (const auto& [d, ranges] : presence_[node]) {
    for (const auto& r : ranges) {
      if (r.begin > range.begin && r.begin < range.end) probes.push_back(r.begin);
      // The datum's own presence ending inside the range exposes its slot.
      if (d == datum && r.end > range.begin && r.end < range.end) probes.push_back(r.end);
    }
  }
  Bytes size = datum_size(datum);
  Bytes best = 0;
  for (Cycle c : probes) {
    Bytes occ = occupancy(node, c);
    if (!holds(node, datum, c)) occ += size;
    best = std::max(best, occ);
  }
  return best;
}

void ScheduleState::add_presence(std::size_t node, DatumId datum, Interval range) {
  if (range.begin >= range.end) return;
  auto& ranges = presence_[node][datum];
  ranges.push_back(range);
  std::sort(ranges.begin(), ranges.end(),
            [](const Interval& a, const Interval& b) { return a.begin < b.begin; });
  std::vector<Interval> merged;
  for (const auto& r : ranges) {
    if (!merged.empty() && r.begin <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, r.end);
    } else {
      merged.push_back(r);
    }
  }
  ranges = std::move(merged);
}

std::span<const DatumId> ScheduleState::wire_history(std::size_t wire, Cycle launch) const {
  auto it = wire_use_[wire].find(launch);
  if (it == wire_use_[wire].end()) return {};
  return it->second;
}

Bytes ScheduleState::wire_load(std::size_t wire, Cycle launch) const {
  Bytes total = 0;
  for (DatumId d : wire_history(wire, launch)) total += datum_size(d);
  return total;
}

bool ScheduleState::wire_carries(std::size_t wire, DatumId datum, Cycle launch) const {
  auto h = wire_history(wire, launch);
  return std::find(h.begin(), h.end(), datum) != h.end();
}

void ScheduleState::add_wire_use(std::size_t wire, Cycle launch, DatumId datum) {
  auto& v = wire_use_[wire][launch];
  if (std::find(v.begin(), v.end(), datum) == v.end()) v.push_back(datum);
}

std::vector<std::string> ScheduleState::audit() const {
  std::vector<std::string> problems;
  const auto& g = *graph_;
  for (std::size_t n = 0; n < g.nodes().size(); ++n) {
    const auto& spec = g.nodes()[n];
    if (!spec.capacity) continue;
    std::set<Cycle> probes;
    for (const auto& [d, ranges] : presence_[n]) {
      for (const auto& r : ranges) probes.insert(r.begin);
    }
    for (Cycle c : probes) {
      Bytes occ = occupancy(n, c);
      if (occ > *spec.capacity) {
        std::ostringstream os;
        os << "capacity: node " << spec.name << " holds " << occ << " bytes at cycle " << c
           << " (capacity " << *spec.capacity << ")";
        problems.push_back(os.str());
      }
    }
  }
  for (std::size_t w = 0; w < g.wires().size(); ++w) {
    const auto& spec = g.wires()[w];
    for (const auto& [launch, data] : wire_use_[w]) {
      Bytes load = wire_load(w, launch);
      if (load > spec.bandwidth) {
        std::ostringstream os;
        os << "bandwidth: wire " << spec.name << " carries " << load << " bytes at launch "
           << launch << " (bandwidth " << spec.bandwidth << ")";
        problems.push_back(os.str());
      }
    }
  }
  for (const auto& m : movements_) {
    auto w = g.find_wire(m.wire);
    if (!w) {
      problems.push_back("movement: unknown wire in " + to_string(m));
      continue;
    }
    const auto& spec = g.wires()[*w];
    if (spec.src != m.src || spec.dst != m.dst || m.end_cycle - m.start_cycle != spec.delay) {
      problems.push_back("movement: does not match its wire: " + to_string(m));
      continue;
    }
    if (!wire_carries(*w, m.datum, m.start_cycle)) {
      problems.push_back("movement: no wire record for " + to_string(m));
    }
    if (!holds(g.node_index(m.src), m.datum, m.start_cycle)) {
      problems.push_back("movement: source does not hold datum for " + to_string(m));
    }
    if (!holds(g.node_index(m.dst), m.datum, m.end_cycle)) {
      problems.push_back("movement: destination does not hold datum for " + to_string(m));
    }
  }
  return problems;
}

bool ScheduleState::same_schedule(const ScheduleState& other) const {
  return *graph_ == *other.graph_ && sizes_ == other.sizes_ && presence_ == other.presence_ &&
         wire_use_ == other.wire_use_ && placements_ == other.placements_ &&
         movements_ == other.movements_ && paths_ == other.paths_ &&
         reductions_ == other.reductions_;
}

void seed_memory(ScheduleState& state, std::string_view node, std::span<const DatumId> data,
                 Cycle cycle, std::optional<Cycle> until) {
  if (data.empty()) return;
  const auto& g = state.graph();
  auto n = g.find_node(node);
  if (!n) throw ValidationError("seed: unknown node \"" + std::string(node) + "\"");
  if (cycle < 0) throw ValidationError("seed: negative cycle");
  Interval range{cycle, until ? *until + 1 : kForever};
  auto saved = state.presence(*n);
  for (DatumId d : data) state.add_presence(*n, d, range);
  const auto& cap = g.nodes()[*n].capacity;
  if (cap) {
    Bytes p = state.peak(*n, range);
    if (p > *cap) {
      state.restore_presence(*n, std::move(saved));
      std::ostringstream os;
      os << "capacity overflow seeding " << node << " at cycle " << cycle << ": " << p
         << " bytes exceed capacity " << *cap;
      throw CapacityError(os.str());
    }
  }
}

void apply_fact(ScheduleState& state, const MemoryFact& fact) {
  seed_memory(state, fact.node, fact.data, fact.cycle, fact.until);
  state.append_fact(fact);
}

}  // namespace dtt
