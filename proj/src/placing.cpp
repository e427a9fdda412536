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

#include "dtt/placing.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dtt {

std::size_t affinity(const ActorRuntimeState& actor, const Operation& op) {
  std::size_t n = 0;
  for (DatumId d : op.distinct_inputs()) n += actor.cached.count(d);
  return n;
}

namespace {

std::vector<Placement> place(const std::vector<Operation>& ops,
                             const std::vector<ActorSpec>& actors, const HardwareGraph& graph,
                             const PlacingOptions& options, bool filter) {
  for (const auto& a : actors) {
    auto in = graph.find_node(a.input_node);
    if (!in || graph.nodes()[*in].kind != NodeKind::actor_input) {
      throw ValidationError("actor " + a.name + ": input node " + a.input_node +
                            " is not an actor_input node of the graph");
    }
  }
  std::vector<ActorRuntimeState> rt;
  rt.reserve(actors.size());
  for (const auto& a : actors) rt.push_back({a.name, 0, a.lane_count, {}, {}});

  std::vector<Placement> out;
  Cycle clock = 0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& op = ops[i];
    if (op.is_reduction()) continue;
    clock = std::max(clock, op.offset);
    const int lanes = op.lanes_required();

    std::vector<std::size_t> candidates;
    for (std::size_t a = 0; a < actors.size(); ++a) {
      if (filter && !actors[a].can_perform(op.opcode)) continue;
      if (actors[a].lane_count < lanes) continue;
      candidates.push_back(a);
    }
    if (candidates.empty()) {
      std::ostringstream os;
      os << "operation " << i << ": no actor can perform opcode \"" << op.opcode << "\"";
      if (lanes > 1) os << " on " << lanes << " lanes";
      throw PlacingError(os.str());
    }

    const Cycle start = clock;
    std::optional<std::size_t> chosen;
    while (true) {
      for (auto& s : rt) {
        auto& pr = s.pending_release;
        for (auto it = pr.begin(); it != pr.end();) {
          if (it->first <= clock) {
            s.free_lanes += it->second;
            it = pr.erase(it);
          } else {
            ++it;
          }
        }
      }
      std::size_t best_aff = 0;
      for (std::size_t a : candidates) {
        const auto& s = rt[a];
        if (clock < s.busy_until || s.free_lanes < lanes) continue;
        std::size_t aff = affinity(s, op);
        if (!chosen || aff > best_aff) {
          chosen = a;
          best_aff = aff;
        }
      }
      if (chosen) break;
      ++clock;
      if (clock - start > options.starvation_bound) {
        std::ostringstream os;
        os << "operation " << i << ": no actor became available within "
           << options.starvation_bound << " placing cycles (starting at cycle " << start << ")";
        throw PlacingError(os.str());
      }
    }

    const auto& spec = actors[*chosen];
    if (!spec.can_perform(op.opcode)) {
      throw PlacingError("operation " + std::to_string(i) + ": actor " + spec.name +
                         " cannot perform \"" + op.opcode + "\"; use filtered placing");
    }
    auto& s = rt[*chosen];
    s.free_lanes -= lanes;
    s.pending_release.emplace_back(clock + spec.op_delay, lanes);
    if (s.free_lanes == 0) s.busy_until = clock + spec.cooldown;
    for (DatumId d : op.inputs) s.cached.insert(d);
    out.push_back({i, spec.name, clock + spec.distribution_latency});
  }
  return out;
}

}  // namespace

std::vector<Placement> first_best_fit(const std::vector<Operation>& ops,
                                      const std::vector<ActorSpec>& actors,
                                      const HardwareGraph& graph,
                                      const PlacingOptions& options) {
  return place(ops, actors, graph, options, false);
}

std::vector<Placement> filtered_placing(const std::vector<Operation>& ops,
                                        const std::vector<ActorSpec>& actors,
                                        const HardwareGraph& graph,
                                        const PlacingOptions& options) {
  return place(ops, actors, graph, options, true);
}

void register_results(ScheduleState& state, const std::vector<Placement>& placements,
                      const std::vector<Operation>& ops) {
  const auto& g = state.graph();
  for (const auto& p : placements) {
    const auto& op = ops.at(p.op_index);
    if (op.outputs.empty()) continue;
    const auto& actor = g.actor(p.actor);
    MemoryFact fact;
    fact.node = actor.output_node;
    fact.cycle = p.arrival_cycle + actor.op_delay;
    fact.data = op.outputs;
    fact.produced = true;
    try {
      apply_fact(state, fact);
    } catch (const CapacityError& e) {
      throw CapacityError("operation " + std::to_string(p.op_index) + ": " + e.what());
    }
  }
}

std::vector<std::string> audit_lanes(const std::vector<Placement>& placements,
                                     const std::vector<Operation>& ops,
                                     const HardwareGraph& graph) {
  // actor -> placing cycle -> lanes in use
  std::map<std::string, std::map<Cycle, int>> use;
  for (const auto& p : placements) {
    const auto& a = graph.actor(p.actor);
    Cycle placed = p.arrival_cycle - a.distribution_latency;
    int lanes = ops.at(p.op_index).lanes_required();
    for (Cycle c = placed; c < placed + a.op_delay; ++c) use[p.actor][c] += lanes;
  }
  std::vector<std::string> problems;
  for (const auto& [name, cycles] : use) {
    int cap = graph.actor(name).lane_count;
    for (const auto& [c, n] : cycles) {
      if (n > cap) {
        problems.push_back("actor " + name + " uses " + std::to_string(n) + " lanes at cycle " +
                           std::to_string(c) + " (has " + std::to_string(cap) + ")");
      }
    }
  }
  return problems;
}

}  // namespace dtt
