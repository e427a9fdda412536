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

// Reduction networks are scheduled as a distribution from the result node to
// the leaves on the reversed graph, then replayed backwards in time.

#include <algorithm>

#include "dtt/routing.hpp"

namespace dtt {

std::vector<Movement> reverse_movements(const std::vector<Movement>& movements, Cycle reflect) {
  std::vector<Movement> out;
  out.reserve(movements.size());
  for (const auto& m : movements) {
    out.push_back({m.datum, m.dst, reflect - m.end_cycle, m.src, reflect - m.start_cycle, m.wire});
  }
  return out;
}

namespace {

// Real cycles [b, e) become mirror cycles [T - e + 1, T - b + 1), and back.
Interval reflect(Interval r, Cycle T) {
  Cycle b = r.end >= kForever ? std::numeric_limits<Cycle>::min() / 4 : T - r.end + 1;
  Cycle e = r.begin <= std::numeric_limits<Cycle>::min() / 4 ? kForever : T - r.begin + 1;
  return {b, e};
}

ScheduleState mirror_of(const ScheduleState& state, Cycle T) {
  auto rg = std::make_shared<const HardwareGraph>(state.graph().reversed());
  ScheduleState m(rg, T);
  m.set_wait_epsilon(state.wait_epsilon());
  for (const auto& [d, size] : state.datum_sizes()) m.set_datum_size(d, size);
  const auto& g = state.graph();
  for (std::size_t n = 0; n < g.nodes().size(); ++n) {
    for (const auto& [d, ranges] : state.presence(n)) {
      for (const auto& r : ranges) {
        Interval f = reflect(r, T);
        f.begin = std::max<Cycle>(f.begin, 0);
        if (f.begin < f.end) m.add_presence(n, d, f);
      }
    }
  }
  for (std::size_t w = 0; w < g.wires().size(); ++w) {
    Cycle delay = g.wires()[w].delay;
    for (const auto& [launch, data] : state.wire_history(w)) {
      Cycle f = T - launch - delay;
      if (f < 0) continue;
      for (DatumId d : data) m.add_wire_use(w, f, d);
    }
  }
  return m;
}

}  // namespace

std::vector<Movement> route_reduction(ScheduleState& state, DatumId result,
                                      const SpaceTimePoint& result_point,
                                      const std::vector<std::pair<DatumId, std::string>>& leaves,
                                      Cycle ready) {
  const auto& g = state.graph();
  const Cycle T = result_point.cycle;
  const std::size_t root = g.node_index(result_point.node);
  if (T < ready) {
    throw TimingFault(result, result_point, -1, "completion precedes the leaves' ready cycle");
  }

  ScheduleState mirror = mirror_of(state, T);
  mirror.add_presence(root, result, {0, 1});
  for (const auto& [leaf, node] : leaves) {
    SpaceTimePoint target{node, T - ready};
    try {
      reserve(mirror, route_datum(mirror, RouteRequest{result, target, target.cycle + 1}));
    } catch (const TimingFault& e) {
      throw TimingFault(result, result_point, T - e.frontier(),
                        "leaf " + std::to_string(leaf) + " at " + node + " is unreachable");
    }
  }

  ScheduleState work = state;
  auto movements = reverse_movements(mirror.movements(), T);
  for (const auto& m : movements) {
    work.add_wire_use(g.wire_index(m.wire), m.start_cycle, result);
    work.append_movement(m);
  }
  for (std::size_t n = 0; n < g.nodes().size(); ++n) {
    auto it = mirror.presence(n).find(result);
    if (it == mirror.presence(n).end()) continue;
    for (const auto& r : it->second) {
      Interval real = reflect(r, T);
      real.begin = std::max(real.begin, ready);
      if (real.begin < real.end) work.add_presence(n, result, real);
    }
  }
  const auto& cap = g.nodes()[root].capacity;
  if (cap && work.peak_with(root, result, {T, kForever}) > *cap) {
    throw TimingFault(result, result_point, T, "result node cannot retain the result");
  }
  work.add_presence(root, result, {T, kForever});
  work.append_reduction({result, result_point.node, T, ready, leaves});
  work.bump_version();
  state = std::move(work);
  return movements;
}

ReductionRecord schedule_reduction(ScheduleState& state, DatumId result,
                                   const std::vector<DatumId>& leaves, Cycle ready) {
  const auto& g = state.graph();
  std::vector<std::pair<DatumId, std::string>> assigned;
  for (DatumId d : leaves) {
    std::optional<std::size_t> where;
    for (std::size_t n = 0; n < g.nodes().size() && !where; ++n) {
      if (state.holds(n, d, ready)) where = n;
    }
    if (!where) {
      throw ValidationError("reduction " + std::to_string(result) + ": leaf datum " +
                            std::to_string(d) + " is not present at cycle " +
                            std::to_string(ready));
    }
    assigned.emplace_back(d, g.nodes()[*where].name);
  }
  for (Cycle T = ready; T <= state.horizon(); ++T) {
    for (const auto& node : g.nodes()) {
      ScheduleState trial = state;
      try {
        route_reduction(trial, result, {node.name, T}, assigned, ready);
      } catch (const TimingFault&) {
        continue;
      }
      state = std::move(trial);
      return state.reductions().back();
    }
  }
  throw TimingFault(result, {assigned.front().second, state.horizon()}, state.horizon(),
                    "no node can complete the reduction within the horizon");
}

void route_reductions(ScheduleState& state, const std::vector<Operation>& ops) {
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& op = ops[i];
    if (!op.is_reduction()) continue;
    try {
      schedule_reduction(state, op.outputs.front(), op.distinct_inputs(), op.offset);
    } catch (const TimingFault& e) {
      throw TimingFault(e.datum(), e.target(), e.frontier(),
                        "operation " + std::to_string(i) + " (reduce)");
    } catch (const ValidationError& e) {
      throw ValidationError("operation " + std::to_string(i) + ": " + e.what());
    }
  }
}

}  // namespace dtt
