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

#include <string>
#include <vector>

#include "dtt/state.hpp"
#include "dtt/types.hpp"

namespace dtt {

/// One datum delivery. At an actor-input target the datum is held over
/// [target.cycle, release); elsewhere it is retained from arrival on.
struct RouteRequest {
  DatumId datum = 0;
  SpaceTimePoint target;
  Cycle release = 0;
};

/// Every (node, cycle) within the horizon where the datum is present.
/// Throws ValidationError if it is nowhere.
std::vector<SpaceTimePoint> locate_datum(const ScheduleState& state, DatumId datum);

/// Cheapest admissible path from any location of the datum to exactly the
/// target. Does not modify the state. Throws TimingFault if none exists.
Path route_datum(const ScheduleState& state, const RouteRequest& request);

/// Same, holding the datum at the target for that cycle only.
Path route_datum(const ScheduleState& state, DatumId datum, const SpaceTimePoint& target);

/// Cheapest admissible path from the single point `from` to `to`. The datum
/// need not be present at `from`. `release` applies when `to` is an
/// actor-input node.
Path route_leg(const ScheduleState& state, DatumId datum, const SpaceTimePoint& from,
               const SpaceTimePoint& to, Cycle release);

/// Admissibility of moving `datum` over `wire` (an explicit wire index, or
/// nullopt for the wait wire of `node`) launched at `launch`, with the usual
/// hold at the arrival point. Exposed for oracles and diagnostics.
bool edge_admissible(const ScheduleState& state, DatumId datum, std::size_t node,
                     std::optional<std::size_t> wire, Cycle launch);

/// Admissibility of the hold a request places on its target.
bool target_admissible(const ScheduleState& state, const RouteRequest& request);

/// Commits a path: wire uses, node presence, movements. Throws
/// StaleStateError if the state changed since the path was computed.
void reserve(ScheduleState& state, const Path& path);

/// Routes every distinct input of every placed operation to its actor's
/// input node at the arrival cycle, in placement then input order.
void route_all(ScheduleState& state, const std::vector<Placement>& placements,
               const std::vector<Operation>& ops);

/// Request issued by route_all for one input of one placement.
RouteRequest input_request(const HardwareGraph& graph, const Placement& placement,
                           const Operation& op, DatumId datum);

// --- reduction networks ---------------------------------------------------

/// Maps (d, u, t1, v, t2) to (d, v, T - t2, u, T - t1), element by element.
std::vector<Movement> reverse_movements(const std::vector<Movement>& movements, Cycle reflect);

/// Schedules the accumulation of `leaves` (leaf datum id -> node holding it at
/// `ready`) into `result` at exactly `result_point` by routing a distribution
/// flow on the reversed graph and playing it backwards. Commits on success
/// and returns the new movements. Throws TimingFault if a leaf is unreachable.
std::vector<Movement> route_reduction(ScheduleState& state, DatumId result,
                                      const SpaceTimePoint& result_point,
                                      const std::vector<std::pair<DatumId, std::string>>& leaves,
                                      Cycle ready);

/// Searches the earliest completion cycle (then the first node in declaration
/// order) at which the reduction succeeds, and commits it.
ReductionRecord schedule_reduction(ScheduleState& state, DatumId result,
                                   const std::vector<DatumId>& leaves, Cycle ready);

/// Schedules every "reduce" entry of the workload, in order.
void route_reductions(ScheduleState& state, const std::vector<Operation>& ops);

}  // namespace dtt
