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

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dtt/hardware.hpp"
#include "dtt/state.hpp"
#include "dtt/types.hpp"

namespace dtt {

struct ScheduleStats {
  /// Sum of wire costs over movements; waits are not counted.
  CostUnits energy_units = 0;
  double total_energy = 0.0;
  /// Last cycle at which anything ends: a movement, an operation or a
  /// reduction.
  Cycle makespan = 0;
  /// Fraction of launch cycles in [0, makespan) on which the wire carries
  /// anything.
  std::map<std::string, double> per_wire_utilization;

  bool operator==(const ScheduleStats&) const = default;
};

ScheduleStats compute_stats(const HardwareGraph& graph, const std::vector<Movement>& movements,
                            const std::vector<Placement>& placements,
                            const std::vector<ReductionRecord>& reductions);
ScheduleStats compute_stats(const ScheduleState& state);

std::string stats_to_json(const ScheduleStats& stats);
std::string stats_to_text(const ScheduleStats& stats);

// --- serialized schedules ---------------------------------------------------

/// Everything needed to replay or verify a schedule.
struct ScheduleDocument {
  Cycle horizon = 0;
  CostUnits wait_epsilon = kDefaultWaitEpsilon;
  std::vector<MemoryFact> memory;
  std::map<DatumId, Bytes> sizes;
  std::vector<Placement> placements;
  std::vector<Movement> movements;
  std::vector<Path> paths;
  std::vector<ReductionRecord> reductions;
};

ScheduleDocument document_of(const ScheduleState& state);
std::string serialize_schedule(const ScheduleDocument& doc, const ScheduleStats* stats = nullptr);
ScheduleDocument parse_schedule(std::string_view text);

/// Replays the document's facts, paths and reductions on `graph`. Throws
/// ValidationError if the result does not reproduce the recorded movements.
ScheduleState rebuild_schedule(const ScheduleDocument& doc,
                               std::shared_ptr<const HardwareGraph> graph);

/// Table-style movement export: header datum,source_node,start_cycle,end_node,end_cycle.
std::string movements_to_csv(const std::vector<Movement>& movements);
std::string movements_to_json(const std::vector<Movement>& movements);
std::string movements_to_text(const std::vector<Movement>& movements);
/// One row per placement: cycle, actor input node and input data.
std::string placements_to_csv(const std::vector<Placement>& placements,
                              const std::vector<Operation>& ops, const HardwareGraph& graph);
std::string placements_to_json(const std::vector<Placement>& placements,
                               const std::vector<Operation>& ops, const HardwareGraph& graph);

/// One row per node, one column per cycle in [0, last_cycle], datum ids in
/// each cell.
std::string render_gantt(const ScheduleState& state, Cycle last_cycle);

// --- waypoints ----------------------------------------------------------------

struct WaypointRequest {
  DatumId datum = 0;
  SpaceTimePoint target;
  Cycle release = 0;
  std::vector<SpaceTimePoint> waypoints;

  bool operator==(const WaypointRequest&) const = default;
};

struct WaypointProgram {
  int stride = 4;
  Cycle horizon = 0;
  CostUnits wait_epsilon = kDefaultWaitEpsilon;
  std::vector<Placement> placements;
  std::vector<MemoryFact> memory;
  std::map<DatumId, Bytes> sizes;
  std::vector<WaypointRequest> requests;
  std::vector<ReductionRecord> reductions;

  bool operator==(const WaypointProgram&) const = default;
};

/// Keeps every stride-th point of each path plus its destination. The
/// state supplies the placements, memory facts and reductions.
WaypointProgram compress_waypoints(const ScheduleState& state, const std::vector<Path>& paths,
                                   int stride);

/// Re-routes every leg between consecutive waypoints, request by request,
/// then replays the reductions. Throws TimingFault on an infeasible leg.
ScheduleState reconstruct(const WaypointProgram& program,
                          std::shared_ptr<const HardwareGraph> graph);

std::string serialize_program(const WaypointProgram& program);
WaypointProgram parse_program(std::string_view text);

/// First movement index at which the two lists differ, or nullopt.
std::optional<std::size_t> first_difference(const std::vector<Movement>& a,
                                            const std::vector<Movement>& b);

}  // namespace dtt
