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

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dtt/hardware.hpp"
#include "dtt/state.hpp"
#include "dtt/types.hpp"

namespace dtt {

struct ActorRuntimeState {
  std::string actor;
  Cycle busy_until = 0;
  int free_lanes = 0;
  /// Every datum delivered to the actor's input node by placements so far.
  std::set<DatumId> cached;
  /// (placing cycle, lanes) pairs still to be returned.
  std::vector<std::pair<Cycle, int>> pending_release;
};

/// Number of distinct op inputs already cached at the actor.
std::size_t affinity(const ActorRuntimeState& actor, const Operation& op);

struct PlacingOptions {
  /// Maximum placing-clock advance for one operation before giving up.
  Cycle starvation_bound = 1'000'000;
};

/// First Best Fit: each operation goes to the available actor with the highest
/// affinity, lowest declaration index on ties. Reduction entries are skipped;
/// they are scheduled on the reduction network instead.
std::vector<Placement> first_best_fit(const std::vector<Operation>& ops,
                                      const std::vector<ActorSpec>& actors,
                                      const HardwareGraph& graph,
                                      const PlacingOptions& options = {});

/// First Best Fit over the actors able to run each opcode.
std::vector<Placement> filtered_placing(const std::vector<Operation>& ops,
                                        const std::vector<ActorSpec>& actors,
                                        const HardwareGraph& graph,
                                        const PlacingOptions& options = {});

/// Records each placed operation's outputs in its actor's output node from
/// arrival_cycle + op_delay onward. Throws CapacityError on overflow.
void register_results(ScheduleState& state, const std::vector<Placement>& placements,
                      const std::vector<Operation>& ops);

/// Lane-overlap audit: one line per (actor, placing cycle) where more lanes are
/// assigned than the actor has. Placing cycles are arrival - distribution latency.
std::vector<std::string> audit_lanes(const std::vector<Placement>& placements,
                                     const std::vector<Operation>& ops,
                                     const HardwareGraph& graph);

}  // namespace dtt
