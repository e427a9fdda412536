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

#include <memory>
#include <optional>
#include <vector>

#include "dtt/hardware.hpp"
#include "dtt/placing.hpp"
#include "dtt/schedule.hpp"
#include "dtt/sim.hpp"
#include "dtt/state.hpp"
#include "dtt/workload.hpp"

namespace dtt {

struct PipelineConfig {
  std::optional<Cycle> horizon;  // default: last completion + drain_margin
  Cycle drain_margin = 32;
  CostUnits wait_epsilon = kDefaultWaitEpsilon;
  /// Capability-filtered placing; with every actor capable it equals plain
  /// First Best Fit.
  bool filtered = true;
  PlacingOptions placing;
};

struct PipelineResult {
  std::vector<Placement> placements;
  ScheduleState state;
  ScheduleStats stats;
};

/// place -> register results -> route every input -> schedule reductions.
PipelineResult run_pipeline(std::shared_ptr<const HardwareGraph> graph,
                            const std::vector<Operation>& ops, const InitialMemory& memory,
                            const PipelineConfig& config = {});

/// Replays a finished state through the simulator.
SimReport verify_state(const ScheduleState& state, const std::vector<Operation>& ops,
                       Cycle control_latency = 0, Cycle slack = 0);

}  // namespace dtt
