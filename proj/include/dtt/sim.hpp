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
#include <string>
#include <vector>

#include "dtt/hardware.hpp"
#include "dtt/state.hpp"
#include "dtt/types.hpp"

namespace dtt {

/// A controller instruction: at `consume_at` the target node pushes the
/// movement's datum over its wire.
struct ControlPacket {
  Movement movement;
  Cycle issue_cycle = 0;
  Cycle consume_at = 0;
  /// Transport latency from the controller to the target.
  Cycle latency = 0;
  std::string target;

  bool late() const { return issue_cycle < 0 || issue_cycle + latency > consume_at; }
  bool operator==(const ControlPacket&) const = default;
};

enum class ViolationKind { bandwidth, capacity, missing_datum, late_packet, invalid_movement };
const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::bandwidth;
  Cycle cycle = 0;
  std::string subject;

  bool operator==(const Violation&) const = default;
};

struct PacketPlan {
  std::vector<ControlPacket> packets;  // ordered by issue cycle
  int controller_peak_queue = 0;
  std::vector<Violation> late;  // packets that cannot arrive in time
};

/// One packet per movement, issued control_latency + slack cycles before
/// the movement starts.
PacketPlan emit_control_packets(const std::vector<Movement>& movements, Cycle control_latency,
                                Cycle slack = 0);

struct SimReport {
  std::vector<Violation> violations;
  int controller_peak_queue = 0;
  int completed_ops = 0;

  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationKind kind) const;
};

struct SimInputs {
  std::vector<Placement> placements;
  std::vector<Operation> workload;
  /// Initial memory; produced facts are ignored (the simulator derives them).
  std::vector<MemoryFact> seeds;
  std::vector<ReductionRecord> reductions;
  std::map<DatumId, Bytes> sizes;
};

/// Cycle-by-cycle replay with its own bookkeeping. Violations are data.
SimReport simulate(const HardwareGraph& graph, const std::vector<ControlPacket>& packets,
                   const SimInputs& inputs);

std::string report_to_json(const SimReport& report);

}  // namespace dtt
