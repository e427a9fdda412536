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

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dtt/hardware.hpp"
#include "dtt/types.hpp"

namespace dtt {

/// Half-open cycle range [begin, end).
struct Interval {
  Cycle begin = 0;
  Cycle end = kForever;

  bool contains(Cycle c) const { return begin <= c && c < end; }
  bool operator==(const Interval&) const = default;
};

/// One step of a routed path: a wire traversal launched at `launch`, or a
/// wait (empty wire name) of one cycle.
struct PathStep {
  std::string wire;
  Cycle launch = 0;

  bool is_wait() const { return wire.empty(); }
  bool operator==(const PathStep&) const = default;
};

struct Path {
  DatumId datum = 0;
  SpaceTimePoint origin;
  std::vector<PathStep> steps;
  SpaceTimePoint destination;
  /// Exclusive end of the hold at an actor-input destination.
  Cycle release = 0;
  CostUnits cost = 0;
  /// State version the path was computed against.
  std::uint64_t version = 0;

  /// Origin followed by the arrival point of every step.
  std::vector<SpaceTimePoint> points(const HardwareGraph& graph) const;
  bool operator==(const Path& other) const {
    return datum == other.datum && origin == other.origin && steps == other.steps &&
           destination == other.destination && release == other.release &&
           cost == other.cost;
  }
};

/// A scheduled reduction: the result datum is complete at `node` on `cycle`.
struct ReductionRecord {
  DatumId result = 0;
  std::string node;
  Cycle cycle = 0;
  Cycle ready = 0;
  /// Leaf datum and the node it was accumulated from.
  std::vector<std::pair<DatumId, std::string>> leaves;

  bool operator==(const ReductionRecord&) const = default;
};

/// Temporal layout: who is where at every cycle, and which launches each wire
/// carries. All reservations made by routing live here.
class ScheduleState {
 public:
  ScheduleState() = default;
  ScheduleState(std::shared_ptr<const HardwareGraph> graph, Cycle horizon);

  const HardwareGraph& graph() const { return *graph_; }
  std::shared_ptr<const HardwareGraph> shared_graph() const { return graph_; }

  Cycle horizon() const { return horizon_; }
  void extend_horizon(Cycle horizon);

  CostUnits wait_epsilon() const { return wait_epsilon_; }
  void set_wait_epsilon(CostUnits epsilon);

  std::uint64_t version() const { return version_; }
  void bump_version() { ++version_; }

  Bytes datum_size(DatumId datum) const;
  void set_datum_size(DatumId datum, Bytes size);
  const std::map<DatumId, Bytes>& datum_sizes() const { return sizes_; }

  // --- node occupancy -----------------------------------------------------
  /// Datums present in `node` at `cycle`.
  std::set<DatumId> node_history(std::size_t node, Cycle cycle) const;
  Bytes occupancy(std::size_t node, Cycle cycle) const;
  bool holds(std::size_t node, DatumId datum, Cycle cycle) const;
  /// Largest occupancy over `range` if `datum` were present throughout it.
  Bytes peak_with(std::size_t node, DatumId datum, Interval range) const;
  const std::map<DatumId, std::vector<Interval>>& presence(std::size_t node) const {
    return presence_[node];
  }
  /// Records presence without checks; overlapping ranges are merged.
  void add_presence(std::size_t node, DatumId datum, Interval range);
  /// Replaces a node's presence records wholesale (rollback support).
  void restore_presence(std::size_t node, std::map<DatumId, std::vector<Interval>> saved) {
    presence_[node] = std::move(saved);
  }
  /// Largest occupancy of `node` over `range`.
  Bytes peak(std::size_t node, Interval range) const;

  // --- wire occupancy -----------------------------------------------------
  std::span<const DatumId> wire_history(std::size_t wire, Cycle launch) const;
  const std::map<Cycle, std::vector<DatumId>>& wire_history(std::size_t wire) const {
    return wire_use_[wire];
  }
  Bytes wire_load(std::size_t wire, Cycle launch) const;
  bool wire_carries(std::size_t wire, DatumId datum, Cycle launch) const;
  void add_wire_use(std::size_t wire, Cycle launch, DatumId datum);

  // --- schedule products --------------------------------------------------
  const std::vector<Placement>& placements() const { return placements_; }
  void set_placements(std::vector<Placement> placements) { placements_ = std::move(placements); }
  const std::vector<Movement>& movements() const { return movements_; }
  void append_movement(Movement movement) { movements_.push_back(std::move(movement)); }
  const std::vector<Path>& paths() const { return paths_; }
  void append_path(Path path) { paths_.push_back(std::move(path)); }
  const std::vector<ReductionRecord>& reductions() const { return reductions_; }
  void append_reduction(ReductionRecord r) { reductions_.push_back(std::move(r)); }
  const std::vector<MemoryFact>& memory_facts() const { return facts_; }
  void append_fact(MemoryFact fact) { facts_.push_back(std::move(fact)); }

  /// Checks the capacity and bandwidth invariants at every recorded cycle and
  /// that every movement is backed by wire and node records. Returns one line
  /// per problem.
  std::vector<std::string> audit() const;

  /// Same occupancy records and schedule products.
  bool same_schedule(const ScheduleState& other) const;

 private:
  std::shared_ptr<const HardwareGraph> graph_;
  Cycle horizon_ = 0;
  CostUnits wait_epsilon_ = kDefaultWaitEpsilon;
  std::uint64_t version_ = 0;
  std::map<DatumId, Bytes> sizes_;
  std::vector<std::map<DatumId, std::vector<Interval>>> presence_;
  std::vector<std::map<Cycle, std::vector<DatumId>>> wire_use_;
  std::vector<Placement> placements_;
  std::vector<Movement> movements_;
  std::vector<Path> paths_;
  std::vector<ReductionRecord> reductions_;
  std::vector<MemoryFact> facts_;
};

/// Places `data` in `node` from `cycle` (through `until` when given). Throws
/// CapacityError if the node would overflow; the state is unchanged then.
void seed_memory(ScheduleState& state, std::string_view node, std::span<const DatumId> data,
                 Cycle cycle, std::optional<Cycle> until = std::nullopt);

/// Applies a MemoryFact through seed_memory and records it.
void apply_fact(ScheduleState& state, const MemoryFact& fact);

}  // namespace dtt
