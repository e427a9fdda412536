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

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtt {

using DatumId = std::int64_t;
using Cycle = std::int64_t;
using Bytes = std::int64_t;

/// Energy in fixed-point units: kCostScale units make one energy unit.
/// Keeping path costs integral makes Dijkstra comparisons exact.
using CostUnits = std::int64_t;
inline constexpr CostUnits kCostScale = CostUnits{1} << 20;
inline constexpr CostUnits kDefaultWaitEpsilon = 1;

/// End marker for presence that never expires.
inline constexpr Cycle kForever = std::numeric_limits<Cycle>::max() / 4;

inline double to_energy(CostUnits units) {
  return static_cast<double>(units) / static_cast<double>(kCostScale);
}

enum class NodeKind { memory, actor_input, actor_output };

const char* to_string(NodeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view text);

/// Nodes with kind actor_input release their datums on consumption; every
/// other kind keeps a datum from its arrival onward.
inline bool retains(NodeKind kind) { return kind != NodeKind::actor_input; }

struct NodeSpec {
  std::string name;
  std::optional<Bytes> capacity;  // nullopt: unbounded
  NodeKind kind = NodeKind::memory;

  bool operator==(const NodeSpec&) const = default;
};

struct WireSpec {
  std::string name;
  std::string src;
  std::string dst;
  Bytes bandwidth = 1;  // bytes per launch cycle
  CostUnits cost = 0;   // per datum traversal
  Cycle delay = 1;
  bool is_wait = false;

  bool operator==(const WireSpec&) const = default;
};

struct ActorSpec {
  std::string name;
  std::string input_node;
  std::string output_node;
  std::set<std::string> capabilities;
  Cycle cooldown = 0;
  Cycle op_delay = 1;
  Cycle distribution_latency = 0;
  Bytes buffer_size = 2;
  int lane_count = 1;

  bool can_perform(const std::string& opcode) const {
    return capabilities.contains(opcode);
  }
  bool operator==(const ActorSpec&) const = default;
};

struct Operation {
  std::string opcode;
  std::vector<DatumId> inputs;
  std::vector<DatumId> outputs;
  Cycle offset = 0;
  std::set<DatumId> reused;

  /// Distinct input ids in first-occurrence order.
  std::vector<DatumId> distinct_inputs() const;
  /// Lanes this operation occupies on an actor: one per multiplicand pair for
  /// "dot", one otherwise.
  int lanes_required() const;
  bool is_reduction() const { return opcode == "reduce"; }

  bool operator==(const Operation&) const = default;
};

struct Placement {
  std::size_t op_index = 0;
  std::string actor;
  Cycle arrival_cycle = 0;

  auto operator<=>(const Placement&) const = default;
};

struct Movement {
  DatumId datum = 0;
  std::string src;
  Cycle start_cycle = 0;
  std::string dst;
  Cycle end_cycle = 0;
  std::string wire;

  auto operator<=>(const Movement&) const = default;
};

struct SpaceTimePoint {
  std::string node;
  Cycle cycle = 0;

  auto operator<=>(const SpaceTimePoint&) const = default;
};

std::string to_string(const SpaceTimePoint& point);
std::string to_string(const Movement& movement);

/// Presence facts that do not come from routing: initial memory contents and
/// operation results registered after placing.
struct MemoryFact {
  std::string node;
  Cycle cycle = 0;
  std::optional<Cycle> until;  // last cycle present; nullopt: forever
  std::vector<DatumId> data;
  bool produced = false;

  bool operator==(const MemoryFact&) const = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed document (syntax or schema).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class PlacingError : public Error {
 public:
  using Error::Error;
};

class StaleStateError : public Error {
 public:
  using Error::Error;
};

/// No admissible path reaches the target at the requested cycle.
class TimingFault : public Error {
 public:
  TimingFault(DatumId datum, SpaceTimePoint target, Cycle frontier,
              const std::string& detail);

  DatumId datum() const { return datum_; }
  const SpaceTimePoint& target() const { return target_; }
  Cycle frontier() const { return frontier_; }

 private:
  DatumId datum_;
  SpaceTimePoint target_;
  Cycle frontier_;
};

}  // namespace dtt
