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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dtt/types.hpp"

namespace dtt {

/// Spatial layout of an accelerator: memories, buses between them and the
/// processing elements attached to them. Wait wires are implicit (one per
/// node) and never stored.
class HardwareGraph {
 public:
  HardwareGraph() = default;

  /// Builds the lookup tables and checks every invariant; throws
  /// ValidationError on the first violation.
  HardwareGraph(std::vector<NodeSpec> nodes, std::vector<WireSpec> wires,
                std::vector<ActorSpec> actors);

  const std::vector<NodeSpec>& nodes() const { return nodes_; }
  const std::vector<WireSpec>& wires() const { return wires_; }
  const std::vector<ActorSpec>& actors() const { return actors_; }

  std::optional<std::size_t> find_node(std::string_view name) const;
  std::optional<std::size_t> find_wire(std::string_view name) const;
  std::optional<std::size_t> find_actor(std::string_view name) const;

  // Throwing lookups.
  std::size_t node_index(std::string_view name) const;
  std::size_t wire_index(std::string_view name) const;
  std::size_t actor_index(std::string_view name) const;

  const NodeSpec& node(std::string_view name) const { return nodes_[node_index(name)]; }
  const WireSpec& wire(std::string_view name) const { return wires_[wire_index(name)]; }
  const ActorSpec& actor(std::string_view name) const { return actors_[actor_index(name)]; }

  /// Indices of wires leaving / entering a node, in declaration order.
  std::span<const std::size_t> outgoing(std::size_t node) const { return out_[node]; }
  std::span<const std::size_t> incoming(std::size_t node) const { return in_[node]; }

  /// The implicit self-loop of a node.
  WireSpec wait_wire(std::size_t node, CostUnits epsilon) const;

  /// Weak connectivity over explicit wires.
  bool connected() const;

  /// Same nodes and actors with every wire pointing the other way.
  HardwareGraph reversed() const;

  /// Copy without the named wire; throws ValidationError if unknown.
  HardwareGraph without_wire(std::string_view name) const;

  /// Overrides a wire's bandwidth without re-validating. Intended for fault
  /// injection against the verifier.
  void set_bandwidth(std::string_view wire, Bytes bandwidth);

  bool operator==(const HardwareGraph& other) const {
    return nodes_ == other.nodes_ && wires_ == other.wires_ && actors_ == other.actors_;
  }

 private:
  void index();
  void validate() const;

  std::vector<NodeSpec> nodes_;
  std::vector<WireSpec> wires_;
  std::vector<ActorSpec> actors_;
  std::unordered_map<std::string, std::size_t> node_by_name_;
  std::unordered_map<std::string, std::size_t> wire_by_name_;
  std::unordered_map<std::string, std::size_t> actor_by_name_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

/// Parses a hardware description (JSON with "nodes", "wires", "actors").
HardwareGraph parse_hardware(std::string_view text);
std::string serialize_hardware(const HardwareGraph& graph);

/// Returns a copy of `graph` without `wire`.
HardwareGraph remove_wire(const HardwareGraph& graph, std::string_view wire);

/// Converts a decimal cost to fixed-point units; throws ParseError when the
/// value is negative or not a multiple of 1 / kCostScale.
CostUnits cost_from_decimal(double value);

}  // namespace dtt
