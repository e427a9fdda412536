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

#include "dtt/types.hpp"

#include <algorithm>
#include <sstream>

namespace dtt {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::memory:
      return "memory";
    case NodeKind::actor_input:
      return "actor_input";
    case NodeKind::actor_output:
      return "actor_output";
  }
  return "memory";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
  if (text == "memory") return NodeKind::memory;
  if (text == "actor_input") return NodeKind::actor_input;
  if (text == "actor_output") return NodeKind::actor_output;
  return std::nullopt;
}

std::vector<DatumId> Operation::distinct_inputs() const {
  std::vector<DatumId> out;
  for (DatumId d : inputs) {
    if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
  }
  return out;
}

int Operation::lanes_required() const {
  if (opcode == "dot") return std::max<int>(1, static_cast<int>(inputs.size() / 2));
  return 1;
}

std::string to_string(const SpaceTimePoint& point) {
  return "(" + point.node + ", " + std::to_string(point.cycle) + ")";
}

std::string to_string(const Movement& m) {
  std::ostringstream os;
  os << "datum " << m.datum << ": " << m.src << "@" << m.start_cycle << " -> " << m.dst << "@"
     << m.end_cycle << " via " << m.wire;
  return os.str();
}

TimingFault::TimingFault(DatumId datum, SpaceTimePoint target, Cycle frontier,
                         const std::string& detail)
    : Error("timing fault: datum " + std::to_string(datum) + " cannot reach " +
            to_string(target) + " (search frontier reached cycle " + std::to_string(frontier) +
            ")" + (detail.empty() ? "" : ": " + detail)),
      datum_(datum),
      target_(std::move(target)),
      frontier_(frontier) {}

}  // namespace dtt
