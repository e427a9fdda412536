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
#include <string_view>
#include <vector>

#include "dtt/types.hpp"

namespace dtt {

/// Parses a workload: a JSON list of {opcode, inputs, outputs, offset,
/// reused}. Order is preserved; placing depends on it.
std::vector<Operation> parse_workload(std::string_view text);
std::string serialize_workload(const std::vector<Operation>& ops);

/// Checks the operation invariants across a whole workload.
void validate_workload(const std::vector<Operation>& ops);

/// Initial memory: a JSON list of {node, cycle, data[, until]}. A data entry
/// is either an id or {"id": .., "size": ..}; sizes land in `sizes`.
struct InitialMemory {
  std::vector<MemoryFact> facts;
  std::map<DatumId, Bytes> sizes;
};

InitialMemory parse_initial_memory(std::string_view text);
std::string serialize_initial_memory(const InitialMemory& memory);

}  // namespace dtt
