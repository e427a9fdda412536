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

#include "dtt/workload.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "json_util.hpp"

namespace dtt {

using detail::JsonPath;
using detail::ojson;

namespace {

bool valid_opcode(const std::string& opcode) {
  if (opcode.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(opcode[0])) || opcode[0] == '_')) return false;
  return std::all_of(opcode.begin(), opcode.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

void validate_workload(const std::vector<Operation>& ops) {
  std::map<DatumId, std::size_t> producer;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& op = ops[i];
    std::string where = "operation " + std::to_string(i);
    if (!valid_opcode(op.opcode)) {
      throw ValidationError(where + ": malformed opcode \"" + op.opcode + "\"");
    }
    if (op.offset < 0) throw ValidationError(where + ": negative offset");
    for (DatumId d : op.outputs) {
      if (std::find(op.inputs.begin(), op.inputs.end(), d) != op.inputs.end()) {
        throw ValidationError(where + ": datum " + std::to_string(d) +
                              " is both input and output");
      }
      auto [it, fresh] = producer.emplace(d, i);
      if (!fresh) {
        throw ValidationError(where + ": datum " + std::to_string(d) +
                              " is already produced by operation " + std::to_string(it->second));
      }
    }
    if (op.opcode == "dot" && op.inputs.size() % 2 != 0) {
      throw ValidationError(where + ": dot needs pairs of multiplicands");
    }
    if (op.is_reduction() && (op.outputs.size() != 1 || op.inputs.empty())) {
      throw ValidationError(where + ": reduce needs leaf inputs and exactly one output");
    }
    for (DatumId d : op.reused) {
      if (std::find(op.inputs.begin(), op.inputs.end(), d) == op.inputs.end()) {
        throw ValidationError(where + ": reused datum " + std::to_string(d) +
                              " is not an input");
      }
    }
  }
}

std::vector<Operation> parse_workload(std::string_view text) {
  ojson doc = detail::parse_document(text, "workload");
  if (!doc.is_array()) throw ParseError("workload: expected a JSON list of operations");
  std::vector<Operation> ops;
  ops.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    JsonPath at("[" + std::to_string(i) + "]");
    const auto& j = doc[i];
    Operation op;
    op.opcode = detail::require<std::string>(j, "opcode", at);
    op.inputs = detail::require_ids(j, "inputs", at);
    op.outputs = detail::require_ids(j, "outputs", at);
    op.offset = detail::optional_field<Cycle>(j, "offset", at, 0);
    if (j.contains("reused")) {
      auto reused = detail::require_ids(j, "reused", at);
      op.reused.insert(reused.begin(), reused.end());
    }
    ops.push_back(std::move(op));
  }
  validate_workload(ops);
  return ops;
}

std::string serialize_workload(const std::vector<Operation>& ops) {
  ojson doc = ojson::array();
  for (const auto& op : ops) {
    ojson j;
    j["opcode"] = op.opcode;
    j["inputs"] = op.inputs;
    j["outputs"] = op.outputs;
    j["offset"] = op.offset;
    j["reused"] = op.reused;
    doc.push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

InitialMemory parse_initial_memory(std::string_view text) {
  ojson doc = detail::parse_document(text, "initial memory");
  if (!doc.is_array()) throw ParseError("initial memory: expected a JSON list");
  InitialMemory mem;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    JsonPath at("[" + std::to_string(i) + "]");
    const auto& j = doc[i];
    MemoryFact fact;
    fact.node = detail::require<std::string>(j, "node", at);
    fact.cycle = detail::optional_field<Cycle>(j, "cycle", at, 0);
    if (fact.cycle < 0) throw ParseError(at.field("cycle") + ": negative");
    if (j.contains("until")) {
      fact.until = detail::require<Cycle>(j, "until", at);
      if (*fact.until < fact.cycle) throw ParseError(at.field("until") + ": before cycle");
    }
    for (const auto& d : detail::require_array(j, "data", at)) {
      if (d.is_number_integer() && d.get<DatumId>() >= 0) {
        fact.data.push_back(d.get<DatumId>());
      } else if (d.is_object()) {
        JsonPath dat(at.field("data"));
        DatumId id = detail::require<DatumId>(d, "id", dat);
        Bytes size = detail::require<Bytes>(d, "size", dat);
        if (id < 0 || size < 1) throw ParseError(dat.str() + ": invalid id or size");
        fact.data.push_back(id);
        mem.sizes[id] = size;
      } else {
        throw ParseError(at.field("data") + ": expected datum ids");
      }
    }
    mem.facts.push_back(std::move(fact));
  }
  return mem;
}

std::string serialize_initial_memory(const InitialMemory& memory) {
  ojson doc = ojson::array();
  for (const auto& f : memory.facts) {
    ojson j;
    j["node"] = f.node;
    j["cycle"] = f.cycle;
    if (f.until) j["until"] = *f.until;
    ojson data = ojson::array();
    for (DatumId d : f.data) {
      auto it = memory.sizes.find(d);
      if (it != memory.sizes.end() && it->second != 1) {
        data.push_back({{"id", d}, {"size", it->second}});
      } else {
        data.push_back(d);
      }
    }
    j["data"] = std::move(data);
    doc.push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace dtt
