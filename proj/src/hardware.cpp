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

#include "dtt/hardware.hpp"

#include <cmath>
#include <numeric>

#include <json.hpp>

#include "json_util.hpp"

namespace dtt {

using json = nlohmann::ordered_json;

HardwareGraph::HardwareGraph(std::vector<NodeSpec> nodes, std::vector<WireSpec> wires,
                             std::vector<ActorSpec> actors)
    : nodes_(std::move(nodes)), wires_(std::move(wires)), actors_(std::move(actors)) {
  index();
  validate();
}

void HardwareGraph::index() {
  node_by_name_.clear();
  wire_by_name_.clear();
  actor_by_name_.clear();
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!node_by_name_.emplace(nodes_[i].name, i).second) {
      throw ValidationError("duplicate node name \"" + nodes_[i].name + "\"");
    }
  }
  for (std::size_t i = 0; i < wires_.size(); ++i) {
    if (!wire_by_name_.emplace(wires_[i].name, i).second) {
      throw ValidationError("duplicate wire name \"" + wires_[i].name + "\"");
    }
  }
  for (std::size_t i = 0; i < actors_.size(); ++i) {
    if (!actor_by_name_.emplace(actors_[i].name, i).second) {
      throw ValidationError("duplicate actor name \"" + actors_[i].name + "\"");
    }
  }
  out_.assign(nodes_.size(), {});
  in_.assign(nodes_.size(), {});
  for (std::size_t i = 0; i < wires_.size(); ++i) {
    const auto& w = wires_[i];
    auto src = find_node(w.src);
    auto dst = find_node(w.dst);
    if (!src) {
      throw ValidationError("wire \"" + w.name + "\" references unknown node \"" + w.src + "\"");
    }
    if (!dst) {
      throw ValidationError("wire \"" + w.name + "\" references unknown node \"" + w.dst + "\"");
    }
    out_[*src].push_back(i);
    in_[*dst].push_back(i);
  }
}

void HardwareGraph::validate() const {
  if (nodes_.empty()) throw ValidationError("graph has no nodes");
  for (const auto& n : nodes_) {
    if (n.name.empty()) throw ValidationError("node with empty name");
    if (n.capacity && *n.capacity < 1) {
      throw ValidationError("node \"" + n.name + "\" has non-positive capacity");
    }
    if (!n.capacity && n.kind != NodeKind::memory) {
      throw ValidationError("node \"" + n.name + "\" is unbounded but not a memory");
    }
  }
  for (const auto& w : wires_) {
    if (w.is_wait) throw ValidationError("wire \"" + w.name + "\": wait wires are implicit");
    if (w.src == w.dst) throw ValidationError("wire \"" + w.name + "\" is a self-loop");
    if (w.delay < 1) throw ValidationError("wire \"" + w.name + "\" has delay < 1");
    if (w.bandwidth < 1) throw ValidationError("wire \"" + w.name + "\" has bandwidth < 1");
    if (w.cost < 0) throw ValidationError("wire \"" + w.name + "\" has negative cost");
  }
  for (const auto& a : actors_) {
    auto in = find_node(a.input_node);
    auto out = find_node(a.output_node);
    if (!in) {
      throw ValidationError("actor \"" + a.name + "\" references unknown node \"" +
                            a.input_node + "\"");
    }
    if (!out) {
      throw ValidationError("actor \"" + a.name + "\" references unknown node \"" +
                            a.output_node + "\"");
    }
    if (nodes_[*in].kind != NodeKind::actor_input) {
      throw ValidationError("actor \"" + a.name + "\": input node \"" + a.input_node +
                            "\" is not of kind actor_input");
    }
    if (nodes_[*out].kind != NodeKind::actor_output) {
      throw ValidationError("actor \"" + a.name + "\": output node \"" + a.output_node +
                            "\" is not of kind actor_output");
    }
    if (a.cooldown < 0) throw ValidationError("actor \"" + a.name + "\" has negative cooldown");
    if (a.op_delay < 1) throw ValidationError("actor \"" + a.name + "\" has op_delay < 1");
    if (a.distribution_latency < 0) {
      throw ValidationError("actor \"" + a.name + "\" has negative distribution_latency");
    }
    if (a.lane_count < 1) throw ValidationError("actor \"" + a.name + "\" has no lanes");
    // One lane multiplies a pair of one-byte operands.
    if (a.buffer_size < 1 || Bytes{a.lane_count} * 2 > a.buffer_size) {
      throw ValidationError("actor \"" + a.name + "\": " + std::to_string(a.lane_count) +
                            " lanes do not fit a " + std::to_string(a.buffer_size) +
                            "-byte operand buffer");
    }
  }
  if (!connected()) throw ValidationError("graph is not connected");
}

std::optional<std::size_t> HardwareGraph::find_node(std::string_view name) const {
  auto it = node_by_name_.find(std::string(name));
  if (it == node_by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> HardwareGraph::find_wire(std::string_view name) const {
  auto it = wire_by_name_.find(std::string(name));
  if (it == wire_by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> HardwareGraph::find_actor(std::string_view name) const {
  auto it = actor_by_name_.find(std::string(name));
  if (it == actor_by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t HardwareGraph::node_index(std::string_view name) const {
  if (auto i = find_node(name)) return *i;
  throw ValidationError("unknown node \"" + std::string(name) + "\"");
}

std::size_t HardwareGraph::wire_index(std::string_view name) const {
  if (auto i = find_wire(name)) return *i;
  throw ValidationError("unknown wire \"" + std::string(name) + "\"");
}

std::size_t HardwareGraph::actor_index(std::string_view name) const {
  if (auto i = find_actor(name)) return *i;
  throw ValidationError("unknown actor \"" + std::string(name) + "\"");
}

WireSpec HardwareGraph::wait_wire(std::size_t node, CostUnits epsilon) const {
  WireSpec w;
  w.name = "wait:" + nodes_[node].name;
  w.src = w.dst = nodes_[node].name;
  w.bandwidth = std::numeric_limits<Bytes>::max();
  w.cost = epsilon;
  w.delay = 1;
  w.is_wait = true;
  return w;
}

bool HardwareGraph::connected() const {
  if (nodes_.empty()) return false;
  std::vector<std::size_t> parent(nodes_.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = nodes_.size();
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    for (std::size_t w : out_[n]) {
      auto a = find(n);
      auto b = find(*find_node(wires_[w].dst));
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  return components == 1;
}

HardwareGraph HardwareGraph::reversed() const {
  auto wires = wires_;
  for (auto& w : wires) std::swap(w.src, w.dst);
  HardwareGraph g;
  g.nodes_ = nodes_;
  g.wires_ = std::move(wires);
  g.actors_ = actors_;
  g.index();
  return g;
}

HardwareGraph HardwareGraph::without_wire(std::string_view name) const {
  auto idx = wire_index(name);
  auto wires = wires_;
  wires.erase(wires.begin() + static_cast<std::ptrdiff_t>(idx));
  return HardwareGraph(nodes_, std::move(wires), actors_);
}

void HardwareGraph::set_bandwidth(std::string_view wire, Bytes bandwidth) {
  wires_[wire_index(wire)].bandwidth = bandwidth;
}

HardwareGraph remove_wire(const HardwareGraph& graph, std::string_view wire) {
  return graph.without_wire(wire);
}

CostUnits cost_from_decimal(double value) {
  if (!std::isfinite(value) || value < 0) {
    throw ParseError("cost must be a finite non-negative number");
  }
  double scaled = value * static_cast<double>(kCostScale);
  double rounded = std::round(scaled);
  if (std::fabs(scaled - rounded) > 1e-6) {
    throw ParseError("cost " + std::to_string(value) + " is not a multiple of 2^-20");
  }
  return static_cast<CostUnits>(rounded);
}

namespace {

NodeSpec node_from_json(const json& j, std::size_t i) {
  detail::JsonPath at("nodes[" + std::to_string(i) + "]");
  NodeSpec n;
  n.name = detail::require<std::string>(j, "name", at);
  const auto& cap = detail::require_field(j, "capacity", at);
  if (cap.is_string()) {
    if (cap.get<std::string>() != "unbounded") {
      throw ParseError(at.str() + ".capacity: expected integer or \"unbounded\"");
    }
  } else if (cap.is_number_integer()) {
    n.capacity = cap.get<Bytes>();
  } else {
    throw ParseError(at.str() + ".capacity: expected integer or \"unbounded\"");
  }
  auto kind_text = detail::require<std::string>(j, "kind", at);
  auto kind = parse_node_kind(kind_text);
  if (!kind) throw ParseError(at.str() + ".kind: unknown kind \"" + kind_text + "\"");
  n.kind = *kind;
  return n;
}

WireSpec wire_from_json(const json& j, std::size_t i) {
  detail::JsonPath at("wires[" + std::to_string(i) + "]");
  WireSpec w;
  w.name = detail::require<std::string>(j, "name", at);
  w.src = detail::require<std::string>(j, "src", at);
  w.dst = detail::require<std::string>(j, "dst", at);
  w.bandwidth = detail::require<Bytes>(j, "bandwidth", at);
  const auto& cost = detail::require_field(j, "cost", at);
  if (!cost.is_number()) throw ParseError(at.str() + ".cost: expected number");
  w.cost = cost_from_decimal(cost.get<double>());
  w.delay = detail::require<Cycle>(j, "delay", at);
  return w;
}

ActorSpec actor_from_json(const json& j, std::size_t i) {
  detail::JsonPath at("actors[" + std::to_string(i) + "]");
  ActorSpec a;
  a.name = detail::require<std::string>(j, "name", at);
  a.input_node = detail::require<std::string>(j, "input_node", at);
  a.output_node = detail::require<std::string>(j, "output_node", at);
  for (const auto& c : detail::require_array(j, "capabilities", at)) {
    if (!c.is_string()) throw ParseError(at.str() + ".capabilities: expected strings");
    a.capabilities.insert(c.get<std::string>());
  }
  a.cooldown = detail::require<Cycle>(j, "cooldown", at);
  a.op_delay = detail::require<Cycle>(j, "op_delay", at);
  a.distribution_latency = detail::require<Cycle>(j, "distribution_latency", at);
  a.buffer_size = detail::require<Bytes>(j, "buffer_size", at);
  a.lane_count = detail::require<int>(j, "lane_count", at);
  return a;
}

}  // namespace

HardwareGraph parse_hardware(std::string_view text) {
  json doc = detail::parse_document(text, "hardware description");
  if (!doc.is_object()) throw ParseError("hardware description: expected a JSON object");
  detail::JsonPath root("");
  std::vector<NodeSpec> nodes;
  std::vector<WireSpec> wires;
  std::vector<ActorSpec> actors;
  const auto& jn = detail::require_array(doc, "nodes", root);
  for (std::size_t i = 0; i < jn.size(); ++i) nodes.push_back(node_from_json(jn[i], i));
  const auto& jw = detail::require_array(doc, "wires", root);
  for (std::size_t i = 0; i < jw.size(); ++i) wires.push_back(wire_from_json(jw[i], i));
  if (doc.contains("actors")) {
    const auto& ja = detail::require_array(doc, "actors", root);
    for (std::size_t i = 0; i < ja.size(); ++i) actors.push_back(actor_from_json(ja[i], i));
  }
  if (nodes.empty()) throw ValidationError("graph has no nodes");
  return HardwareGraph(std::move(nodes), std::move(wires), std::move(actors));
}

std::string serialize_hardware(const HardwareGraph& graph) {
  json doc;
  doc["nodes"] = json::array();
  for (const auto& n : graph.nodes()) {
    json jn;
    jn["name"] = n.name;
    if (n.capacity) {
      jn["capacity"] = *n.capacity;
    } else {
      jn["capacity"] = "unbounded";
    }
    jn["kind"] = to_string(n.kind);
    doc["nodes"].push_back(std::move(jn));
  }
  doc["wires"] = json::array();
  for (const auto& w : graph.wires()) {
    json jw;
    jw["name"] = w.name;
    jw["src"] = w.src;
    jw["dst"] = w.dst;
    jw["bandwidth"] = w.bandwidth;
    if (w.cost % kCostScale == 0) {
      jw["cost"] = w.cost / kCostScale;
    } else {
      jw["cost"] = to_energy(w.cost);
    }
    jw["delay"] = w.delay;
    doc["wires"].push_back(std::move(jw));
  }
  doc["actors"] = json::array();
  for (const auto& a : graph.actors()) {
    json ja;
    ja["name"] = a.name;
    ja["input_node"] = a.input_node;
    ja["output_node"] = a.output_node;
    ja["capabilities"] = a.capabilities;
    ja["cooldown"] = a.cooldown;
    ja["op_delay"] = a.op_delay;
    ja["distribution_latency"] = a.distribution_latency;
    ja["buffer_size"] = a.buffer_size;
    ja["lane_count"] = a.lane_count;
    doc["actors"].push_back(std::move(ja));
  }
  return doc.dump(2) + "\n";
}

}  // namespace dtt
