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

// The simulator deliberately keeps its own bookkeeping (plain per-cycle maps)
// and shares nothing with ScheduleState, so that agreement is a cross-check.

#include "dtt/sim.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace dtt {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::bandwidth:
      return "bandwidth";
    case ViolationKind::capacity:
      return "capacity";
    case ViolationKind::missing_datum:
      return "missing_datum";
    case ViolationKind::late_packet:
      return "late_packet";
    case ViolationKind::invalid_movement:
      return "invalid_movement";
  }
  return "bandwidth";
}

std::size_t SimReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; }));
}

namespace {

int peak_queue(const std::vector<ControlPacket>& packets) {
  std::map<Cycle, int> per_cycle;
  int peak = 0;
  for (const auto& p : packets) peak = std::max(peak, ++per_cycle[p.issue_cycle]);
  return peak;
}

std::string late_subject(const ControlPacket& p) {
  return "packet for " + to_string(p.movement) + " issued at " + std::to_string(p.issue_cycle);
}

}  // namespace

PacketPlan emit_control_packets(const std::vector<Movement>& movements, Cycle control_latency,
                                Cycle slack) {
  if (control_latency < 0 || slack < 0) {
    throw ValidationError("control latency and slack must be non-negative");
  }
  PacketPlan plan;
  for (const auto& m : movements) {
    ControlPacket p{m, m.start_cycle - control_latency - slack, m.start_cycle, control_latency,
                    m.src};
    plan.packets.push_back(std::move(p));
  }
  std::stable_sort(plan.packets.begin(), plan.packets.end(),
                   [](const ControlPacket& a, const ControlPacket& b) {
                     return a.issue_cycle < b.issue_cycle;
                   });
  for (const auto& p : plan.packets) {
    if (p.late()) plan.late.push_back({ViolationKind::late_packet, p.issue_cycle, late_subject(p)});
  }
  plan.controller_peak_queue = peak_queue(plan.packets);
  return plan;
}

namespace {

class Simulator {
 public:
  Simulator(const HardwareGraph& g, const std::vector<ControlPacket>& packets,
            const SimInputs& in)
      : g_(g), packets_(packets), in_(in) {
    for (const auto& n : g.nodes()) holdings_[n.name];
    for (const auto& p : packets) {
      const auto& m = p.movement;
      arrivals_at_[{m.dst, m.datum}].push_back(m.end_cycle);
      departures_[{m.src, m.datum}].push_back(m.start_cycle);
    }
    for (const auto& f : in.seeds) {
      if (f.produced) continue;
      for (DatumId d : f.data) arrivals_at_[{f.node, d}].push_back(f.cycle);
    }
    for (auto& [k, v] : arrivals_at_) std::sort(v.begin(), v.end());
  }

  SimReport run() {
    SimReport report;
    report.controller_peak_queue = peak_queue(packets_);
    for (const auto& p : packets_) {
      if (p.late()) add(ViolationKind::late_packet, p.issue_cycle, late_subject(p));
    }

    Cycle first = 0;
    Cycle last = 0;
    for (const auto& p : packets_) {
      first = std::min(first, p.consume_at);
      last = std::max({last, p.consume_at, p.movement.end_cycle});
    }
    for (const auto& pl : in_.placements) {
      last = std::max(last, pl.arrival_cycle + g_.actor(pl.actor).op_delay);
    }
    for (const auto& f : in_.seeds) last = std::max(last, f.cycle);
    for (const auto& r : in_.reductions) last = std::max({last, r.ready, r.cycle});

    for (Cycle c = first; c <= last + 1; ++c) {
      remove_expired(c);
      add_arrivals(c);
      launch(c);
      check_placements(c);
      audit_capacity(c);
    }
    report.violations = std::move(violations_);
    report.completed_ops = completed_;
    return report;
  }

 private:
  using Key = std::pair<std::string, DatumId>;

  Bytes size(DatumId d) const {
    auto it = in_.sizes.find(d);
    return it == in_.sizes.end() ? 1 : it->second;
  }

  void add(ViolationKind kind, Cycle c, std::string subject) {
    violations_.push_back({kind, c, std::move(subject)});
  }

  // When a datum delivered to an actor-input node at `a` leaves the buffer.
  Cycle release_at(const std::string& node, DatumId d, Cycle a) const {
    Cycle next = kForever;
    if (auto it = arrivals_at_.find({node, d}); it != arrivals_at_.end()) {
      auto up = std::upper_bound(it->second.begin(), it->second.end(), a);
      if (up != it->second.end()) next = *up;
    }
    std::optional<Cycle> release;
    for (const auto& p : in_.placements) {
      const auto& actor = g_.actor(p.actor);
      if (actor.input_node != node || p.arrival_cycle < a || p.arrival_cycle >= next) continue;
      const auto& op = in_.workload.at(p.op_index);
      if (std::find(op.inputs.begin(), op.inputs.end(), d) == op.inputs.end()) continue;
      if (op.reused.contains(d)) return kForever;
      release = std::max(release.value_or(0), p.arrival_cycle + actor.op_delay);
    }
    if (auto it = departures_.find({node, d}); it != departures_.end()) {
      for (Cycle s : it->second) {
        if (s >= a && s < next) release = std::max(release.value_or(0), s + 1);
      }
    }
    return release.value_or(kForever);
  }

  void put(const std::string& node, DatumId d, Cycle c, std::optional<Cycle> until = {}) {
    const auto& spec = g_.node(node);
    Cycle release = kForever;
    if (until) {
      release = *until + 1;
    } else if (spec.kind == NodeKind::actor_input) {
      release = release_at(node, d, c);
    }
    auto& h = holdings_[node];
    auto [it, fresh] = h.emplace(d, release);
    if (!fresh) it->second = std::max(it->second, release);
  }

  void remove_expired(Cycle c) {
    for (auto& [node, h] : holdings_) {
      std::erase_if(h, [c](const auto& kv) { return kv.second <= c; });
    }
  }

  void add_arrivals(Cycle c) {
    for (const auto& f : in_.seeds) {
      if (f.produced || f.cycle != c) continue;
      for (DatumId d : f.data) put(f.node, d, c, f.until);
    }
    for (const auto& r : in_.reductions) {
      if (r.ready != c) continue;
      for (const auto& [leaf, node] : r.leaves) put(node, r.result, c);
    }
    if (auto it = in_flight_.find(c); it != in_flight_.end()) {
      for (const auto& [node, d] : it->second) put(node, d, c);
      in_flight_.erase(it);
    }
    if (auto it = produced_.find(c); it != produced_.end()) {
      for (const auto& [node, d] : it->second) put(node, d, c);
      produced_.erase(it);
    }
  }

  void launch(Cycle c) {
    std::map<std::string, std::vector<DatumId>> load;
    for (const auto& p : packets_) {
      if (p.consume_at != c) continue;
      const auto& m = p.movement;
      auto w = g_.find_wire(m.wire);
      if (!w) {
        add(ViolationKind::invalid_movement, c, "unknown wire in " + to_string(m));
        continue;
      }
      const auto& spec = g_.wires()[*w];
      if (spec.src != m.src || spec.dst != m.dst || m.end_cycle - m.start_cycle != spec.delay ||
          m.start_cycle != c) {
        add(ViolationKind::invalid_movement, c, "movement does not match wire: " + to_string(m));
        continue;
      }
      if (!holdings_[m.src].contains(m.datum)) {
        add(ViolationKind::missing_datum, c,
            "datum " + std::to_string(m.datum) + " not at " + m.src + " for " + to_string(m));
        continue;
      }
      auto& l = load[spec.name];
      if (std::find(l.begin(), l.end(), m.datum) == l.end()) l.push_back(m.datum);
      in_flight_[m.end_cycle].emplace_back(m.dst, m.datum);
    }
    for (const auto& [wire, data] : load) {
      Bytes total = 0;
      for (DatumId d : data) total += size(d);
      Bytes bw = g_.wire(wire).bandwidth;
      if (total > bw) {
        std::ostringstream os;
        os << "wire " << wire << " carries " << total << " bytes (bandwidth " << bw << ")";
        add(ViolationKind::bandwidth, c, os.str());
      }
    }
  }

  void check_placements(Cycle c) {
    for (const auto& p : in_.placements) {
      if (p.arrival_cycle != c) continue;
      const auto& actor = g_.actor(p.actor);
      const auto& op = in_.workload.at(p.op_index);
      const auto& h = holdings_[actor.input_node];
      bool ok = true;
      for (DatumId d : op.distinct_inputs()) {
        if (h.contains(d)) continue;
        ok = false;
        add(ViolationKind::missing_datum, c,
            "operation " + std::to_string(p.op_index) + " needs datum " + std::to_string(d) +
                " at " + actor.input_node);
      }
      if (!ok) continue;
      ++completed_;
      for (DatumId d : op.outputs) produced_[c + actor.op_delay].emplace_back(actor.output_node, d);
    }
  }

  void audit_capacity(Cycle c) {
    for (const auto& n : g_.nodes()) {
      if (!n.capacity) continue;
      Bytes total = 0;
      for (const auto& [d, r] : holdings_[n.name]) total += size(d);
      if (total > *n.capacity) {
        std::ostringstream os;
        os << "node " << n.name << " holds " << total << " bytes (capacity " << *n.capacity << ")";
        add(ViolationKind::capacity, c, os.str());
      }
    }
  }

  const HardwareGraph& g_;
  const std::vector<ControlPacket>& packets_;
  const SimInputs& in_;
  std::map<std::string, std::map<DatumId, Cycle>> holdings_;
  std::map<Key, std::vector<Cycle>> arrivals_at_;
  std::map<Key, std::vector<Cycle>> departures_;
  std::map<Cycle, std::vector<std::pair<std::string, DatumId>>> in_flight_;
  std::map<Cycle, std::vector<std::pair<std::string, DatumId>>> produced_;
  std::vector<Violation> violations_;
  int completed_ = 0;
};

}  // namespace

SimReport simulate(const HardwareGraph& graph, const std::vector<ControlPacket>& packets,
                   const SimInputs& inputs) {
  return Simulator(graph, packets, inputs).run();
}

std::string report_to_json(const SimReport& report) {
  nlohmann::ordered_json j;
  j["ok"] = report.ok();
  j["completed_ops"] = report.completed_ops;
  j["controller_peak_queue"] = report.controller_peak_queue;
  auto v = nlohmann::ordered_json::array();
  for (const auto& x : report.violations) {
    v.push_back({{"kind", to_string(x.kind)}, {"cycle", x.cycle}, {"subject", x.subject}});
  }
  j["violations"] = std::move(v);
  return j.dump(2) + "\n";
}

}  // namespace dtt
