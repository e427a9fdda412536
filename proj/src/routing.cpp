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

#include "dtt/routing.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>
#include <tuple>

namespace dtt {

namespace {

constexpr CostUnits kUnreached = std::numeric_limits<CostUnits>::max();

bool wire_ok(const ScheduleState& st, std::size_t w, DatumId d, Cycle launch) {
  if (st.wire_carries(w, d, launch)) return true;
  return st.wire_load(w, launch) + st.datum_size(d) <= st.graph().wires()[w].bandwidth;
}

// Hold rule at an arrival point that is not a request's destination.
bool arrival_ok(const ScheduleState& st, DatumId d, std::size_t v, Cycle a) {
  const auto& spec = st.graph().nodes()[v];
  if (!spec.capacity) return true;
  if (retains(spec.kind)) return st.peak_with(v, d, {a, kForever}) <= *spec.capacity;
  if (st.holds(v, d, a)) return true;
  return st.occupancy(v, a) + st.datum_size(d) <= *spec.capacity;
}

bool destination_ok(const ScheduleState& st, DatumId d, std::size_t v, Cycle a, Cycle release) {
  const auto& spec = st.graph().nodes()[v];
  if (!spec.capacity) return true;
  Interval hold{a, retains(spec.kind) ? kForever : std::max(release, a + 1)};
  return st.peak_with(v, d, hold) <= *spec.capacity;
}

// Dijkstra over the implicit time-expanded graph restricted to cycles
// [base, target.cycle]. Vertices are (node, cycle); edges are wire launches
// and one-cycle waits.
class Search {
 public:
  Search(const ScheduleState& st, DatumId datum, const SpaceTimePoint& target, Cycle release,
         Cycle base)
      : st_(st),
        g_(st.graph()),
        d_(datum),
        tnode_(g_.node_index(target.node)),
        tcycle_(target.cycle),
        release_(release),
        base_(base),
        span_(target.cycle - base + 1),
        dist_(g_.nodes().size() * static_cast<std::size_t>(span_), kUnreached),
        hold_ok_(dist_.size(), -1) {}

  void add_source(std::size_t node, Cycle cycle) {
    auto i = idx(node, cycle);
    if (dist_[i] == 0) return;
    dist_[i] = 0;
    heap_.emplace(0, cycle, node);
  }

  template <typename IsSource>
  Path run(IsSource&& is_source, const SpaceTimePoint& target) {
    const auto tidx = idx(tnode_, tcycle_);
    const CostUnits eps = st_.wait_epsilon();
    while (!heap_.empty()) {
      auto [du, c, n] = heap_.top();
      if (dist_[tidx] != kUnreached && du > dist_[tidx]) break;
      heap_.pop();
      if (du != dist_[idx(n, c)]) continue;
      frontier_ = std::max(frontier_, c);
      if (c == tcycle_) continue;
      if (hold(n, c + 1)) relax(n, c + 1, du + eps);
      for (std::size_t w : g_.outgoing(n)) {
        const auto& spec = g_.wires()[w];
        std::size_t v = g_.node_index(spec.dst);
        Cycle a = c + spec.delay;
        if (a > tcycle_) continue;
        if (!wire_ok(st_, w, d_, c) || !hold(v, a)) continue;
        relax(v, a, du + spec.cost);
      }
    }
    if (dist_[tidx] == kUnreached) {
      throw TimingFault(d_, target, frontier_, "no admissible path");
    }
    return extract(std::forward<IsSource>(is_source), target);
  }

  Cycle frontier() const { return frontier_; }

 private:
  std::size_t idx(std::size_t node, Cycle c) const {
    return node * static_cast<std::size_t>(span_) + static_cast<std::size_t>(c - base_);
  }

  bool hold(std::size_t v, Cycle a) {
    auto& memo = hold_ok_[idx(v, a)];
    if (memo < 0) {
      bool ok = (v == tnode_ && a == tcycle_) ? destination_ok(st_, d_, v, a, release_)
                                              : arrival_ok(st_, d_, v, a);
      memo = ok ? 1 : 0;
    }
    return memo == 1;
  }

  void relax(std::size_t v, Cycle a, CostUnits cost) {
    auto& cur = dist_[idx(v, a)];
    if (cost < cur) {
      cur = cost;
      heap_.emplace(cost, a, v);
    }
  }

  bool tight(std::size_t u, Cycle c, CostUnits edge, CostUnits target_dist) const {
    if (c < base_) return false;
    CostUnits du = dist_[idx(u, c)];
    return du != kUnreached && du + edge == target_dist;
  }

  // Walks tight predecessors back from the target. Preference: stop at a
  // source, then a wait, then the earliest wire launch, then declaration order.
  template <typename IsSource>
  Path extract(IsSource&& is_source, const SpaceTimePoint& target) {
    Path path;
    path.datum = d_;
    path.destination = target;
    path.release = release_;
    path.cost = dist_[idx(tnode_, tcycle_)];
    path.version = st_.version();
    std::size_t n = tnode_;
    Cycle c = tcycle_;
    std::vector<PathStep> steps;
    while (!is_source(n, c)) {
      CostUnits dx = dist_[idx(n, c)];
      if (hold(n, c) && tight(n, c - 1, st_.wait_epsilon(), dx)) {
        steps.push_back({"", c - 1});
        --c;
        continue;
      }
      std::optional<std::size_t> best;
      Cycle best_launch = 0;
      for (std::size_t w : g_.incoming(n)) {
        const auto& spec = g_.wires()[w];
        Cycle launch = c - spec.delay;
        std::size_t u = g_.node_index(spec.src);
        if (!tight(u, launch, spec.cost, dx)) continue;
        if (!wire_ok(st_, w, d_, launch) || !hold(n, c)) continue;
        if (!best || launch < best_launch) {
          best = w;
          best_launch = launch;
        }
      }
      if (!best) throw Error("internal: broken predecessor chain while extracting a path");
      const auto& spec = g_.wires()[*best];
      steps.push_back({spec.name, best_launch});
      n = g_.node_index(spec.src);
      c = best_launch;
    }
    std::reverse(steps.begin(), steps.end());
    path.steps = std::move(steps);
    path.origin = {g_.nodes()[n].name, c};
    return path;
  }

  using Entry = std::tuple<CostUnits, Cycle, std::size_t>;

  const ScheduleState& st_;
  const HardwareGraph& g_;
  DatumId d_;
  std::size_t tnode_;
  Cycle tcycle_;
  Cycle release_;
  Cycle base_;
  Cycle span_;
  std::vector<CostUnits> dist_;
  std::vector<signed char> hold_ok_;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
  Cycle frontier_ = -1;
};

void check_target(const ScheduleState& st, const SpaceTimePoint& target) {
  if (!st.graph().find_node(target.node)) {
    throw ValidationError("unknown target node \"" + target.node + "\"");
  }
  if (target.cycle < 0 || target.cycle > st.horizon()) {
    throw ValidationError("target cycle " + std::to_string(target.cycle) +
                          " outside the horizon [0, " + std::to_string(st.horizon()) + "]");
  }
}

}  // namespace

std::vector<SpaceTimePoint> locate_datum(const ScheduleState& state, DatumId datum) {
  std::vector<SpaceTimePoint> out;
  const auto& g = state.graph();
  for (std::size_t n = 0; n < g.nodes().size(); ++n) {
    auto it = state.presence(n).find(datum);
    if (it == state.presence(n).end()) continue;
    for (const auto& r : it->second) {
      Cycle end = std::min(r.end, state.horizon() + 1);
      for (Cycle c = std::max<Cycle>(r.begin, 0); c < end; ++c) {
        out.push_back({g.nodes()[n].name, c});
      }
    }
  }
  if (out.empty()) {
    throw ValidationError("datum " + std::to_string(datum) +
                          " is not present anywhere; it was never seeded or produced");
  }
  return out;
}

bool edge_admissible(const ScheduleState& state, DatumId datum, std::size_t node,
                     std::optional<std::size_t> wire, Cycle launch) {
  if (!wire) return arrival_ok(state, datum, node, launch + 1);
  const auto& spec = state.graph().wires()[*wire];
  if (state.graph().node_index(spec.src) != node) return false;
  return wire_ok(state, *wire, datum, launch) &&
         arrival_ok(state, datum, state.graph().node_index(spec.dst), launch + spec.delay);
}

bool target_admissible(const ScheduleState& state, const RouteRequest& request) {
  return destination_ok(state, request.datum, state.graph().node_index(request.target.node),
                        request.target.cycle, request.release);
}

Path route_datum(const ScheduleState& state, const RouteRequest& request) {
  check_target(state, request.target);
  const auto& g = state.graph();
  const DatumId d = request.datum;
  const Cycle tc = request.target.cycle;
  Search search(state, d, request.target, request.release, 0);
  bool any = false;
  for (std::size_t n = 0; n < g.nodes().size(); ++n) {
    auto it = state.presence(n).find(d);
    if (it == state.presence(n).end()) continue;
    for (const auto& r : it->second) {
      for (Cycle c = std::max<Cycle>(r.begin, 0); c < std::min(r.end, tc + 1); ++c) {
        search.add_source(n, c);
        any = true;
      }
    }
  }
  if (!any) {
    locate_datum(state, d);  // throws if the datum is unknown everywhere
    throw TimingFault(d, request.target, -1, "datum is not present anywhere by that cycle");
  }
  if (!target_admissible(state, request)) {
    throw TimingFault(d, request.target, -1,
                      "target node cannot hold the datum until cycle " +
                          std::to_string(request.release));
  }
  return search.run(
      [&](std::size_t n, Cycle c) { return state.holds(n, d, c); }, request.target);
}

Path route_datum(const ScheduleState& state, DatumId datum, const SpaceTimePoint& target) {
  return route_datum(state, RouteRequest{datum, target, target.cycle + 1});
}

Path route_leg(const ScheduleState& state, DatumId datum, const SpaceTimePoint& from,
               const SpaceTimePoint& to, Cycle release) {
  check_target(state, to);
  if (from.cycle < 0 || from.cycle > to.cycle) {
    throw TimingFault(datum, to, -1, "leg starts after it ends");
  }
  const auto& g = state.graph();
  std::size_t src = g.node_index(from.node);
  if (!destination_ok(state, datum, g.node_index(to.node), to.cycle, release)) {
    throw TimingFault(datum, to, -1, "target node cannot hold the datum");
  }
  Search search(state, datum, to, release, from.cycle);
  search.add_source(src, from.cycle);
  return search.run([&](std::size_t n, Cycle c) { return n == src && c == from.cycle; }, to);
}

void reserve(ScheduleState& state, const Path& path) {
  if (path.version != state.version()) {
    throw StaleStateError("path for datum " + std::to_string(path.datum) +
                          " was computed against state version " +
                          std::to_string(path.version) + ", current is " +
                          std::to_string(state.version()));
  }
  const auto& g = state.graph();
  auto points = path.points(g);
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const auto& step = path.steps[i];
    if (step.is_wait()) continue;
    std::size_t w = g.wire_index(step.wire);
    const auto& spec = g.wires()[w];
    state.add_wire_use(w, step.launch, path.datum);
    state.append_movement(
        {path.datum, spec.src, step.launch, spec.dst, step.launch + spec.delay, spec.name});
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool last = i + 1 == points.size();
    if (i == 0 && !last) continue;  // the origin already holds the datum
    std::size_t n = g.node_index(points[i].node);
    Cycle c = points[i].cycle;
    Cycle end = c + 1;
    if (retains(g.nodes()[n].kind)) {
      end = kForever;
    } else if (last) {
      end = std::max(path.release, c + 1);
    }
    state.add_presence(n, path.datum, {c, end});
  }
  state.append_path(path);
  state.bump_version();
}

RouteRequest input_request(const HardwareGraph& graph, const Placement& placement,
                           const Operation& op, DatumId datum) {
  const auto& actor = graph.actor(placement.actor);
  Cycle release =
      op.reused.contains(datum) ? kForever : placement.arrival_cycle + actor.op_delay;
  return {datum, {actor.input_node, placement.arrival_cycle}, release};
}

void route_all(ScheduleState& state, const std::vector<Placement>& placements,
               const std::vector<Operation>& ops) {
  state.set_placements(placements);
  for (const auto& p : placements) {
    const auto& op = ops.at(p.op_index);
    const std::string where = "operation " + std::to_string(p.op_index);
    for (DatumId d : op.distinct_inputs()) {
      try {
        reserve(state, route_datum(state, input_request(state.graph(), p, op, d)));
      } catch (const TimingFault& e) {
        throw TimingFault(e.datum(), e.target(), e.frontier(),
                          where + " on " + p.actor +
                              "; raise its offset or the actor's distribution latency");
      } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
      }
    }
  }
}

}  // namespace dtt
