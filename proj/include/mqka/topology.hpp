// Copyright 2026 The mqka Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "mqka/errors.hpp"

namespace mqka {

enum class TopologyKind { CompleteGraph, Circle, HalfCircle, Tree };

inline std::string_view topology_name(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::CompleteGraph: return "complete";
    case TopologyKind::Circle: return "circle";
    case TopologyKind::HalfCircle: return "half-circle";
    case TopologyKind::Tree: return "tree";
  }
  return "unknown";
}

inline TopologyKind parse_topology(std::string_view name) {
  for (auto kind : {TopologyKind::CompleteGraph, TopologyKind::Circle, TopologyKind::HalfCircle,
                    TopologyKind::Tree}) {
    if (topology_name(kind) == name) return kind;
  }
  throw ConfigError("unknown topology: " + std::string(name));
}

struct Topology {
  TopologyKind kind = TopologyKind::Circle;
  int n = 3;

  Topology(TopologyKind k, int participants) : kind(k), n(participants) {
    if (n < 3) throw StructuralError("a multi-party topology needs at least 3 participants");
  }
};

inline int mod_add(int a, int b, int n) { return ((a + b) % n + n) % n; }
inline int mod_sub(int a, int b, int n) { return mod_add(a, -b, n); }

// One encoding stop of a traveling sequence: `holder` receives it, runs the
// detection stage, encodes and forwards it, all within `period`.
struct Hop {
  ParticipantId holder = 0;
  int period = 0;
};

// The path of one traveling half. After the last hop it goes back to the
// owner, who verifies and measures in `return_period`.
struct Route {
  ParticipantId owner = 0;
  int index = 0;
  std::vector<Hop> hops;
  int return_period = 0;

  // Period in which `p` holds this sequence, or 0 if it never does.
  int period_held_by(ParticipantId p) const {
    for (const auto& h : hops) {
      if (h.holder == p) return h.period;
    }
    return 0;
  }
};

/// N-period circle timetable: S_i sits with P_{i+k} during period k and is
/// back home in period N.
class CircleSchedule {
 public:
  explicit CircleSchedule(int n) : n_(n) {
    if (n < 3) throw StructuralError("circle needs at least 3 participants");
  }

  int n() const { return n_; }

  ParticipantId holder(ParticipantId owner, int period) const {
    if (owner < 0 || owner >= n_) throw StructuralError("sequence owner out of range");
    if (period < 1 || period > n_) throw StructuralError("period out of range [1, N]");
    return mod_add(owner, period % n_, n_);
  }

  // Which sequence participant `p` holds in `period`.
  ParticipantId sequence_held(ParticipantId p, int period) const {
    if (period < 1 || period > n_) throw StructuralError("period out of range [1, N]");
    return mod_sub(p, period % n_, n_);
  }

 private:
  int n_;
};

inline std::vector<Route> circle_routes(int n) {
  CircleSchedule schedule(n);
  std::vector<Route> routes;
  for (int i = 0; i < n; ++i) {
    Route r{i, 0, {}, n};
    for (int k = 1; k < n; ++k) r.hops.push_back({schedule.holder(i, k), k});
    routes.push_back(std::move(r));
  }
  return routes;
}

// Two sequences per owner: one runs clockwise through the ceil((N-1)/2)
// nearest successors, the other counter-clockwise through the remaining
// floor((N-1)/2). Both report home in the period after the longer half.
inline std::vector<Route> half_circle_routes(int n) {
  if (n < 3) throw StructuralError("half circle needs at least 3 participants");
  const int forward = n / 2;        // ceil((n-1)/2)
  const int backward = (n - 1) / 2;  // floor((n-1)/2)
  std::vector<Route> routes;
  for (int i = 0; i < n; ++i) {
    Route a{i, 0, {}, forward + 1};
    for (int k = 1; k <= forward; ++k) a.hops.push_back({mod_add(i, k, n), k});
    Route b{i, 1, {}, forward + 1};
    for (int k = 1; k <= backward; ++k) b.hops.push_back({mod_sub(i, k, n), k});
    routes.push_back(std::move(a));
    routes.push_back(std::move(b));
  }
  return routes;
}

inline std::vector<Route> routes_for(const Topology& topology) {
  switch (topology.kind) {
    case TopologyKind::Circle: return circle_routes(topology.n);
    case TopologyKind::HalfCircle: return half_circle_routes(topology.n);
    default: throw StructuralError("topology has no traveling-sequence routes");
  }
}

inline int final_period(const std::vector<Route>& routes) {
  int last = 0;
  for (const auto& r : routes) last = std::max(last, r.return_period);
  return last;
}

inline std::vector<int> normalize_positions(int n, std::vector<int> positions) {
  if (positions.empty()) throw StructuralError("position set is empty");
  std::sort(positions.begin(), positions.end());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] < 0 || positions[i] >= n) {
      throw StructuralError("position " + std::to_string(positions[i]) + " out of range");
    }
    if (i > 0 && positions[i] == positions[i - 1]) {
      throw StructuralError("duplicate position " + std::to_string(positions[i]));
    }
  }
  return positions;
}

/// Hop counts between circularly adjacent positions, starting from the
/// smallest position. Always sums to n.
inline std::vector<int> circular_gaps(int n, std::vector<int> positions) {
  positions = normalize_positions(n, std::move(positions));
  std::vector<int> gaps;
  for (std::size_t i = 0; i + 1 < positions.size(); ++i) gaps.push_back(positions[i + 1] - positions[i]);
  gaps.push_back(n - positions.back() + positions.front());
  return gaps;
}

// True when every position lies on one closed half of the circle, i.e. on
// an arc spanning at most floor(n/2) hops.
inline bool within_half_arc(int n, const std::vector<int>& positions) {
  auto gaps = circular_gaps(n, positions);
  return *std::max_element(gaps.begin(), gaps.end()) >= n - n / 2;
}

}  // namespace mqka
