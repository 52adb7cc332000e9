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

#include <string>
#include <string_view>
#include <vector>

#include "mqka/errors.hpp"
#include "mqka/key.hpp"

namespace mqka {

enum class Role { Honest, Colluder };

enum class Verdict { Fair, Controlled, Aborted };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Fair: return "fair";
    case Verdict::Controlled: return "controlled";
    case Verdict::Aborted: return "aborted";
  }
  return "unknown";
}

struct DetectionEvent {
  int period = 0;
  ParticipantId from = 0;
  ParticipantId to = 0;
  std::size_t failed = 0;
};

// What one participant legitimately observed when a sequence arrived.
struct ViewEntry {
  int period = 0;
  ParticipantId from = 0;
  std::size_t physical_length = 0;
  std::size_t decoys_checked = 0;
  std::size_t decoys_failed = 0;

  friend bool operator==(const ViewEntry&, const ViewEntry&) = default;
};

struct Participant {
  ParticipantId id = 0;
  Key personal_key;
  Role role = Role::Honest;
  std::vector<ViewEntry> view;
};

struct TraceEvent {
  int period = 0;
  std::string action;
  ParticipantId actor = 0;
  ParticipantId sequence_owner = 0;
  int route = 0;
};

struct RunOutcome {
  std::vector<Key> final_keys;
  std::vector<DetectionEvent> detections;
  Verdict verdict = Verdict::Fair;
  std::vector<ParticipantId> controlled_by;
  std::vector<TraceEvent> trace;
  std::vector<std::vector<ViewEntry>> views;

  std::size_t failed_decoys() const {
    std::size_t n = 0;
    for (const auto& d : detections) n += d.failed;
    return n;
  }

  bool unanimous() const {
    for (const auto& k : final_keys) {
      if (!(k == final_keys.front())) return false;
    }
    return !final_keys.empty();
  }
};

// Controlled only when every honest output equals the target and nothing
// was detected.
inline Verdict judge(const RunOutcome& outcome, const std::vector<Role>& roles, const Key& expected) {
  if (!outcome.detections.empty()) return Verdict::Aborted;
  bool any_honest = false;
  for (std::size_t i = 0; i < roles.size(); ++i) {
    if (roles[i] != Role::Honest) continue;
    any_honest = true;
    if (!(outcome.final_keys[i] == expected)) return Verdict::Fair;
  }
  return any_honest ? Verdict::Controlled : Verdict::Fair;
}

}  // namespace mqka
