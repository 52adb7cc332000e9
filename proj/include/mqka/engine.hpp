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

#include <optional>
#include <vector>

#include "mqka/key.hpp"
#include "mqka/outcome.hpp"
#include "mqka/rng.hpp"
#include "mqka/topology.hpp"
#include "mqka/toy_quantum.hpp"

namespace mqka {

// A traveling sequence in flight: its route plus the live register pair.
struct SequenceSlot {
  Route route;
  SequencePair pair;
  // Index of the hop where the current pair was (re)prepared; -1 means the owner.
  int prepared_at_hop = -1;
};

class RouteEngine;

// Hooks through which dishonest participants act. The engine itself only
// implements honest behavior.
class Coalition {
 public:
  virtual ~Coalition() = default;

  virtual bool is_member(ParticipantId p) const = 0;
  // Period 1, after every owner prepared its sequences.
  virtual void on_start(RouteEngine&) {}
  // A member has just received and verified `slot` at hop `hop_index`.
  virtual void after_receive(RouteEngine&, SequenceSlot&, int /*hop_index*/, int /*period*/) {}
  // Key a member encodes at its hop.
  virtual Key encoding_for(RouteEngine&, const SequenceSlot&, ParticipantId member, int period) = 0;
  // Called while a sequence is on the wire between two participants.
  virtual void on_transit(RouteEngine&, SequenceSlot&, ParticipantId /*from*/, ParticipantId /*to*/,
                          int /*period*/) {}
  // Output of a member in the final period.
  virtual Key final_key_for(RouteEngine&, ParticipantId member) = 0;
};

struct EngineParams {
  std::size_t key_length = 32;
  std::size_t decoys = 16;
};

/// Executes a set of traveling-sequence routes period by period. Each
/// period first delivers and checks every inbound sequence, then lets the
/// holders encode and re-insert decoys, so information learned on receipt
/// is usable for encodings in the same period.
class RouteEngine {
 public:
  RouteEngine(std::vector<Route> routes, std::vector<Key> personal_keys, EngineParams params, Rng& rng,
              Coalition* coalition = nullptr)
      : routes_(std::move(routes)), params_(params), rng_(rng), coalition_(coalition) {
    if (personal_keys.size() < 3) throw StructuralError("need at least 3 participants");
    for (std::size_t i = 0; i < personal_keys.size(); ++i) {
      if (personal_keys[i].size() != params_.key_length) {
        throw StructuralError("personal key length does not match run key length");
      }
      Participant p;
      p.id = static_cast<ParticipantId>(i);
      p.personal_key = std::move(personal_keys[i]);
      p.role = coalition_ && coalition_->is_member(p.id) ? Role::Colluder : Role::Honest;
      participants_.push_back(std::move(p));
    }
  }

  int n() const { return static_cast<int>(participants_.size()); }
  const EngineParams& params() const { return params_; }
  Rng& rng() { return rng_; }
  const Participant& participant(ParticipantId p) const { return participants_.at(p); }
  std::vector<SequenceSlot>& slots() { return slots_; }
  const std::vector<Route>& routes() const { return routes_; }

  std::vector<Role> roles() const {
    std::vector<Role> r;
    for (const auto& p : participants_) r.push_back(p.role);
    return r;
  }

  void trace(int period, std::string action, ParticipantId actor, const SequenceSlot& slot) {
    outcome_.trace.push_back({period, std::move(action), actor, slot.route.owner, slot.route.index});
  }

  RunOutcome run() {
    const int last = final_period(routes_);
    for (const auto& r : routes_) {
      auto pair = SequencePair::generate(r.owner, params_.key_length, rng_);
      slots_.push_back({r, std::move(pair), -1});
    }
    for (auto& s : slots_) {
      s.pair.insert_decoys(s.route.owner, params_.decoys, rng_);
      trace(1, "generate", s.route.owner, s);
    }
    if (coalition_) coalition_->on_start(*this);

    for (int period = 1; period <= last; ++period) {
      deliver(period);
      if (!outcome_.detections.empty()) {
        outcome_.verdict = Verdict::Aborted;
        return finish();
      }
      encode(period);
    }
    for (auto& p : participants_) {
      if (p.role == Role::Colluder) {
        outcome_.final_keys.push_back(coalition_->final_key_for(*this, p.id));
        continue;
      }
      Key k = p.personal_key;
      for (auto& s : slots_) {
        if (s.route.owner != p.id) continue;
        k ^= s.pair.joint_measure(p.id);
        trace(last, "measure", p.id, s);
      }
      outcome_.final_keys.push_back(std::move(k));
    }
    return finish();
  }

 private:
  static ParticipantId sender_of(const Route& r, int hop_index) {
    return hop_index == 0 ? r.owner : r.hops[hop_index - 1].holder;
  }

  void receive(SequenceSlot& s, ParticipantId from, ParticipantId to, int period) {
    if (coalition_) coalition_->on_transit(*this, s, from, to, period);
    const std::size_t physical = s.pair.physical_length();
    s.pair.reveal_decoys(from, to);
    auto result = s.pair.verify_decoys(to);
    participants_[to].view.push_back({period, from, physical, result.checked, result.failed});
    if (!result.passed()) outcome_.detections.push_back({period, from, to, result.failed});
  }

  void deliver(int period) {
    for (auto& s : slots_) {
      const auto& hops = s.route.hops;
      for (std::size_t h = 0; h < hops.size(); ++h) {
        if (hops[h].period != period) continue;
        const ParticipantId from = sender_of(s.route, static_cast<int>(h));
        const ParticipantId to = hops[h].holder;
        s.pair.send_travel(from, to);
        receive(s, from, to, period);
        trace(period, "receive", to, s);
        if (coalition_ && coalition_->is_member(to)) coalition_->after_receive(*this, s, static_cast<int>(h), period);
      }
      if (s.route.return_period == period) {
        const ParticipantId from = hops.empty() ? s.route.owner : hops.back().holder;
        s.pair.send_travel(from, s.route.owner);
        receive(s, from, s.route.owner, period);
        trace(period, "return", s.route.owner, s);
      }
    }
  }

  void encode(int period) {
    for (auto& s : slots_) {
      for (const auto& hop : s.route.hops) {
        if (hop.period != period) continue;
        const auto& holder = participants_[hop.holder];
        if (holder.role == Role::Colluder) {
          s.pair.encode(holder.id, coalition_->encoding_for(*this, s, holder.id, period));
        } else {
          s.pair.encode(holder.id, holder.personal_key);
          trace(period, "encode", holder.id, s);
        }
        s.pair.insert_decoys(holder.id, params_.decoys, rng_);
      }
    }
  }

  RunOutcome finish() {
    for (const auto& p : participants_) outcome_.views.push_back(p.view);
    return std::move(outcome_);
  }

  std::vector<Route> routes_;
  EngineParams params_;
  Rng& rng_;
  Coalition* coalition_;
  std::vector<Participant> participants_;
  std::vector<SequenceSlot> slots_;
  RunOutcome outcome_;
};

}  // namespace mqka
