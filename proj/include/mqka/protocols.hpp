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
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mqka/engine.hpp"
#include "mqka/errors.hpp"
#include "mqka/key.hpp"
#include "mqka/outcome.hpp"
#include "mqka/rng.hpp"
#include "mqka/topology.hpp"
#include "mqka/toy_quantum.hpp"

namespace mqka {

inline std::vector<Key> random_keys(int n, std::size_t length, Rng& rng) {
  std::vector<Key> keys;
  for (int i = 0; i < n; ++i) keys.push_back(Key::random(length, rng));
  return keys;
}

namespace detail {

inline void require_participants(int n, const std::vector<Key>& keys) {
  if (n < 3) throw StructuralError("need at least 3 participants");
  if (static_cast<int>(keys.size()) != n) throw StructuralError("need one personal key per participant");
}

inline RunOutcome throw_if_aborted(RunOutcome outcome) {
  if (outcome.verdict == Verdict::Aborted) {
    const auto& d = outcome.detections.front();
    throw DetectionAbort(d.period, d.from, d.to, d.failed);
  }
  return outcome;
}

}  // namespace detail

/// Honest circle-type run: every S_i collects the other N-1 encodings and
/// comes home in period N.
inline RunOutcome run_circle(int n, const std::vector<Key>& keys, std::size_t decoys, Rng& rng) {
  detail::require_participants(n, keys);
  RouteEngine engine(circle_routes(n), keys, {keys.front().size(), decoys}, rng);
  return detail::throw_if_aborted(engine.run());
}

inline RunOutcome run_half_circle(int n, const std::vector<Key>& keys, std::size_t decoys, Rng& rng) {
  detail::require_participants(n, keys);
  RouteEngine engine(half_circle_routes(n), keys, {keys.front().size(), decoys}, rng);
  return detail::throw_if_aborted(engine.run());
}

// Complete-graph behavior of dishonest senders. Everything here is fixed
// before the single transmission round, so nothing can depend on keys
// received from honest participants.
struct CompleteGraphStrategy {
  std::vector<ParticipantId> colluders;
  // Key a colluder sends to a given recipient instead of its personal key.
  std::map<std::pair<ParticipantId, ParticipantId>, Key> sent_keys;
  // Physical blind-flip masks applied by a colluder to honest edges.
  std::map<std::pair<ParticipantId, ParticipantId>, Key> intercept_masks;
  std::optional<Key> expected;
};

/// Complete-graph-type run. Every participant sends its key directly to
/// every other one over a decoy-protected carrier; all carriers are sent
/// in one round and opened in the next.
inline RunOutcome run_cgt(int n, const std::vector<Key>& keys, std::size_t decoys, Rng& rng,
                          const CompleteGraphStrategy* strategy = nullptr) {
  detail::require_participants(n, keys);
  const std::size_t length = keys.front().size();
  auto is_colluder = [&](ParticipantId p) {
    if (!strategy) return false;
    return std::find(strategy->colluders.begin(), strategy->colluders.end(), p) != strategy->colluders.end();
  };

  RunOutcome outcome;
  outcome.views.resize(n);
  struct Carrier {
    ParticipantId from, to;
    SequencePair pair;
  };
  std::vector<Carrier> carriers;
  for (ParticipantId i = 0; i < n; ++i) {
    for (ParticipantId j = 0; j < n; ++j) {
      if (i == j) continue;
      Key sent = keys[i];
      if (is_colluder(i)) {
        if (auto it = strategy->sent_keys.find({i, j}); it != strategy->sent_keys.end()) sent = it->second;
      }
      auto pair = SequencePair::generate(i, length, rng);
      pair.encode(i, sent);
      pair.insert_decoys(i, decoys, rng);
      outcome.trace.push_back({1, "send", i, j, 0});
      carriers.push_back({i, j, std::move(pair)});
    }
  }

  std::vector<Key> finals = keys;
  for (auto& c : carriers) {
    c.pair.send_travel(c.from, c.to);
    if (strategy && !is_colluder(c.from)) {
      if (auto it = strategy->intercept_masks.find({c.from, c.to}); it != strategy->intercept_masks.end()) {
        const ParticipantId spy = strategy->colluders.front();
        c.pair.send_travel(c.to, spy);
        c.pair.blind_flip(spy, it->second);
        c.pair.send_travel(spy, c.to);
        outcome.trace.push_back({2, "intercept", spy, c.from, 0});
      }
    }
    const std::size_t physical = c.pair.physical_length();
    c.pair.reveal_decoys(c.from, c.to);
    auto result = c.pair.verify_decoys(c.to);
    outcome.views[c.to].push_back({2, c.from, physical, result.checked, result.failed});
    if (!result.passed()) outcome.detections.push_back({2, c.from, c.to, result.failed});
    c.pair.send_home(c.from, c.to);
    c.pair.share_descriptor(c.from, c.to);
    finals[c.to] ^= c.pair.joint_measure(c.to);
    outcome.trace.push_back({2, "open", c.to, c.from, 0});
  }

  std::vector<Role> roles(n, Role::Honest);
  for (ParticipantId p = 0; p < n; ++p) {
    if (is_colluder(p)) {
      roles[p] = Role::Colluder;
      if (strategy->expected) finals[p] = *strategy->expected;
    }
  }
  outcome.final_keys = std::move(finals);
  if (!outcome.detections.empty()) {
    outcome.verdict = Verdict::Aborted;
    if (!strategy) return detail::throw_if_aborted(std::move(outcome));
  } else if (strategy && strategy->expected) {
    outcome.verdict = judge(outcome, roles, *strategy->expected);
    if (outcome.verdict == Verdict::Controlled) outcome.controlled_by = strategy->colluders;
  }
  return outcome;
}

enum class ShotUse { Unassigned, Key, Detection };

/// N-party GHZ register. Every shot collapses to one shared bit that all
/// parties read in the computational basis.
class GhzRegister {
 public:
  static GhzRegister prepare(int parties, std::size_t shots, Rng& rng) {
    std::vector<bool> bits;
    for (std::size_t s = 0; s < shots; ++s) bits.push_back(rng.bit());
    return from_bits(parties, std::move(bits));
  }

  static GhzRegister from_bits(int parties, std::vector<bool> bits) {
    if (parties < 2) throw StructuralError("GHZ register needs at least 2 parties");
    GhzRegister r;
    r.parties_ = parties;
    r.shared_ = std::move(bits);
    r.use_.assign(r.shared_.size(), ShotUse::Unassigned);
    r.tamper_.assign(r.shared_.size(), std::vector<bool>(parties, false));
    return r;
  }

  int parties() const { return parties_; }
  std::size_t shots() const { return shared_.size(); }
  ShotUse use(std::size_t shot) const { return use_.at(shot); }
  void designate(std::size_t shot, ShotUse u) { use_.at(shot) = u; }

  // Breaks the correlation of one party's particle (tests only).
  void tamper(std::size_t shot, int party) { tamper_.at(shot).at(party) = true; }

  bool measure(std::size_t shot, int party) const { return shared_.at(shot) != tamper_.at(shot).at(party); }

  bool correlated(std::size_t shot) const {
    for (int p = 1; p < parties_; ++p) {
      if (measure(shot, p) != measure(shot, 0)) return false;
    }
    return true;
  }

  std::vector<std::size_t> unassigned() const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < shots(); ++s) {
      if (use_[s] == ShotUse::Unassigned) out.push_back(s);
    }
    return out;
  }

 private:
  int parties_ = 0;
  std::vector<bool> shared_;
  std::vector<ShotUse> use_;
  std::vector<std::vector<bool>> tamper_;
};

struct TreeParams {
  int parties = 3;
  std::size_t key_bits = 2;
  // Detection picks per party, indexed by party id; party 0 is the root.
  std::vector<std::size_t> picks;
  // Order in which parties pick; defaults to ascending id.
  std::vector<int> pick_order;
};

// The surviving shots, in order, that become the key.
inline Key tree_key_from(const GhzRegister& reg, std::size_t key_bits, int reader) {
  Key k = Key::zeros(key_bits);
  std::size_t i = 0;
  for (std::size_t s = 0; s < reg.shots() && i < key_bits; ++s) {
    if (reg.use(s) == ShotUse::Detection) continue;
    k.set(i++, reg.measure(s, reader));
  }
  if (i < key_bits) throw StructuralError("not enough surviving shots for the key");
  return k;
}

namespace detail {

inline void validate_tree(const TreeParams& params, std::size_t shots) {
  if (params.parties < 3) throw StructuralError("tree protocol needs at least 3 parties");
  if (params.key_bits == 0) throw StructuralError("key must have at least one bit");
  if (static_cast<int>(params.picks.size()) != params.parties) {
    throw StructuralError("need a detection pick count per party");
  }
  std::size_t total = params.key_bits;
  for (auto p : params.picks) total += p;
  if (shots < total) throw StructuralError("not enough shots for the key and every detection pick");
}

inline std::vector<int> pick_order(const TreeParams& params) {
  if (!params.pick_order.empty()) return params.pick_order;
  std::vector<int> order;
  for (int p = 0; p < params.parties; ++p) order.push_back(p);
  return order;
}

// Checks the detection shots and derives every party's key.
inline RunOutcome finish_tree(const GhzRegister& reg, std::size_t key_bits) {
  RunOutcome outcome;
  outcome.views.resize(reg.parties());
  for (std::size_t s = 0; s < reg.shots(); ++s) {
    if (reg.use(s) != ShotUse::Detection) continue;
    if (!reg.correlated(s)) {
      outcome.detections.push_back({static_cast<int>(s), 0, 0, 1});
    }
  }
  if (!outcome.detections.empty()) {
    outcome.verdict = Verdict::Aborted;
    return outcome;
  }
  for (int p = 0; p < reg.parties(); ++p) outcome.final_keys.push_back(tree_key_from(reg, key_bits, p));
  return outcome;
}

}  // namespace detail

/// Tree-type run on an already prepared register: each party in turn marks
/// random unassigned shots for detection, then the survivors form the key.
inline RunOutcome run_tree(GhzRegister reg, const TreeParams& params, Rng& rng) {
  detail::validate_tree(params, reg.shots());
  for (int party : detail::pick_order(params)) {
    for (std::size_t n = 0; n < params.picks.at(party); ++n) {
      auto free = reg.unassigned();
      reg.designate(free[rng.uniform(free.size())], ShotUse::Detection);
    }
  }
  auto outcome = detail::finish_tree(reg, params.key_bits);
  if (outcome.verdict == Verdict::Aborted) {
    throw DetectionAbort(outcome.detections.front().period, 0, 0, 1);
  }
  return outcome;
}

inline RunOutcome run_tree(const TreeParams& params, std::size_t shots, Rng& rng) {
  return run_tree(GhzRegister::prepare(params.parties, shots, rng), params, rng);
}

}  // namespace mqka
