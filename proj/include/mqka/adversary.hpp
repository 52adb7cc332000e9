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
#include <stdexcept>
#include <string>
#include <vector>

#include "mqka/engine.hpp"
#include "mqka/errors.hpp"
#include "mqka/key.hpp"
#include "mqka/outcome.hpp"
#include "mqka/parallel.hpp"
#include "mqka/protocols.hpp"
#include "mqka/rng.hpp"
#include "mqka/topology.hpp"
#include "mqka/xor_knowledge.hpp"

namespace mqka {

enum class AttackVariant { TwoColluderCircle, MultiColluderCircle, HalfCircleThreeColluder, TreeDetectionChoice };

struct AttackPlan {
  std::vector<ParticipantId> colluders;
  Key expected;
  AttackVariant variant = AttackVariant::TwoColluderCircle;
};

/// Gap condition for the circle: the coalition can steer the key iff no two
/// circularly adjacent colluders are more than floor((N+1)/2) hops apart.
inline bool feasible(int n, const std::vector<ParticipantId>& colluders) {
  auto gaps = circular_gaps(n, colluders);
  return *std::max_element(gaps.begin(), gaps.end()) <= (n + 1) / 2;
}

// ---------------------------------------------------------------------------
// Timing replay. Everything below is derived from the routes alone, the way
// colluders who know the public timetable would plan.

// A colluder-owned sequence whose retained half was handed to `measurer`,
// who measures it on arrival and learns the XOR of the honest keys in `honest_mask`.
struct StealEvent {
  ParticipantId sequence_owner = 0;
  int route = 0;
  ParticipantId measurer = 0;
  int hop = 0;
  int period = 0;
  std::uint64_t honest_mask = 0;
};

struct FlipEvent {
  ParticipantId sequence_owner = 0;
  int route = 0;
  ParticipantId colluder = 0;
  int period = 0;
  // Colluder-owned sequences need no flip; their owner just outputs the target.
  bool by_owner = false;
};

struct FlipSchedule {
  std::vector<StealEvent> steals;
  // First period in which the coalition can compute the legal final key; 0 if never.
  int knowledge_period = 0;
  std::map<ParticipantId, FlipEvent> flips;
  // Out-of-turn blind flips used only by forced runs of infeasible plans.
  std::vector<FlipEvent> intercepts;
};

enum class FlipPolicy { Earliest, Latest };

namespace detail {

inline bool member_of(const std::vector<ParticipantId>& set, ParticipantId p) {
  return std::find(set.begin(), set.end(), p) != set.end();
}

inline std::uint64_t honest_mask(int n, const std::vector<ParticipantId>& colluders) {
  std::uint64_t m = 0;
  for (int p = 0; p < n; ++p) {
    if (!member_of(colluders, p)) m |= participant_bit(p);
  }
  return m;
}

inline void validate_coalition(int n, const std::vector<ParticipantId>& colluders) {
  normalize_positions(n, colluders);
  if (n > 64) throw StructuralError("at most 64 participants are supported");
}

}  // namespace detail

// Each colluder-owned sequence is measured by the first colluder on its
// route, provided at least one honest participant encoded before it.
inline std::vector<StealEvent> plan_steals(const std::vector<Route>& routes,
                                           const std::vector<ParticipantId>& colluders) {
  std::vector<StealEvent> steals;
  for (const auto& r : routes) {
    if (!detail::member_of(colluders, r.owner)) continue;
    std::uint64_t mask = 0;
    for (std::size_t h = 0; h < r.hops.size(); ++h) {
      const auto& hop = r.hops[h];
      if (detail::member_of(colluders, hop.holder)) {
        if (mask != 0) steals.push_back({r.owner, r.index, hop.holder, static_cast<int>(h), hop.period, mask});
        break;
      }
      mask |= participant_bit(hop.holder);
    }
  }
  std::stable_sort(steals.begin(), steals.end(),
                   [](const StealEvent& a, const StealEvent& b) { return a.period < b.period; });
  return steals;
}

inline int knowledge_period(int n, const std::vector<StealEvent>& steals,
                            const std::vector<ParticipantId>& colluders) {
  const std::uint64_t target = detail::honest_mask(n, colluders);
  XorKnowledge known(1);
  if (known.determines(target)) return 1;
  for (const auto& s : steals) {
    known.add(s.honest_mask, Key::zeros(1));
    if (known.determines(target)) return s.period;
  }
  return 0;
}

/// Assigns each honest participant's sequences exactly one forged encoding by a
/// colluder who holds one of them no earlier than `steal_period`.
/// Throws FeasibilityError when some honest owner has no such opportunity,
/// unless `allow_intercepts` is set, in which case a blind interception is
/// planned for it instead (when any transmission remains after the steal).
inline FlipSchedule flip_schedule(const std::vector<Route>& routes, int n, const std::vector<ParticipantId>& colluders,
                                  int steal_period, FlipPolicy policy = FlipPolicy::Earliest,
                                  bool allow_intercepts = false) {
  FlipSchedule schedule;
  schedule.knowledge_period = steal_period;
  const int last = final_period(routes);
  for (ParticipantId owner = 0; owner < n; ++owner) {
    if (detail::member_of(colluders, owner)) {
      schedule.flips[owner] = {owner, -1, owner, last, true};
      continue;
    }
    std::optional<FlipEvent> best;
    if (steal_period > 0) {
      for (const auto& r : routes) {
        if (r.owner != owner) continue;
        for (const auto& hop : r.hops) {
          if (!detail::member_of(colluders, hop.holder) || hop.period < steal_period) continue;
          FlipEvent e{owner, r.index, hop.holder, hop.period, false};
          const bool better = !best || (policy == FlipPolicy::Earliest ? e.period < best->period
                                                                       : e.period > best->period);
          if (better) best = e;
        }
      }
    }
    if (best) {
      schedule.flips[owner] = *best;
      continue;
    }
    if (!allow_intercepts) {
      throw FeasibilityError("no colluder holds a sequence of participant " + std::to_string(owner) +
                             " after the final key is known");
    }
    if (steal_period == 0) continue;
    std::optional<FlipEvent> wire;
    for (const auto& r : routes) {
      if (r.owner != owner) continue;
      for (std::size_t h = 0; h <= r.hops.size(); ++h) {
        const bool is_return = h == r.hops.size();
        const ParticipantId from = h == 0 ? r.owner : r.hops[h - 1].holder;
        const int period = is_return ? r.return_period : r.hops[h].period;
        if (period <= steal_period || detail::member_of(colluders, from)) continue;
        FlipEvent e{owner, r.index, colluders.front(), period, false};
        if (!wire || e.period < wire->period) wire = e;
      }
    }
    if (wire) schedule.intercepts.push_back(*wire);
  }
  return schedule;
}

/// Full timing replay: steals, the period the final key becomes known, and
/// the flip assignment.
inline FlipSchedule plan_attack(const std::vector<Route>& routes, int n, const std::vector<ParticipantId>& colluders,
                                FlipPolicy policy = FlipPolicy::Earliest, bool allow_intercepts = false) {
  detail::validate_coalition(n, colluders);
  auto steals = plan_steals(routes, colluders);
  const int known_at = knowledge_period(n, steals, colluders);
  if (known_at == 0 && !allow_intercepts) {
    throw FeasibilityError("the coalition never learns the final key before the last period");
  }
  auto schedule = flip_schedule(routes, n, colluders, known_at, policy, allow_intercepts);
  schedule.steals = std::move(steals);
  return schedule;
}

// ---------------------------------------------------------------------------
// Execution.

/// Colluders on a traveling-sequence topology: they hand their retained halves
/// to the next colluder in period 1, measure those sequences mid-route, pool
/// the partial XORs instantly, then encode forged keys at the scheduled turns.
class TravelingCoalition : public Coalition {
 public:
  TravelingCoalition(std::vector<ParticipantId> members, Key expected, FlipSchedule schedule, int n)
      : members_(std::move(members)),
        expected_(std::move(expected)),
        schedule_(std::move(schedule)),
        honest_(detail::honest_mask(n, members_)),
        known_(expected_.size()) {}

  bool is_member(ParticipantId p) const override { return detail::member_of(members_, p); }

  void on_start(RouteEngine& engine) override {
    for (const auto& s : schedule_.steals) {
      auto& slot = find_slot(engine, s.sequence_owner, s.route);
      slot.pair.send_home(s.sequence_owner, s.measurer);
      slot.pair.share_descriptor(s.sequence_owner, s.measurer);
      engine.trace(1, "hand-over", s.sequence_owner, slot);
    }
  }

  void after_receive(RouteEngine& engine, SequenceSlot& slot, int hop_index, int period) override {
    const ParticipantId me = slot.route.hops[hop_index].holder;
    if (slot.prepared_at_hop != -1 || slot.pair.home_holder() != me || !slot.pair.knows_descriptor(me)) return;
    Key partial = slot.pair.joint_measure(me);
    std::uint64_t mask = 0;
    for (int h = 0; h < hop_index; ++h) {
      const ParticipantId encoder = slot.route.hops[h].holder;
      if (is_member(encoder)) {
        partial ^= engine.participant(encoder).personal_key;
      } else {
        mask |= participant_bit(encoder);
      }
    }
    known_.add(mask, std::move(partial));
    engine.trace(period, "steal", me, slot);
    // The measured sequence is replaced so the rest of the route sees a normal one.
    slot.pair = SequencePair::generate(me, engine.params().key_length, engine.rng());
    slot.prepared_at_hop = hop_index;
  }

  Key encoding_for(RouteEngine& engine, const SequenceSlot& slot, ParticipantId member, int period) override {
    const Key& own = engine.participant(member).personal_key;
    auto it = schedule_.flips.find(slot.route.owner);
    if (it == schedule_.flips.end() || it->second.by_owner || it->second.colluder != member ||
        it->second.period != period || it->second.route != slot.route.index) {
      engine.trace(period, "encode", member, slot);
      return own;
    }
    engine.trace(period, "forge", member, slot);
    return forged_key(own, expected_, legal_final_key(engine));
  }

  void on_transit(RouteEngine& engine, SequenceSlot& slot, ParticipantId from, ParticipantId to,
                  int period) override {
    for (const auto& e : schedule_.intercepts) {
      if (e.sequence_owner != slot.route.owner || e.route != slot.route.index || e.period != period) continue;
      if (is_member(from)) continue;
      // Without the decoy layout the only way to reach the data is to flip everything.
      slot.pair.send_travel(to, e.colluder);
      slot.pair.blind_flip(e.colluder, Key::ones(slot.pair.physical_length()));
      slot.pair.send_travel(e.colluder, to);
      engine.trace(period, "intercept", e.colluder, slot);
    }
  }

  Key final_key_for(RouteEngine&, ParticipantId) override { return expected_; }

  const FlipSchedule& schedule() const { return schedule_; }

 private:
  Key legal_final_key(RouteEngine& engine) const {
    auto honest_xor = known_.solve(honest_);
    if (!honest_xor) throw std::logic_error("forged encoding scheduled before the final key is known");
    Key f = *honest_xor;
    for (auto m : members_) f ^= engine.participant(m).personal_key;
    return f;
  }

  static SequenceSlot& find_slot(RouteEngine& engine, ParticipantId owner, int route) {
    for (auto& s : engine.slots()) {
      if (s.route.owner == owner && s.route.index == route) return s;
    }
    throw std::logic_error("no such sequence");
  }

  std::vector<ParticipantId> members_;
  Key expected_;
  FlipSchedule schedule_;
  std::uint64_t honest_;
  XorKnowledge known_;
};

struct CollusionOptions {
  FlipPolicy policy = FlipPolicy::Earliest;
  // Run infeasible plans anyway, falling back to blind interception.
  bool force = false;
};

namespace detail {

inline RunOutcome run_traveling_attack(const std::vector<Route>& routes, int n, const std::vector<Key>& keys,
                                       const AttackPlan& plan, std::size_t decoys, Rng& rng,
                                       FlipSchedule schedule) {
  require_participants(n, keys);
  TravelingCoalition coalition(plan.colluders, plan.expected, std::move(schedule), n);
  RouteEngine engine(routes, keys, {keys.front().size(), decoys}, rng, &coalition);
  auto outcome = engine.run();
  if (outcome.verdict != Verdict::Aborted) {
    outcome.verdict = judge(outcome, engine.roles(), plan.expected);
  }
  if (outcome.verdict == Verdict::Controlled) outcome.controlled_by = plan.colluders;
  return outcome;
}

}  // namespace detail

/// Collusive key-stealing and key-flipping attack on the circle.
inline RunOutcome run_collusive_circle(int n, const std::vector<Key>& keys, const AttackPlan& plan,
                                       std::size_t decoys, Rng& rng, CollusionOptions options = {}) {
  if (plan.variant != AttackVariant::TwoColluderCircle && plan.variant != AttackVariant::MultiColluderCircle) {
    throw StructuralError("plan variant is not a circle attack");
  }
  if (plan.colluders.size() < 2) throw StructuralError("a collusive attack needs at least two colluders");
  if (plan.variant == AttackVariant::TwoColluderCircle && plan.colluders.size() != 2) {
    throw StructuralError("two-colluder plan must name exactly two colluders");
  }
  if (plan.expected.size() != keys.front().size()) throw StructuralError("expected key length mismatch");
  if (!feasible(n, plan.colluders) && !options.force) {
    auto gaps = circular_gaps(n, plan.colluders);
    throw FeasibilityError("largest colluder gap " + std::to_string(*std::max_element(gaps.begin(), gaps.end())) +
                           " exceeds " + std::to_string((n + 1) / 2));
  }
  auto routes = circle_routes(n);
  auto schedule = plan_attack(routes, n, plan.colluders, options.policy, options.force);
  return detail::run_traveling_attack(routes, n, keys, plan, decoys, rng, std::move(schedule));
}

/// The same attack against the two-sequences-per-owner half-circle variant.
/// When the timing replay finds no legitimate flip opportunity the
/// colluders stay passive and the run ends fair.
inline RunOutcome run_halfcircle_attack(int n, const std::vector<Key>& keys, const AttackPlan& plan,
                                        std::size_t decoys, Rng& rng) {
  if (plan.variant != AttackVariant::HalfCircleThreeColluder) {
    throw StructuralError("plan variant is not a half-circle attack");
  }
  if (plan.expected.size() != keys.front().size()) throw StructuralError("expected key length mismatch");
  auto routes = half_circle_routes(n);
  FlipSchedule schedule;
  try {
    schedule = plan_attack(routes, n, plan.colluders);
  } catch (const FeasibilityError&) {
    schedule = FlipSchedule{};
    schedule.steals = plan_steals(routes, plan.colluders);
  }
  return detail::run_traveling_attack(routes, n, keys, plan, decoys, rng, std::move(schedule));
}

/// True when the colluders can control the half-circle variant: the timing
/// replay finds a legitimate flip for every honest participant.
inline bool halfcircle_controllable(int n, const std::vector<ParticipantId>& colluders) {
  try {
    plan_attack(half_circle_routes(n), n, colluders);
    return true;
  } catch (const FeasibilityError&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Tree-type detection-bits-chosen attack.

struct TreeAttackParams {
  int parties = 3;
  std::size_t shots = 5;
  std::size_t key_bits = 2;
  // Honest parties pick first, in this order; everyone else colludes.
  std::vector<int> honest = {1};
  std::size_t honest_picks = 1;
  // Detection picks of the whole coalition, chosen after measuring.
  std::size_t colluder_picks = 2;
  Key expected;
};

struct TreePickChoice {
  std::vector<std::size_t> shots;
  std::size_t matching_bits = 0;
  bool forced = false;  // every pick set achieves the target
};

namespace detail {

inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Given the measured bits of the still-unassigned shots (in shot order),
/// picks which of them to declare as detection shots so the first
/// `key_bits` survivors match `expected` as closely as possible. Ties go to
/// the lexicographically smallest pick set; if every pick set already
/// yields the target, the choice carries no bias and is made at random.
inline TreePickChoice choose_detection_picks(const std::vector<bool>& remaining, std::size_t picks,
                                             const Key& expected, Rng& rng) {
  const std::size_t key_bits = expected.size();
  if (picks == 0) throw StructuralError("coalition must make at least one detection pick");
  if (remaining.size() < picks + key_bits) throw StructuralError("not enough shots left for the key");
  std::vector<std::size_t> combo(picks);
  for (std::size_t i = 0; i < picks; ++i) combo[i] = i;
  std::vector<std::vector<std::size_t>> all;
  TreePickChoice best;
  bool have_best = false;
  bool all_full = true;
  do {
    std::size_t matched = 0;
    std::size_t out = 0;
    for (std::size_t s = 0, c = 0; s < remaining.size() && out < key_bits; ++s) {
      if (c < combo.size() && combo[c] == s) {
        ++c;
        continue;
      }
      if (remaining[s] == expected.bit(out)) ++matched;
      ++out;
    }
    if (matched != key_bits) all_full = false;
    if (!have_best || matched > best.matching_bits) {
      best = {combo, matched, false};
      have_best = true;
    }
    all.push_back(combo);
  } while (detail::next_combination(combo, remaining.size()));
  if (all_full) return {all[rng.uniform(all.size())], key_bits, true};
  return best;
}

inline RunOutcome run_tree_attack(GhzRegister reg, const TreeAttackParams& params, Rng& rng) {
  if (params.expected.size() != params.key_bits) throw StructuralError("expected key length mismatch");
  if (params.parties < 3) throw StructuralError("tree protocol needs at least 3 parties");
  const std::size_t honest_total = params.honest.size() * params.honest_picks;
  if (reg.shots() < honest_total + params.colluder_picks + params.key_bits) {
    throw StructuralError("not enough shots for the key and every detection pick");
  }
  RunOutcome outcome;
  for (int h : params.honest) {
    for (std::size_t n = 0; n < params.honest_picks; ++n) {
      auto free = reg.unassigned();
      reg.designate(free[rng.uniform(free.size())], ShotUse::Detection);
      outcome.trace.push_back({1, "detect-pick", h, 0, 0});
    }
  }
  // The coalition measures its particles of every remaining shot.
  auto free = reg.unassigned();
  const int spy = [&] {
    for (int p = 0; p < params.parties; ++p) {
      if (!detail::member_of(params.honest, p)) return p;
    }
    throw StructuralError("tree attack needs at least one colluder");
  }();
  std::vector<bool> seen;
  for (auto s : free) seen.push_back(reg.measure(s, spy));
  auto choice = choose_detection_picks(seen, params.colluder_picks, params.expected, rng);
  for (auto i : choice.shots) {
    reg.designate(free[i], ShotUse::Detection);
    outcome.trace.push_back({2, "detect-pick", spy, static_cast<int>(free[i]), 0});
  }
  auto finished = detail::finish_tree(reg, params.key_bits);
  finished.trace = std::move(outcome.trace);
  finished.views.resize(params.parties);
  if (finished.verdict == Verdict::Aborted) return finished;
  std::vector<Role> roles(params.parties, Role::Colluder);
  for (int h : params.honest) roles.at(h) = Role::Honest;
  finished.verdict = judge(finished, roles, params.expected);
  if (finished.verdict == Verdict::Controlled) {
    for (int p = 0; p < params.parties; ++p) {
      if (roles[p] == Role::Colluder) finished.controlled_by.push_back(p);
    }
  }
  return finished;
}

inline RunOutcome run_tree_attack(const TreeAttackParams& params, Rng& rng) {
  return run_tree_attack(GhzRegister::prepare(params.parties, params.shots, rng), params, rng);
}

/// Fraction of (shot pattern, honest picks, target) combinations for which
/// the coalition reaches the target exactly, enumerated exhaustively.
inline double tree_control_rate(std::size_t shots, std::size_t key_bits, std::size_t honest_picks,
                                std::size_t colluder_picks) {
  if (shots > 20) throw StructuralError("exhaustive enumeration limited to 20 shots");
  if (shots < honest_picks + colluder_picks + key_bits) throw StructuralError("not enough shots");
  std::size_t hits = 0;
  std::size_t total = 0;
  Rng unused(0);
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << shots); ++pattern) {
    std::vector<std::size_t> honest(honest_picks);
    for (std::size_t i = 0; i < honest_picks; ++i) honest[i] = i;
    do {
      std::vector<bool> remaining;
      for (std::size_t s = 0, c = 0; s < shots; ++s) {
        if (c < honest.size() && honest[c] == s) {
          ++c;
          continue;
        }
        remaining.push_back((pattern >> s) & 1u);
      }
      for (std::uint64_t t = 0; t < (std::uint64_t{1} << key_bits); ++t) {
        Key target = Key::zeros(key_bits);
        for (std::size_t b = 0; b < key_bits; ++b) target.set(b, (t >> b) & 1u);
        if (colluder_picks == 0) {
          bool ok = true;
          for (std::size_t b = 0; b < key_bits; ++b) ok = ok && remaining[b] == target.bit(b);
          hits += ok ? 1 : 0;
        } else {
          hits += choose_detection_picks(remaining, colluder_picks, target, unused).matching_bits == key_bits;
        }
        ++total;
      }
    } while (honest_picks > 0 && detail::next_combination(honest, shots));
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// Strategy searches used to certify "fair" cells.

struct StrategySearchResult {
  std::size_t strategies = 0;
  std::size_t trials_per_strategy = 0;
  double best_control_rate = 0.0;
  // Some strategy was Controlled in every trial.
  bool total_control = false;
};

inline StrategySearchResult summarize_search(const std::vector<std::size_t>& wins, std::size_t trials) {
  StrategySearchResult result;
  result.strategies = wins.size();
  result.trials_per_strategy = trials;
  for (auto w : wins) {
    result.best_control_rate = std::max(result.best_control_rate, static_cast<double>(w) / static_cast<double>(trials));
    result.total_control = result.total_control || w == trials;
  }
  return result;
}

// A lone dishonest participant on a traveling-sequence topology. It can
// encode any constant in place of its key, and blind-flip every honest
// sequence once on an honest-to-honest edge after its own turn.
class LoneAttacker : public Coalition {
 public:
  LoneAttacker(ParticipantId self, Key substitute, std::optional<Key> mask, Key expected)
      : self_(self), substitute_(std::move(substitute)), mask_(std::move(mask)), expected_(std::move(expected)) {}

  bool is_member(ParticipantId p) const override { return p == self_; }

  Key encoding_for(RouteEngine& engine, const SequenceSlot& slot, ParticipantId, int period) override {
    engine.trace(period, "encode", self_, slot);
    passed_.push_back({slot.route.owner, slot.route.index});
    return substitute_;
  }

  void on_transit(RouteEngine& engine, SequenceSlot& slot, ParticipantId from, ParticipantId to,
                  int period) override {
    if (!mask_ || from == self_ || to == self_) return;
    std::pair<int, int> id{slot.route.owner, slot.route.index};
    if (std::find(passed_.begin(), passed_.end(), id) == passed_.end()) return;
    if (std::find(done_.begin(), done_.end(), id) != done_.end()) return;
    if (mask_->size() != slot.pair.physical_length()) return;
    slot.pair.send_travel(to, self_);
    slot.pair.blind_flip(self_, *mask_);
    slot.pair.send_travel(self_, to);
    done_.push_back(id);
    engine.trace(period, "intercept", self_, slot);
  }

  Key final_key_for(RouteEngine&, ParticipantId) override { return expected_; }

 private:
  ParticipantId self_;
  Key substitute_;
  std::optional<Key> mask_;
  Key expected_;
  std::vector<std::pair<int, int>> passed_;
  std::vector<std::pair<int, int>> done_;
};

// A target that differs from the natural outcome, so reaching it is evidence of control.
inline Key pick_target(const Key& natural, Rng& rng) {
  Key t = Key::random(natural.size(), rng);
  while (t == natural) t = Key::random(natural.size(), rng);
  return t;
}

inline std::vector<Key> all_keys(std::size_t length) {
  std::vector<Key> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << length); ++v) {
    Key k = Key::zeros(length);
    for (std::size_t b = 0; b < length; ++b) k.set(b, (v >> (length - 1 - b)) & 1u);
    out.push_back(k);
  }
  return out;
}

/// Exhaustive search over the lone-attacker family on a circle or
/// half-circle: every substitute key times every physical mask (plus no mask).
inline StrategySearchResult search_single_attacker(const Topology& topology, ParticipantId attacker,
                                                   std::size_t key_length, std::size_t decoys,
                                                   std::size_t trials, std::uint64_t seed) {
  const auto routes = routes_for(topology);
  std::vector<std::optional<Key>> masks = {std::nullopt};
  for (auto& m : all_keys(key_length + decoys)) masks.emplace_back(m);
  const auto substitutes = all_keys(key_length);
  const std::size_t count = substitutes.size() * masks.size();
  auto wins = parallel_map(count, [&](std::size_t index) {
    const Key& substitute = substitutes[index / masks.size()];
    const auto& mask = masks[index % masks.size()];
    std::size_t won = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(trial_seed(seed, t));
      auto keys = random_keys(topology.n, key_length, rng);
      const Key target = pick_target(xor_fold(keys), rng);
      LoneAttacker adversary(attacker, substitute, mask, target);
      RouteEngine engine(routes, keys, {key_length, decoys}, rng, &adversary);
      auto outcome = engine.run();
      if (outcome.verdict != Verdict::Aborted && judge(outcome, engine.roles(), target) == Verdict::Controlled) {
        ++won;
      }
    }
    return won;
  });
  return summarize_search(wins, trials);
}

/// Exhaustive search over complete-graph coalitions: every per-recipient
/// offset the coalition can add to the keys it sends. All choices are fixed
/// before honest keys arrive.
inline StrategySearchResult search_cgt_collusion(int n, const std::vector<ParticipantId>& colluders,
                                                 std::size_t key_length, std::size_t decoys, std::size_t trials,
                                                 std::uint64_t seed) {
  detail::validate_coalition(n, colluders);
  std::vector<ParticipantId> honest;
  for (int p = 0; p < n; ++p) {
    if (!detail::member_of(colluders, p)) honest.push_back(p);
  }
  const std::size_t bits = key_length * honest.size();
  if (bits > 16) throw StructuralError("complete-graph strategy space too large to enumerate");
  auto wins = parallel_map(std::size_t{1} << bits, [&](std::size_t s) {
    std::size_t won = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(trial_seed(seed, t));
      auto keys = random_keys(n, key_length, rng);
      CompleteGraphStrategy strategy;
      strategy.colluders = colluders;
      strategy.expected = pick_target(xor_fold(keys), rng);
      for (std::size_t h = 0; h < honest.size(); ++h) {
        Key offset = Key::zeros(key_length);
        for (std::size_t b = 0; b < key_length; ++b) offset.set(b, (s >> (h * key_length + b)) & 1u);
        strategy.sent_keys[{colluders.front(), honest[h]}] = keys[colluders.front()] ^ offset;
      }
      if (run_cgt(n, keys, decoys, rng, &strategy).verdict == Verdict::Controlled) ++won;
    }
    return won;
  });
  return summarize_search(wins, trials);
}

}  // namespace mqka
