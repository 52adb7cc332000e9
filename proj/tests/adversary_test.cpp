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

#include <gtest/gtest.h>

#include "mqka/adversary.hpp"
#include "mqka/protocols.hpp"

namespace mqka {
namespace {

std::vector<int> members(unsigned mask, int n) {
  std::vector<int> out;
  for (int p = 0; p < n; ++p) {
    if (mask & (1u << p)) out.push_back(p);
  }
  return out;
}

RunOutcome attack_circle(int n, std::vector<int> colluders, std::uint64_t seed, std::size_t len = 16,
                         CollusionOptions options = {}) {
  Rng rng(seed);
  auto keys = random_keys(n, len, rng);
  const Key target = pick_target(xor_fold(keys), rng);
  auto variant = colluders.size() == 2 ? AttackVariant::TwoColluderCircle : AttackVariant::MultiColluderCircle;
  return run_collusive_circle(n, keys, {colluders, target, variant}, 8, rng, options);
}

TEST(Feasibility, KnownCases) {
  EXPECT_TRUE(feasible(6, {1, 4}));
  EXPECT_TRUE(feasible(7, {0, 3}));
  EXPECT_TRUE(feasible(9, {0, 3, 6}));
  EXPECT_FALSE(feasible(6, {0, 1}));
  EXPECT_FALSE(feasible(9, {0, 1, 2}));
  EXPECT_FALSE(feasible(5, {2}));
}

TEST(Feasibility, GapRuleMatchesForcedRuns) {
  // Oracle: actually run the attack, forced through when infeasible.
  CollusionOptions forced{FlipPolicy::Earliest, true};
  for (int n = 3; n <= 7; ++n) {
    for (unsigned mask = 1; mask < (1u << n) - 1; ++mask) {
      auto s = members(mask, n);
      if (s.size() < 2) continue;
      auto o = attack_circle(n, s, mask * 31 + n, 2, forced);
      const bool controlled = o.verdict == Verdict::Controlled && o.detections.empty();
      EXPECT_EQ(feasible(n, s), controlled) << "n=" << n << " mask=" << mask;
    }
  }
}

TEST(Feasibility, AdjacentPairAtSixHasNoWorkingSchedule) {
  EXPECT_THROW(plan_attack(circle_routes(6), 6, {0, 1}), FeasibilityError);
  for (auto policy : {FlipPolicy::Earliest, FlipPolicy::Latest}) {
    EXPECT_THROW(attack_circle(6, {0, 1}, 1, 16, {policy, false}), FeasibilityError);
  }
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto o = attack_circle(6, {0, 1}, seed, 16, {FlipPolicy::Earliest, true});
    EXPECT_NE(o.verdict, Verdict::Controlled) << seed;
  }
}

TEST(CircleAttack, NamedConfigurationsControlTheKey) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (auto [n, s] : std::vector<std::pair<int, std::vector<int>>>{
             {6, {1, 4}}, {8, {0, 4}}, {7, {0, 3}}, {5, {1, 3}}, {9, {0, 3, 6}}}) {
      auto o = attack_circle(n, s, seed, 32);
      EXPECT_EQ(o.verdict, Verdict::Controlled) << n;
      EXPECT_TRUE(o.detections.empty());
      EXPECT_TRUE(o.unanimous());
      EXPECT_EQ(o.controlled_by, s);
    }
  }
}

TEST(CircleAttack, ThreeColludersForgeLate) {
  auto schedule = flip_schedule(circle_routes(9), 9, {0, 3, 6}, 1, FlipPolicy::Latest, false);
  EXPECT_GT(schedule.knowledge_period, 0);
  for (const auto& [owner, flip] : schedule.flips) {
    if (flip.by_owner) continue;
    EXPECT_GT(flip.period, 6) << owner;
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    auto keys = random_keys(9, 16, rng);
    AttackPlan plan{{0, 3, 6}, pick_target(xor_fold(keys), rng), AttackVariant::MultiColluderCircle};
    auto o = run_collusive_circle(9, keys, plan, 8, rng, {FlipPolicy::Latest, false});
    EXPECT_EQ(o.verdict, Verdict::Controlled);
  }
}

TEST(CircleAttack, OddRingForgesInTheSamePeriodTheKeyIsKnown) {
  auto schedule = plan_attack(circle_routes(7), 7, {0, 3});
  bool same_period = false;
  for (const auto& [owner, flip] : schedule.flips) {
    EXPECT_GE(flip.period, schedule.knowledge_period);
    same_period = same_period || (!flip.by_owner && flip.period == schedule.knowledge_period);
  }
  EXPECT_TRUE(same_period);
}

TEST(CircleAttack, ColluderSequencesNeedNoFlip) {
  auto schedule = plan_attack(circle_routes(6), 6, {1, 4});
  EXPECT_TRUE(schedule.flips.at(1).by_owner);
  EXPECT_TRUE(schedule.flips.at(4).by_owner);
  EXPECT_FALSE(schedule.flips.at(0).by_owner);
  EXPECT_EQ(schedule.flips.size(), 6u);
}

TEST(CircleAttack, HonestViewsMatchAnHonestRun) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng a(seed), b(seed);
    auto keys = random_keys(6, 16, a);
    random_keys(6, 16, b);
    auto honest = run_circle(6, keys, 8, a);
    AttackPlan plan{{1, 4}, pick_target(xor_fold(keys), b), AttackVariant::TwoColluderCircle};
    auto attacked = run_collusive_circle(6, keys, plan, 8, b);
    ASSERT_EQ(attacked.verdict, Verdict::Controlled);
    for (int p : {0, 2, 3, 5}) EXPECT_EQ(honest.views[p], attacked.views[p]) << p;
  }
}

TEST(CircleAttack, PlanValidation) {
  Rng rng(1);
  auto keys = random_keys(6, 8, rng);
  EXPECT_THROW(run_collusive_circle(6, keys, {{1}, Key::zeros(8), AttackVariant::MultiColluderCircle}, 4, rng),
               StructuralError);
  EXPECT_THROW(run_collusive_circle(6, keys, {{0, 2, 4}, Key::zeros(8), AttackVariant::TwoColluderCircle}, 4, rng),
               StructuralError);
  EXPECT_THROW(run_collusive_circle(6, keys, {{1, 4}, Key::zeros(7), AttackVariant::TwoColluderCircle}, 4, rng),
               StructuralError);
  EXPECT_THROW(
      run_collusive_circle(6, keys, {{1, 4}, Key::zeros(8), AttackVariant::HalfCircleThreeColluder}, 4, rng),
      StructuralError);
  EXPECT_THROW(run_collusive_circle(6, keys, {{1, 9}, Key::zeros(8), AttackVariant::TwoColluderCircle}, 4, rng),
               StructuralError);
}

TEST(HalfCircleAttack, PairsNeverControl) {
  for (unsigned mask = 1; mask < 64; ++mask) {
    auto s = members(mask, 6);
    if (s.size() != 2) continue;
    EXPECT_FALSE(halfcircle_controllable(6, s));
    Rng rng(mask);
    auto keys = random_keys(6, 16, rng);
    AttackPlan plan{s, pick_target(xor_fold(keys), rng), AttackVariant::HalfCircleThreeColluder};
    EXPECT_NE(run_halfcircle_attack(6, keys, plan, 8, rng).verdict, Verdict::Controlled);
  }
}

TEST(HalfCircleAttack, SpreadTriplesControl) {
  for (auto s : std::vector<std::vector<int>>{{0, 2, 4}, {1, 3, 5}}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Rng rng(seed);
      auto keys = random_keys(6, 16, rng);
      AttackPlan plan{s, pick_target(xor_fold(keys), rng), AttackVariant::HalfCircleThreeColluder};
      auto o = run_halfcircle_attack(6, keys, plan, 8, rng);
      EXPECT_EQ(o.verdict, Verdict::Controlled);
      EXPECT_TRUE(o.detections.empty());
    }
  }
  EXPECT_FALSE(halfcircle_controllable(6, {0, 1, 2}));
}

TEST(XorKnowledge, MatchesBruteForceSpan) {
  Rng rng(12);
  for (int round = 0; round < 300; ++round) {
    const int parties = 2 + static_cast<int>(rng.uniform(7));
    std::vector<Key> secret;
    for (int p = 0; p < parties; ++p) secret.push_back(Key::random(8, rng));
    auto value_of = [&](std::uint64_t m) {
      Key k = Key::zeros(8);
      for (int p = 0; p < parties; ++p) {
        if (m & participant_bit(p)) k ^= secret[p];
      }
      return k;
    };
    XorKnowledge known(8);
    std::vector<std::uint64_t> rows;
    const int count = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(parties) + 1));
    for (int i = 0; i < count; ++i) {
      std::uint64_t m = rng.uniform(std::uint64_t{1} << parties);
      rows.push_back(m);
      known.add(m, value_of(m));
    }
    const std::uint64_t target = rng.uniform(std::uint64_t{1} << parties);
    bool in_span = target == 0;
    for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << rows.size()) && !in_span; ++pick) {
      std::uint64_t m = 0;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (pick & (std::uint64_t{1} << r)) m ^= rows[r];
      }
      in_span = m == target;
    }
    auto solved = known.solve(target);
    EXPECT_EQ(solved.has_value(), in_span);
    if (solved) EXPECT_EQ(*solved, value_of(target));
  }
}

// Oracle: the target is reachable iff it is a subsequence of the first
// key_bits + picks remaining bits.
bool reachable(const std::vector<bool>& remaining, std::size_t picks, const Key& target) {
  std::size_t i = 0;
  for (std::size_t s = 0; s < picks + target.size() && i < target.size(); ++s) {
    if (remaining[s] == target.bit(i)) ++i;
  }
  return i == target.size();
}

TEST(TreeAttack, PickChoiceMatchesSubsequenceOracle) {
  Rng rng(6);
  for (std::size_t len = 3; len <= 8; ++len) {
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << len); ++pattern) {
      std::vector<bool> remaining;
      for (std::size_t s = 0; s < len; ++s) remaining.push_back((pattern >> s) & 1u);
      for (std::size_t picks = 1; picks + 2 <= len; ++picks) {
        for (const auto& target : all_keys(2)) {
          auto c = choose_detection_picks(remaining, picks, target, rng);
          EXPECT_EQ(c.matching_bits == 2, reachable(remaining, picks, target));
          EXPECT_EQ(c.shots.size(), picks);
        }
      }
    }
  }
}

TEST(TreeAttack, WorkedExample) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    auto reg = GhzRegister::from_bits(3, {true, false, true, false, true});
    reg.designate(0, ShotUse::Detection);
    TreeAttackParams p;
    p.honest_picks = 0;
    p.expected = Key::from_bits("10");
    auto o = run_tree_attack(reg, p, rng);
    EXPECT_EQ(o.verdict, Verdict::Controlled);
    EXPECT_EQ(o.final_keys[1], Key::from_bits("10"));
  }
}

TEST(TreeAttack, TiesBreakLexicographically) {
  Rng rng(0);
  auto c = choose_detection_picks({false, true, false, true}, 2, Key::from_bits("10"), rng);
  EXPECT_EQ(c.shots, (std::vector<std::size_t>{0, 3}));
  EXPECT_FALSE(c.forced);
  auto flat = choose_detection_picks({true, true, true, true}, 1, Key::from_bits("11"), rng);
  EXPECT_TRUE(flat.forced);
  EXPECT_THROW(choose_detection_picks({true, true}, 1, Key::from_bits("11"), rng), StructuralError);
  EXPECT_THROW(choose_detection_picks({true, true, true}, 0, Key::from_bits("11"), rng), StructuralError);
}

TEST(TreeAttack, ControlRateBaselineAndMonotonicity) {
  EXPECT_DOUBLE_EQ(tree_control_rate(6, 2, 1, 0), 0.25);
  double last = 0.25;
  for (std::size_t picks = 1; picks <= 3; ++picks) {
    double r = tree_control_rate(6, 2, 1, picks);
    EXPECT_GE(r, last);
    EXPECT_LT(r, 1.0);
    last = r;
  }
  EXPECT_THROW(tree_control_rate(4, 2, 1, 2), StructuralError);
}

TEST(TreeAttack, TamperingIsCaught) {
  Rng rng(2);
  auto reg = GhzRegister::prepare(3, 6, rng);
  for (std::size_t s = 0; s < 6; ++s) reg.tamper(s, 1);
  TreeAttackParams p;
  p.shots = 6;
  p.expected = Key::from_bits("11");
  EXPECT_EQ(run_tree_attack(reg, p, rng).verdict, Verdict::Aborted);
}

TEST(SingleAttacker, CircleResistsTheLoneFamily) {
  auto r = search_single_attacker({TopologyKind::Circle, 4}, 0, 2, 1, 8, 3);
  EXPECT_EQ(r.strategies, 4u * 9u);
  EXPECT_FALSE(r.total_control);
}

TEST(SingleAttacker, CompleteGraphCoalitionCannotPrecompute) {
  auto r = search_cgt_collusion(4, {0, 1}, 2, 4, 8, 5);
  EXPECT_EQ(r.strategies, 16u);
  EXPECT_FALSE(r.total_control);
}

}  // namespace
}  // namespace mqka
