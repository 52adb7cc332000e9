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

// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "mqka/mqka.hpp"

namespace {

using namespace mqka;
using Clock = std::chrono::steady_clock;

struct Result {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<int> members(unsigned mask, int n) {
  std::vector<int> out;
  for (int p = 0; p < n; ++p) {
    if (mask & (1u << p)) out.push_back(p);
  }
  return out;
}

Result ac1() {
  const auto t0 = Clock::now();
  Rng rng(1);
  std::size_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const int n = 3 + static_cast<int>(rng.uniform(6));
    auto keys = random_keys(n, 128, rng);
    const auto expected = Key::random(128, rng);
    const auto c = rng.uniform(static_cast<std::uint64_t>(n));
    keys[c] = forged_key(keys[c], expected, xor_fold(keys));
    bad += xor_fold(keys) == expected ? 0 : 1;
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && secs < 5.0, std::to_string(bad) + " mismatches in 10000, " + std::to_string(secs) + " s"};
}

Result ac2() {
  std::size_t bad = 0;
  const std::size_t runs = 1000;
  for (const char* name : {"complete", "circle", "half-circle", "tree"}) {
    const auto kind = parse_topology(name);
    for (std::size_t t = 0; t < runs; ++t) {
      Rng rng(trial_seed(2, t));
      const int n = 3 + static_cast<int>(t % 6);
      RunOutcome o;
      Key oracle;
      try {
        if (kind == TopologyKind::Tree) {
          std::vector<bool> bits;
          for (int s = 0; s < 32 + n; ++s) bits.push_back(rng.bit());
          o = run_tree(GhzRegister::from_bits(n, bits), {n, 32, std::vector<std::size_t>(n, 1), {}}, rng);
          // The key must be an ordered pick of the shared bits that skips exactly n shots.
          std::size_t i = 0, skipped = 0;
          for (std::size_t s = 0; s < bits.size() && i < 32; ++s) {
            if (bits[s] == o.final_keys[0].bit(i)) {
              ++i;
            } else {
              ++skipped;
            }
          }
          oracle = (i == 32 && skipped <= static_cast<std::size_t>(n)) ? o.final_keys[0] : Key::zeros(1);
        } else {
          auto keys = random_keys(n, 32, rng);
          oracle = xor_fold(keys);
          if (kind == TopologyKind::Circle) o = run_circle(n, keys, 16, rng);
          if (kind == TopologyKind::HalfCircle) o = run_half_circle(n, keys, 16, rng);
          if (kind == TopologyKind::CompleteGraph) o = run_cgt(n, keys, 16, rng);
        }
      } catch (const DetectionAbort&) {
        ++bad;
        continue;
      }
      const bool ok = o.detections.empty() && o.unanimous() && o.final_keys.size() == static_cast<std::size_t>(n) &&
                      o.final_keys[0] == oracle;
      bad += ok ? 0 : 1;
    }
  }
  return {bad == 0, std::to_string(bad) + " failures in 4 x " + std::to_string(runs) + " runs"};
}

Result ac3() {
  const auto t0 = Clock::now();
  std::size_t subsets = 0, mismatches = 0;
  std::string first;
  for (int n = 3; n <= 8; ++n) {
    for (unsigned mask = 1; mask < (1u << n) - 1; ++mask) {
      auto s = members(mask, n);
      if (s.size() < 2) continue;
      ++subsets;
      Rng rng(trial_seed(3, mask * 16 + n));
      auto keys = random_keys(n, 2, rng);
      AttackPlan plan{s, pick_target(xor_fold(keys), rng),
                      s.size() == 2 ? AttackVariant::TwoColluderCircle : AttackVariant::MultiColluderCircle};
      auto o = run_collusive_circle(n, keys, plan, 8, rng, {FlipPolicy::Earliest, true});
      const bool controlled = o.verdict == Verdict::Controlled && o.detections.empty();
      if (controlled != feasible(n, s)) {
        ++mismatches;
        if (first.empty()) first = " (first: n=" + std::to_string(n) + " mask=" + std::to_string(mask) + ")";
      }
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 120.0, std::to_string(mismatches) + " mismatches over " + std::to_string(subsets) +
                                               " subsets, " + std::to_string(secs) + " s" + first};
}

// Controlled runs collected for the second half of criterion 7.
std::vector<RunOutcome> g_controlled;

Result ac4() {
  struct Named {
    int n;
    std::vector<int> colluders;
    FlipPolicy policy;
  };
  std::vector<Named> configs;
  for (int n : {4, 6, 8, 10}) configs.push_back({n, {0, n / 2}, FlipPolicy::Earliest});
  for (int n : {5, 7, 9}) configs.push_back({n, {0, n / 2}, FlipPolicy::Earliest});
  configs.push_back({9, {0, 3, 6}, FlipPolicy::Latest});
  std::size_t bad = 0, total = 0;
  for (const auto& c : configs) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Rng rng(trial_seed(4, seed * 64 + c.n));
      auto keys = random_keys(c.n, 32, rng);
      AttackPlan plan{c.colluders, pick_target(xor_fold(keys), rng),
                      c.colluders.size() == 2 ? AttackVariant::TwoColluderCircle : AttackVariant::MultiColluderCircle};
      auto o = run_collusive_circle(c.n, keys, plan, 16, rng, {c.policy, false});
      ++total;
      bad += o.verdict == Verdict::Controlled ? 0 : 1;
      if (o.verdict == Verdict::Controlled) g_controlled.push_back(std::move(o));
    }
  }
  return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) + " Controlled over " +
                        std::to_string(configs.size()) + " configurations"};
}

Result ac5() {
  const int n = 6;
  std::size_t bad = 0, checked = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    auto s = members(mask, n);
    if (s.size() != 2 && s.size() != 3) continue;
    // Oracle: all colluders inside some window of n/2 + 1 consecutive seats.
    bool one_arc = false;
    for (int start = 0; start < n && !one_arc; ++start) {
      bool all = true;
      for (int p : s) all = all && mod_sub(p, start, n) <= n / 2;
      one_arc = all;
    }
    const bool want = s.size() == 3 && !one_arc;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Rng rng(trial_seed(5, mask * 16 + seed));
      auto keys = random_keys(n, 16, rng);
      AttackPlan plan{s, pick_target(xor_fold(keys), rng), AttackVariant::HalfCircleThreeColluder};
      auto o = run_halfcircle_attack(n, keys, plan, 16, rng);
      ++checked;
      const bool got = o.verdict == Verdict::Controlled;
      bad += got == want ? 0 : 1;
      if (got) g_controlled.push_back(std::move(o));
    }
  }
  return {bad == 0, std::to_string(bad) + " wrong verdicts in " + std::to_string(checked) + " runs"};
}

Result ac6a() {
  std::size_t bad = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    auto reg = GhzRegister::from_bits(3, {true, false, true, false, true});
    reg.designate(0, ShotUse::Detection);  // the honest party's pick
    TreeAttackParams p;
    p.honest_picks = 0;
    p.expected = Key::from_bits("10");
    auto o = run_tree_attack(reg, p, rng);
    bad += (o.verdict == Verdict::Controlled && o.final_keys[1] == p.expected) ? 0 : 1;
  }
  return {bad == 0, std::to_string(100 - bad) + "/100 seeds reach key 10 from remaining bits 0101"};
}

Result ac6b() {
  std::string detail;
  bool pass = true;
  for (std::size_t picks = 2; picks <= 3; ++picks) {
    const double rate = tree_control_rate(6, 2, 1, picks);
    pass = pass && rate == 1.0;
    detail += "picks=" + std::to_string(picks) + " rate=" + std::to_string(rate) + " ";
  }
  return {pass, detail + "(shots=6, key_bits=2, exhaustive over patterns, honest picks and targets)"};
}

Result ac7() {
  Rng rng(7);
  const int trials = 10000;
  int detected = 0;
  for (int t = 0; t < trials; ++t) {
    auto pair = SequencePair::generate(0, 8, rng);
    pair.insert_decoys(0, 16, rng);
    pair.send_travel(0, 1);
    pair.blind_flip(1, Key::ones(pair.physical_length()));
    pair.send_travel(1, 2);
    pair.reveal_decoys(0, 2);
    detected += pair.verify_decoys(2).passed() ? 0 : 1;
  }
  const double p = 1.0 - std::pow(0.5, 16);
  const double floor = p - 3.0 * std::sqrt(p * (1.0 - p) / trials);
  const double rate = static_cast<double>(detected) / trials;
  std::size_t noisy = 0;
  for (const auto& o : g_controlled) noisy += o.detections.size() + o.failed_decoys();
  return {rate >= floor && noisy == 0 && !g_controlled.empty(),
          "detected " + std::to_string(detected) + "/" + std::to_string(trials) + " (floor " + std::to_string(floor) +
              "), " + std::to_string(noisy) + " detections across " + std::to_string(g_controlled.size()) +
              " controlled runs"};
}

Result ac8() {
  auto r = build_fairness_matrix({8, 16, 16});
  auto fair = [&](const std::string& a, const std::string& k) {
    for (const auto& c : r.cells) {
      if (c.archetype == a && c.attack == k) return c.fair;
    }
    return false;
  };
  const bool ok = fair("complete", "single") && fair("complete", "collusive") && fair("circle", "single") &&
                  !fair("circle", "collusive") && !fair("half-circle", "collusive") && !fair("tree", "single") &&
                  !fair("tree", "collusive");
  std::string pattern;
  for (const auto& c : r.cells) pattern += c.archetype + "/" + c.attack + "=" + (c.fair ? "fair " : "unfair ");
  return {ok, pattern};
}

Result ac9() {
  auto one = [] {
    auto r = build_fairness_matrix({9, 16, 16});
    Rng rng(9);
    auto keys = random_keys(6, 32, rng);
    AttackPlan plan{{1, 4}, pick_target(xor_fold(keys), rng), AttackVariant::TwoColluderCircle};
    Json j;
    j["report"] = report_to_json(r);
    j["attack"] = outcome_to_json(run_collusive_circle(6, keys, plan, 16, rng));
    return j.dump(2);
  };
  const auto a = one();
  const auto b = one();
  return {a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"AC1 forged key identity", ac1},          {"AC2 honest agreement", ac2},
      {"AC3 feasibility iff control", ac3},      {"AC4 named configurations", ac4},
      {"AC5 half-circle coalitions", ac5},       {"AC6a tree worked example", ac6a},
      {"AC6b tree total control at shots=6", ac6b}, {"AC7 tamper evidence", ac7},
      {"AC8 fairness matrix", ac8},              {"AC9 determinism", ac9},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Result r{false, ""};
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", name.c_str(), r.detail.c_str());
    failed += r.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
