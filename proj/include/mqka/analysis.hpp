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

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mqka/adversary.hpp"
#include "mqka/errors.hpp"
#include "mqka/key.hpp"
#include "mqka/outcome.hpp"
#include "mqka/protocols.hpp"
#include "mqka/topology.hpp"

namespace mqka {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportVersion = "1";

struct ExperimentConfig {
  TopologyKind topology = TopologyKind::Circle;
  int n = 6;
  std::size_t key_length = 128;
  std::size_t decoys = 16;
  std::size_t trials = 16;
  std::uint64_t seed = 0;
  std::vector<ParticipantId> colluders;
  std::optional<Key> expected;
  std::string out;
  std::string format = "json";

  void validate() const {
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (key_length < 1) throw ConfigError("key length must be at least 1");
    if (n < 3) throw ConfigError("need at least 3 participants");
    if (format != "json" && format != "csv" && format != "markdown") throw ConfigError("unknown format: " + format);
    if (expected && expected->size() != key_length) throw ConfigError("expected key length differs from --key-len");
    for (auto c : colluders) {
      if (c < 0 || c >= n) throw ConfigError("colluder position out of range");
    }
  }
};

inline ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  try {
    if (j.contains("topology")) c.topology = parse_topology(j.at("topology").get<std::string>());
    if (j.contains("n")) c.n = j.at("n").get<int>();
    if (j.contains("key_len")) c.key_length = j.at("key_len").get<std::size_t>();
    if (j.contains("decoys")) c.decoys = j.at("decoys").get<std::size_t>();
    if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("colluders")) c.colluders = j.at("colluders").get<std::vector<int>>();
    if (j.contains("expect")) c.expected = Key::parse(j.at("expect").get<std::string>());
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("format")) c.format = j.at("format").get<std::string>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  } catch (const StructuralError& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  try {
    return config_from_json(Json::parse(in));
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Run serialization.

inline Json keys_to_json(const std::vector<Key>& keys) {
  Json a = Json::array();
  for (const auto& k : keys) a.push_back(k.to_string());
  return a;
}

inline Json outcome_to_json(const RunOutcome& o) {
  Json j;
  j["verdict"] = std::string(verdict_name(o.verdict));
  j["controlled_by"] = o.controlled_by;
  j["final_keys"] = keys_to_json(o.final_keys);
  Json det = Json::array();
  for (const auto& d : o.detections) {
    det.push_back({{"period", d.period}, {"from", d.from}, {"to", d.to}, {"failed", d.failed}});
  }
  j["detections"] = det;
  Json trace = Json::array();
  for (const auto& t : o.trace) {
    trace.push_back({{"period", t.period}, {"action", t.action}, {"actor", t.actor},
                     {"sequence", t.sequence_owner}, {"route", t.route}});
  }
  j["trace"] = trace;
  return j;
}

inline Json schedule_to_json(const FlipSchedule& s) {
  Json j;
  j["knowledge_period"] = s.knowledge_period;
  Json steals = Json::array();
  for (const auto& e : s.steals) {
    steals.push_back({{"sequence", e.sequence_owner}, {"route", e.route}, {"measurer", e.measurer}, {"period", e.period}});
  }
  j["steals"] = steals;
  Json flips = Json::array();
  for (const auto& [owner, e] : s.flips) {
    flips.push_back({{"sequence", owner},
                     {"route", e.route},
                     {"colluder", e.colluder},
                     {"period", e.period},
                     {"by_owner", e.by_owner}});
  }
  j["flips"] = flips;
  return j;
}

// ---------------------------------------------------------------------------
// Fairness matrix.

struct FairnessCell {
  std::string archetype;
  int n = 0;
  std::string attack;  // "single" or "collusive"
  bool fair = true;
  std::size_t detections = 0;
  std::size_t trials = 0;
  double control_rate = 0.0;
  std::string method;
  std::vector<std::string> evidence;

  friend bool operator==(const FairnessCell&, const FairnessCell&) = default;
};

struct FairnessRow {
  std::string archetype;
  std::string category;
  bool fair_vs_single = true;
  bool fair_vs_collusive = true;
  std::string comment;

  friend bool operator==(const FairnessRow&, const FairnessRow&) = default;
};

struct FairnessReport {
  std::string version = kReportVersion;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<FairnessRow> rows;
  std::vector<FairnessCell> cells;

  friend bool operator==(const FairnessReport&, const FairnessReport&) = default;
};

struct SweepConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 16;
  std::size_t decoys = 16;
};

namespace detail {

inline std::string run_id(const std::string& archetype, const std::string& attack, int n, std::uint64_t seed,
                          const std::string& extra) {
  std::ostringstream s;
  s << archetype << '/' << attack << "/n" << n << '/' << extra << "/seed" << seed;
  return s.str();
}

inline FairnessCell search_cell(const std::string& archetype, const std::string& attack, int n,
                                const StrategySearchResult& r, std::string method, std::string evidence) {
  FairnessCell c;
  c.archetype = archetype;
  c.n = n;
  c.attack = attack;
  c.fair = !r.total_control;
  c.trials = r.strategies * r.trials_per_strategy;
  c.control_rate = r.best_control_rate;
  c.method = std::move(method);
  c.evidence.push_back(std::move(evidence));
  return c;
}

// Runs a collusive traveling-sequence attack over `trials` seeds; the cell
// is unfair when every run ends Controlled.
template <typename Runner>
FairnessCell collusive_cell(const std::string& archetype, int n, const std::vector<ParticipantId>& colluders,
                            const SweepConfig& sweep, std::size_t key_length, Runner runner) {
  FairnessCell c;
  c.archetype = archetype;
  c.n = n;
  c.attack = "collusive";
  c.trials = sweep.trials;
  auto outcomes = parallel_map(sweep.trials, [&](std::size_t t) {
    Rng rng(trial_seed(sweep.seed, t));
    auto keys = random_keys(n, key_length, rng);
    const Key target = pick_target(xor_fold(keys), rng);
    return runner(keys, target, rng);
  });
  std::size_t controlled = 0;
  std::string who;
  for (auto id : colluders) who += (who.empty() ? "" : ",") + std::to_string(id);
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    c.detections += outcomes[t].detections.size();
    if (outcomes[t].verdict == Verdict::Controlled) ++controlled;
    c.evidence.push_back(run_id(archetype, "collusive", n, trial_seed(sweep.seed, t), "c" + who));
  }
  c.control_rate = static_cast<double>(controlled) / static_cast<double>(sweep.trials);
  c.fair = controlled != sweep.trials;
  c.method = "collusive key stealing and flipping, target differs from the natural key";
  return c;
}

// Tree cells: unfair when the coalition reaches the target more often than
// the 2^-k chance an honest run would, using the exact enumerated rate,
// backed by seeded attack runs.
inline FairnessCell tree_cell(const std::string& attack, const SweepConfig& sweep, std::vector<int> honest,
                              std::size_t shots, std::size_t colluder_picks) {
  const std::size_t key_bits = 2;
  FairnessCell c;
  c.archetype = "tree";
  c.n = 3;
  c.attack = attack;
  c.trials = sweep.trials;
  c.control_rate = tree_control_rate(shots, key_bits, honest.size(), colluder_picks);
  const double baseline = std::ldexp(1.0, -static_cast<int>(key_bits));
  c.fair = !(c.control_rate > baseline);
  c.method = "exact control rate over all shot patterns vs 2^-k baseline";
  for (std::size_t t = 0; t < sweep.trials; ++t) {
    Rng rng(trial_seed(sweep.seed, t));
    TreeAttackParams p;
    p.shots = shots;
    p.key_bits = key_bits;
    p.honest = honest;
    p.colluder_picks = colluder_picks;
    p.expected = Key::random(key_bits, rng);
    auto o = run_tree_attack(p, rng);
    c.detections += o.detections.size();
    c.evidence.push_back(run_id("tree", attack, 3, trial_seed(sweep.seed, t), "shots" + std::to_string(shots)));
  }
  return c;
}

}  // namespace detail

/// Runs every archetype against a lone dishonest participant and against a
/// coalition, and collapses the results into one row per archetype.
inline FairnessReport build_fairness_matrix(const SweepConfig& sweep) {
  FairnessReport report;
  report.seed = sweep.seed;
  report.trials = sweep.trials;

  // Lone attackers and complete-graph coalitions are certified by exhaustive
  // search over a small strategy family at L=2.
  const std::size_t small_key = 2;
  const std::size_t small_decoys = 1;
  report.cells.push_back(detail::search_cell(
      "complete", "single", 4, search_cgt_collusion(4, {0}, small_key, small_decoys, sweep.trials, sweep.seed),
      "exhaustive per-recipient key offsets fixed before receipt",
      detail::run_id("complete", "single", 4, sweep.seed, "c0")));
  report.cells.push_back(detail::search_cell(
      "complete", "collusive", 4,
      search_cgt_collusion(4, {0, 1}, small_key, small_decoys, sweep.trials, sweep.seed),
      "exhaustive per-recipient key offsets fixed before receipt",
      detail::run_id("complete", "collusive", 4, sweep.seed, "c0,1")));

  report.cells.push_back(detail::search_cell(
      "circle", "single", 5,
      search_single_attacker({TopologyKind::Circle, 5}, 0, small_key, small_decoys, sweep.trials, sweep.seed),
      "exhaustive substitute keys x blind-flip masks",
      detail::run_id("circle", "single", 5, sweep.seed, "c0")));
  report.cells.push_back(detail::collusive_cell(
      "circle", 6, {0, 3}, sweep, 32, [&](const std::vector<Key>& keys, const Key& target, Rng& rng) {
        return run_collusive_circle(6, keys, {{0, 3}, target, AttackVariant::TwoColluderCircle}, sweep.decoys, rng);
      }));

  report.cells.push_back(detail::search_cell(
      "half-circle", "single", 6,
      search_single_attacker({TopologyKind::HalfCircle, 6}, 0, small_key, small_decoys, sweep.trials, sweep.seed),
      "exhaustive substitute keys x blind-flip masks",
      detail::run_id("half-circle", "single", 6, sweep.seed, "c0")));
  report.cells.push_back(detail::collusive_cell(
      "half-circle", 6, {0, 2, 4}, sweep, 32, [&](const std::vector<Key>& keys, const Key& target, Rng& rng) {
        return run_halfcircle_attack(6, keys, {{0, 2, 4}, target, AttackVariant::HalfCircleThreeColluder},
                                     sweep.decoys, rng);
      }));

  // Tree: Bob picks first; a lone late picker (Charlie) or the Alice+Charlie
  // coalition chooses detection shots after measuring.
  report.cells.push_back(detail::tree_cell("single", sweep, {0, 1}, 6, 2));
  report.cells.push_back(detail::tree_cell("collusive", sweep, {1}, 5, 2));

  auto find = [&](const std::string& a, const std::string& attack) {
    for (const auto& c : report.cells) {
      if (c.archetype == a && c.attack == attack) return c.fair;
    }
    throw std::logic_error("missing cell");
  };
  report.rows.push_back({"complete", "CGT", find("complete", "single"), find("complete", "collusive"),
                         "keys are committed before any are received"});
  report.rows.push_back({"circle", "CT", find("circle", "single"), find("circle", "collusive"),
                         "colluders at most floor((N+1)/2) apart control the key"});
  report.rows.push_back({"half-circle", "CT", find("half-circle", "single"), find("half-circle", "collusive"),
                         "needs three colluders not on one half of the circle"});
  report.rows.push_back({"tree", "TT/CCGT", find("tree", "single"), find("tree", "collusive"),
                         "effect depends on the share of detection shots"});
  return report;
}

inline Json report_to_json(const FairnessReport& r) {
  Json j;
  j["version"] = r.version;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"archetype", row.archetype},
                    {"category", row.category},
                    {"fair_vs_single", row.fair_vs_single},
                    {"fair_vs_collusive", row.fair_vs_collusive},
                    {"comment", row.comment}});
  }
  j["rows"] = rows;
  Json cells = Json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"archetype", c.archetype},
                     {"n", c.n},
                     {"attack", c.attack},
                     {"fair", c.fair},
                     {"detections", c.detections},
                     {"trials", c.trials},
                     {"control_rate", c.control_rate},
                     {"method", c.method},
                     {"evidence", c.evidence}});
  }
  j["cells"] = cells;
  return j;
}

inline FairnessReport report_from_json(const Json& j) {
  FairnessReport r;
  r.version = j.at("version").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.trials = j.at("trials").get<std::size_t>();
  for (const auto& row : j.at("rows")) {
    r.rows.push_back({row.at("archetype").get<std::string>(), row.at("category").get<std::string>(),
                      row.at("fair_vs_single").get<bool>(), row.at("fair_vs_collusive").get<bool>(),
                      row.at("comment").get<std::string>()});
  }
  for (const auto& c : j.at("cells")) {
    FairnessCell cell;
    cell.archetype = c.at("archetype").get<std::string>();
    cell.n = c.at("n").get<int>();
    cell.attack = c.at("attack").get<std::string>();
    cell.fair = c.at("fair").get<bool>();
    cell.detections = c.at("detections").get<std::size_t>();
    cell.trials = c.at("trials").get<std::size_t>();
    cell.control_rate = c.at("control_rate").get<double>();
    cell.method = c.at("method").get<std::string>();
    cell.evidence = c.at("evidence").get<std::vector<std::string>>();
    r.cells.push_back(std::move(cell));
  }
  return r;
}

inline std::string report_to_csv(const FairnessReport& r) {
  std::ostringstream s;
  s << "archetype,N,attack,verdict,detections,trials\n";
  for (const auto& c : r.cells) {
    s << c.archetype << ',' << c.n << ',' << c.attack << ',' << (c.fair ? "fair" : "unfair") << ','
      << c.detections << ',' << c.trials << '\n';
  }
  return s.str();
}

inline std::string report_to_markdown(const FairnessReport& r) {
  auto yes_no = [](bool b) { return b ? "Yes" : "No"; };
  std::ostringstream s;
  s << "| Protocol | Category | Fair against single attacks? | Fair against collusive attacks? | Comments |\n";
  s << "|---|---|---|---|---|\n";
  for (const auto& row : r.rows) {
    s << "| " << row.archetype << " | " << row.category << " | " << yes_no(row.fair_vs_single) << " | "
      << yes_no(row.fair_vs_collusive) << " | " << row.comment << " |\n";
  }
  return s.str();
}

inline std::string render_report(const FairnessReport& r, const std::string& format) {
  if (format == "json") return report_to_json(r).dump(2) + "\n";
  if (format == "csv") return report_to_csv(r);
  if (format == "markdown") return report_to_markdown(r);
  throw ConfigError("unknown format: " + format);
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

inline void emit_report(const FairnessReport& r, const std::string& format, const std::string& path) {
  write_text(path, render_report(r, format));
}

}  // namespace mqka
