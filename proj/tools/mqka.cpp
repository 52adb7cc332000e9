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

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mqka/mqka.hpp"

namespace {

constexpr int kExitDetection = 2;
constexpr int kExitFeasibility = 3;
constexpr int kExitConfig = 4;

struct Flags {
  std::string config;
  std::string topology;
  std::optional<int> n;
  std::optional<std::size_t> key_len;
  std::optional<std::size_t> decoys;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::string colluders;
  std::string expect;
  std::string format;
  std::string out;
  bool force = false;
  bool latest = false;
};

std::vector<int> parse_positions(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw mqka::ConfigError("bad colluder position: " + item);
    }
  }
  return out;
}

// Config file first, then command-line flags on top.
mqka::ExperimentConfig resolve(const Flags& f) {
  mqka::ExperimentConfig c = f.config.empty() ? mqka::ExperimentConfig{} : mqka::load_config(f.config);
  if (!f.topology.empty()) c.topology = mqka::parse_topology(f.topology);
  if (f.n) c.n = *f.n;
  if (f.key_len) c.key_length = *f.key_len;
  if (f.decoys) c.decoys = *f.decoys;
  if (f.trials) c.trials = *f.trials;
  if (f.seed) c.seed = *f.seed;
  if (!f.colluders.empty()) c.colluders = parse_positions(f.colluders);
  if (!f.expect.empty()) {
    try {
      c.expected = mqka::Key::parse(f.expect);
    } catch (const mqka::StructuralError& e) {
      throw mqka::ConfigError(e.what());
    }
  }
  if (!f.format.empty()) c.format = f.format;
  if (!f.out.empty()) c.out = f.out;
  c.validate();
  return c;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    mqka::write_text(path, text);
  }
}

mqka::Json run_header(const mqka::ExperimentConfig& c, const std::vector<mqka::Key>& keys) {
  mqka::Json j;
  j["topology"] = std::string(mqka::topology_name(c.topology));
  j["n"] = c.n;
  j["key_len"] = c.key_length;
  j["decoys"] = c.decoys;
  j["seed"] = c.seed;
  j["personal_keys"] = mqka::keys_to_json(keys);
  return j;
}

mqka::TreeParams tree_params(const mqka::ExperimentConfig& c) {
  mqka::TreeParams p;
  p.parties = c.n;
  p.key_bits = c.key_length;
  p.picks.assign(c.n, 1);
  return p;
}

int cmd_run(const mqka::ExperimentConfig& c) {
  mqka::Rng rng(c.seed);
  mqka::RunOutcome outcome;
  mqka::Json j;
  if (c.topology == mqka::TopologyKind::Tree) {
    j = run_header(c, {});
    outcome = mqka::run_tree(tree_params(c), c.key_length + static_cast<std::size_t>(c.n), rng);
  } else {
    auto keys = mqka::random_keys(c.n, c.key_length, rng);
    j = run_header(c, keys);
    j["oracle_key"] = mqka::xor_fold(keys).to_string();
    switch (c.topology) {
      case mqka::TopologyKind::CompleteGraph: outcome = mqka::run_cgt(c.n, keys, c.decoys, rng); break;
      case mqka::TopologyKind::Circle: outcome = mqka::run_circle(c.n, keys, c.decoys, rng); break;
      default: outcome = mqka::run_half_circle(c.n, keys, c.decoys, rng); break;
    }
  }
  j["outcome"] = mqka::outcome_to_json(outcome);
  write_output(c.out, j.dump(2) + "\n");
  return 0;
}

int cmd_attack(const mqka::ExperimentConfig& c, const mqka::CollusionOptions& options) {
  if (c.colluders.empty()) throw mqka::ConfigError("attack needs --colluders");
  mqka::Rng rng(c.seed);
  mqka::RunOutcome outcome;
  mqka::Json j;
  if (c.topology == mqka::TopologyKind::Tree) {
    mqka::TreeAttackParams p;
    p.parties = c.n;
    p.key_bits = c.key_length;
    p.honest.clear();
    for (int q = 0; q < c.n; ++q) {
      if (std::find(c.colluders.begin(), c.colluders.end(), q) == c.colluders.end()) p.honest.push_back(q);
    }
    p.colluder_picks = c.colluders.size();
    p.shots = c.key_length + static_cast<std::size_t>(c.n);
    p.expected = c.expected ? *c.expected : mqka::Key::random(c.key_length, rng);
    j = run_header(c, {});
    j["expected"] = p.expected.to_string();
    outcome = mqka::run_tree_attack(p, rng);
  } else {
    auto keys = mqka::random_keys(c.n, c.key_length, rng);
    const mqka::Key expected = c.expected ? *c.expected : mqka::pick_target(mqka::xor_fold(keys), rng);
    j = run_header(c, keys);
    j["colluders"] = c.colluders;
    j["expected"] = expected.to_string();
    j["oracle_key"] = mqka::xor_fold(keys).to_string();
    if (c.topology == mqka::TopologyKind::Circle) {
      auto variant = c.colluders.size() == 2 ? mqka::AttackVariant::TwoColluderCircle
                                             : mqka::AttackVariant::MultiColluderCircle;
      mqka::AttackPlan plan{c.colluders, expected, variant};
      if (mqka::feasible(c.n, c.colluders) || options.force) {
        j["schedule"] = mqka::schedule_to_json(
            mqka::plan_attack(mqka::circle_routes(c.n), c.n, c.colluders, options.policy, options.force));
      }
      outcome = mqka::run_collusive_circle(c.n, keys, plan, c.decoys, rng, options);
    } else if (c.topology == mqka::TopologyKind::HalfCircle) {
      mqka::AttackPlan plan{c.colluders, expected, mqka::AttackVariant::HalfCircleThreeColluder};
      outcome = mqka::run_halfcircle_attack(c.n, keys, plan, c.decoys, rng);
    } else {
      // Complete graph: colluders must commit before receiving anything, so
      // the best they can do is send their keys as usual.
      mqka::CompleteGraphStrategy strategy;
      strategy.colluders = c.colluders;
      strategy.expected = expected;
      outcome = mqka::run_cgt(c.n, keys, c.decoys, rng, &strategy);
    }
  }
  j["outcome"] = mqka::outcome_to_json(outcome);
  write_output(c.out, j.dump(2) + "\n");
  return outcome.verdict == mqka::Verdict::Aborted ? kExitDetection : 0;
}

int cmd_feasibility(const mqka::ExperimentConfig& c) {
  if (c.colluders.empty()) throw mqka::ConfigError("feasibility needs --colluders");
  std::vector<int> gaps;
  try {
    gaps = mqka::circular_gaps(c.n, c.colluders);
  } catch (const mqka::StructuralError& e) {
    throw mqka::ConfigError(e.what());
  }
  std::ostringstream s;
  s << "gaps:";
  for (auto g : gaps) s << ' ' << g;
  s << "\nlimit: " << (c.n + 1) / 2 << '\n';
  bool ok = false;
  if (c.topology == mqka::TopologyKind::HalfCircle) {
    ok = mqka::halfcircle_controllable(c.n, c.colluders);
  } else {
    ok = mqka::feasible(c.n, c.colluders);
  }
  s << "verdict: " << (ok ? "feasible" : "infeasible") << '\n';
  if (ok) {
    auto schedule = mqka::plan_attack(mqka::routes_for({c.topology == mqka::TopologyKind::HalfCircle
                                                            ? mqka::TopologyKind::HalfCircle
                                                            : mqka::TopologyKind::Circle,
                                                        c.n}),
                                      c.n, c.colluders);
    s << "final key known in period " << schedule.knowledge_period << '\n';
  }
  std::cout << s.str();
  return 0;
}

int cmd_report(const mqka::ExperimentConfig& c) {
  mqka::SweepConfig sweep{c.seed, c.trials, c.decoys};
  auto report = mqka::build_fairness_matrix(sweep);
  write_output(c.out, mqka::render_report(report, c.format));
  return 0;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON experiment config; flags override it");
  cmd->add_option("--topology", f.topology, "complete|circle|half-circle|tree");
  cmd->add_option("--n", f.n, "participant count");
  cmd->add_option("--key-len", f.key_len, "key length in bits");
  cmd->add_option("--decoys", f.decoys, "decoys per hand-off");
  cmd->add_option("--trials", f.trials, "trials per sweep cell");
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--colluders", f.colluders, "comma-separated colluder positions");
  cmd->add_option("--expect", f.expect, "target key (hex, or 0b-prefixed binary)");
  cmd->add_option("--format", f.format, "json|csv|markdown");
  cmd->add_option("--out", f.out, "output path (stdout when omitted)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-party quantum key agreement fairness simulator"};
  app.require_subcommand(1);
  Flags flags;
  auto* run = app.add_subcommand("run", "honest run of one topology");
  auto* attack = app.add_subcommand("attack", "collusive attack run");
  auto* feas = app.add_subcommand("feasibility", "gap list and verdict for a colluder set");
  auto* report = app.add_subcommand("report", "fairness matrix for all archetypes");
  for (auto* cmd : {run, attack, feas, report}) add_common(cmd, flags);
  attack->add_flag("--force", flags.force, "run an infeasible circle plan anyway, intercepting blindly");
  attack->add_flag("--latest", flags.latest, "forge as late as possible instead of as early as possible");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const auto config = resolve(flags);
    if (*run) return cmd_run(config);
    if (*attack) {
      return cmd_attack(config, {flags.latest ? mqka::FlipPolicy::Latest : mqka::FlipPolicy::Earliest, flags.force});
    }
    if (*feas) return cmd_feasibility(config);
    return cmd_report(config);
  } catch (const mqka::DetectionAbort& e) {
    std::cerr << "detection abort: " << e.what() << '\n';
    return kExitDetection;
  } catch (const mqka::FeasibilityError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitFeasibility;
  } catch (const mqka::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const mqka::StructuralError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
