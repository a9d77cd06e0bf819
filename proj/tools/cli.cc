// Copyright 2026 The cdenlab Authors
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

#include "cli.h"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "cdenlab/fs_cden.h"
#include "cdenlab/games.h"
#include "cdenlab/lemmas.h"
#include "cdenlab/report.h"
#include "cdenlab/rng.h"
#include "cdenlab/stats.h"

namespace cdenlab {

namespace {

constexpr uint64_t kMaxTrials = 10'000'000;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string game;
  std::string scheme;
  std::string strategy;
  std::string verifier = "honest";
  std::string variant = "original";
  size_t lambda = 0;  // 0: command default
  size_t lambda_x = 0;
  size_t ell = 8;
  size_t reps = 6;
  size_t k1 = 1;
  size_t k2 = 1;
  uint64_t trials = 0;
  std::string seed_text;
  uint64_t seed = kDefaultSeed;
  std::string out;
  std::string format = "json";
  bool per_trial = false;
  bool timing = false;
  size_t instances = 100;
  size_t draws = 10000;

  nlohmann::json to_json() const {
    nlohmann::json j = {{"command", command}, {"seed", seed}, {"format", format}};
    if (command == "experiment") {
      j.update({{"game", game},
                {"scheme", scheme},
                {"strategy", strategy},
                {"verifier", verifier},
                {"variant", variant},
                {"lambda", lambda},
                {"lambda_x", lambda_x},
                {"ell", ell},
                {"reps", reps},
                {"trials", trials}});
      if (game == "sigcd") j.update({{"k1", k1}, {"k2", k2}});
    } else {
      j.update({{"lambda", lambda}, {"instances", instances}, {"draws", draws}});
    }
    return j;
  }
};

uint64_t parse_seed(const std::string& text) {
  try {
    size_t pos = 0;
    const uint64_t v = std::stoull(text, &pos, 0);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError("invalid seed '" + text + "'");
  }
}

void resolve_seed(RunConfig& cfg) {
  if (!cfg.seed_text.empty()) {
    cfg.seed = parse_seed(cfg.seed_text);
  } else if (const char* env = std::getenv("CDENLAB_SEED"); env && *env) {
    cfg.seed = parse_seed(env);
  }
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

void emit(const RunConfig& cfg, const std::string& body, std::ostream& out) {
  if (cfg.out.empty()) {
    out << body;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot open output path '" + cfg.out + "'");
  f << body;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

int cmd_lemmas(RunConfig& cfg, std::ostream& out) {
  if (cfg.lambda == 0) cfg.lambda = 4;
  require(cfg.lambda >= 2 && cfg.lambda <= 6 && cfg.lambda % 2 == 0,
          "--lambda for the lemma suites must be even and at most 6 (density-matrix cap)");
  require(cfg.instances >= 1 && cfg.instances <= 1000, "--instances must lie in [1, 1000]");
  require(cfg.draws <= 1'000'000, "--draws must be at most 1e6");
  const auto t0 = std::chrono::steady_clock::now();
  LemmaConfig lc;
  lc.seed = cfg.seed;
  lc.owth_instances = cfg.instances;
  lc.owth_draws = cfg.draws;
  std::vector<SuiteSummary> suites = run_all_lemmas(lc);
  // The lemma-level λ drives the proof z-twirl bridge.
  if (cfg.lambda != 4) {
    for (auto& s : suites) {
      if (s.lemma_id == kLemmaProofZTwirl) s = proof_ztwirl_suite(Rng(cfg.seed).split(7).seed(), 5, cfg.lambda);
    }
  }
  uint64_t violations = 0;
  nlohmann::json results = nlohmann::json::array();
  for (const auto& s : suites) {
    violations += s.violations;
    results.push_back(s.to_json());
  }
  const double wall = cfg.timing ? elapsed_ms(t0) : 0.0;
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "lemma_id,instances,violations,max_violation\n";
    for (const auto& s : suites) {
      os << s.lemma_id << ',' << s.instances << ',' << s.violations << ',' << fmt_num(s.max_violation) << "\n";
    }
    emit(cfg, os.str(), out);
  } else {
    emit(cfg, render_report(make_report(cfg.to_json(), results, wall)), out);
  }
  for (const auto& s : suites) {
    out << "lemma=" << s.lemma_id << " instances=" << s.instances << " violations=" << s.violations
        << " max_violation=" << fmt_num(s.max_violation) << "\n";
  }
  return violations == 0 ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

GameStats experiment_stats(RunConfig& cfg) {
  const std::string& g = cfg.game;
  if (g == "adp-del") {
    if (cfg.strategy.empty()) cfg.strategy = "computational";
    if (cfg.lambda_x == 0) cfg.lambda_x = 6;
    if (cfg.trials == 0) cfg.trials = 4096;
    require(cfg.lambda_x <= 16, "--lambda-x must be at most 16");
    require(cfg.reps >= 1 && cfg.reps <= 64, "--reps must lie in [1, 64]");
    return run_adp_del(adp_strategy_by_name(cfg.strategy), cfg.lambda_x, cfg.reps, cfg.trials, cfg.seed);
  }
  if (g == "double-ext") {
    if (cfg.strategy.empty()) cfg.strategy = "measure-and-guess";
    if (cfg.lambda_x == 0) cfg.lambda_x = 8;
    if (cfg.trials == 0) cfg.trials = 10000;
    require(cfg.lambda_x <= 16, "--lambda-x must be at most 16");
    require(cfg.variant == "original" || cfg.variant == "updated", "--variant must be original or updated");
    return run_double_extraction(dx_strategy_by_name(cfg.strategy), cfg.lambda_x, cfg.trials, cfg.seed,
                                 cfg.variant == "updated");
  }
  if (g == "dph") {
    if (cfg.strategy.empty()) cfg.strategy = "computational";
    if (cfg.lambda == 0) cfg.lambda = 8;
    if (cfg.trials == 0) cfg.trials = 10000;
    return dph_game(dph_strategy_by_name(cfg.strategy), cfg.lambda, cfg.trials, cfg.seed);
  }
  if (g == "soundness" || g == "sigcd") {
    if (cfg.lambda_x == 0) cfg.lambda_x = 8;
    if (cfg.trials == 0) cfg.trials = 1000;
    if (cfg.scheme.empty()) cfg.scheme = "ot";
    OtParams op;
    op.lambda_x = cfg.lambda_x;
    op.ell = cfg.ell;
    if (g == "sigcd") return run_sigcd_scenario(cfg.k1, cfg.k2, op, cfg.trials, cfg.seed);
    if (cfg.strategy.empty()) cfg.strategy = "replay";
    return run_soundness_game(sv_by_name(cfg.verifier), sa_by_name(cfg.strategy), cfg.scheme, op, cfg.trials,
                              cfg.seed);
  }
  throw UsageError("unknown game '" + g + "'");
}

int cmd_experiment(RunConfig& cfg, std::ostream& out) {
  require(!cfg.game.empty(), "--game is required");
  require(cfg.trials <= kMaxTrials, "--trials must be at most 1e7");
  require(cfg.lambda == 0 || (cfg.lambda >= 2 && cfg.lambda <= kMaxLambda && cfg.lambda % 2 == 0),
          "--lambda must be even and lie in [2, 12]");
  const auto t0 = std::chrono::steady_clock::now();

  if (cfg.game == "deniability") {
    if (cfg.scheme.empty()) cfg.scheme = "fs-nizk";
    if (cfg.strategy.empty()) cfg.strategy = "honest-deleter";
    if (cfg.lambda == 0) cfg.lambda = 8;
    require(cfg.scheme == "fs-nizk" || cfg.scheme == "fs-sig", "--scheme must be fs-nizk or fs-sig");
    const FsAdversary adv = adversary_by_name(cfg.strategy);
    const DeniabilityPair pair = run_deniability_pair(cfg.scheme, adv, cfg.lambda, cfg.seed);
    nlohmann::json res = pair.to_json();
    if (cfg.trials > 0) res["residuals"] = compare_residuals(cfg.scheme, adv, cfg.lambda, cfg.trials, cfg.seed).to_json();
    const double wall = cfg.timing ? elapsed_ms(t0) : 0.0;
    emit(cfg, render_report(make_report(cfg.to_json(), res, wall)), out);
    char buf[256];
    std::snprintf(buf, sizeof buf, "game=deniability scheme=%s real_accept_prob=%.6f sim_accept_prob=%.6f\n",
                  cfg.scheme.c_str(), pair.real.accept_prob, pair.sim.accept_prob);
    out << buf;
    return kExitOk;
  }

  if (cfg.game == "evidence-demo") {
    if (cfg.trials == 0) cfg.trials = 1000;
    if (cfg.lambda == 0) cfg.lambda = 8;
    EvidenceReport rep = evidence_collection_demo(cfg.trials, cfg.seed, cfg.lambda);
    const double wall = cfg.timing ? elapsed_ms(t0) : 0.0;
    if (cfg.format == "csv") {
      emit(cfg, rep.strawman.to_csv() + rep.fs_honest.to_csv() + rep.fs_measure.to_csv(), out);
    } else {
      emit(cfg, render_report(make_report(cfg.to_json(), rep.to_json(), wall)), out);
    }
    out << rep.strawman.summary() << "\n" << rep.fs_honest.summary() << "\n" << rep.fs_measure.summary() << "\n";
    out << "strawman_advantage=" << fmt_num(rep.strawman_advantage)
        << " fs_honest_advantage=" << fmt_num(rep.fs_honest_advantage) << "\n";
    return kExitOk;
  }

  GameStats gs = experiment_stats(cfg);
  if (cfg.timing) gs.wall_time_ms = elapsed_ms(t0);
  if (cfg.format == "csv") {
    emit(cfg, gs.to_csv(cfg.per_trial), out);
  } else {
    emit(cfg, render_report(make_report(cfg.to_json(), gs.to_json(cfg.per_trial), gs.wall_time_ms)), out);
  }
  out << gs.summary() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cdenlab: certified-deniability simulations and lemma checks", "cdenlab"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed_text, "master seed (decimal or 0x hex); default 0xC0DE or $CDENLAB_SEED");
    sub->add_option("--out", cfg.out, "output path");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--lambda", cfg.lambda, "security parameter λ");
    sub->add_flag("--timing", cfg.timing, "record wall time (breaks byte-identical output)");
  };

  CLI::App* lem = app.add_subcommand("lemmas", "run every numerical lemma suite");
  common(lem);
  lem->add_option("--instances", cfg.instances, "randomized oracle-replacement instances");
  lem->add_option("--draws", cfg.draws, "extraction draws per instance");

  CLI::App* exp = app.add_subcommand("experiment", "run a security game");
  common(exp);
  exp->add_option("--game", cfg.game, "adp-del, double-ext, dph, soundness, deniability, evidence-demo, sigcd");
  exp->add_option("--scheme", cfg.scheme, "ot (soundness); fs-nizk or fs-sig (deniability)");
  exp->add_option("--strategy", cfg.strategy, "adversary strategy");
  exp->add_option("--verifier", cfg.verifier, "soundness verifier: honest or always-accept");
  exp->add_option("--variant", cfg.variant, "double-ext input state: original or updated");
  exp->add_option("--lambda-x", cfg.lambda_x, "λx");
  exp->add_option("--ell", cfg.ell, "one-time scheme length ℓ");
  exp->add_option("--reps", cfg.reps, "adp-del indices");
  exp->add_option("--k1", cfg.k1, "sigcd deletions");
  exp->add_option("--k2", cfg.k2, "sigcd forgeries");
  exp->add_option("--trials", cfg.trials, "Monte Carlo trials");
  exp->add_flag("--per-trial", cfg.per_trial, "one CSV row / JSON outcome per trial");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    resolve_seed(cfg);
    if (lem->parsed()) {
      cfg.command = "lemmas";
      return cmd_lemmas(cfg, out);
    }
    cfg.command = "experiment";
    return cmd_experiment(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitViolation;
  }
}

}  // namespace cdenlab
