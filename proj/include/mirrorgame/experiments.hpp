#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mirrorgame/match.hpp"
#include "mirrorgame/rational.hpp"

namespace mirrorgame {

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

// Wilson score interval for successes/trials at z standard normal units.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z);

struct TrialStats {
  std::uint64_t trials = 0;
  std::uint64_t alice_loss = 0;
  std::uint64_t bob_loss = 0;
  std::uint64_t draw = 0;

  double rate(std::uint64_t count) const;
  Interval wilson(std::uint64_t count, double z = 1.96) const;
};

// Trial i plays run_match with its own stream derive_stream(master_seed, i),
// so the tally is independent of execution order and thread count.
TrialStats run_trials(const AliceProgram& alice, const BobStrategy& bob, int n,
                      std::uint64_t trials, std::uint64_t master_seed,
                      int threads = 1);

// Exact outcome distribution by exhaustive recursion through the engine:
// every Bob candidate branch and every random block value, with exact
// rational weights. Counts leaves per outcome as a branch census.
struct OracleResult {
  Rat alice_loss = 0;
  Rat bob_loss = 0;
  Rat draw = 0;
  std::uint64_t leaves_alice_loss = 0;
  std::uint64_t leaves_bob_loss = 0;
  std::uint64_t leaves_draw = 0;
  std::uint64_t nodes = 0;

  Rat total() const { return alice_loss + bob_loss + draw; }
};

OracleResult exact_outcome_distribution(const AliceProgram& prog,
                                        const BobStrategy& bob, int n,
                                        std::uint64_t budget = 10'000'000);

// Alice with her whole tape drawn up front. determinize(prog, seed) draws the
// exact tape run_match(prog, ..., seed) would produce, so a minimax witness
// line can be replayed through the real engine with the same seed.
struct DeterminizedAlice {
  AliceProgram prog;
  RandTape tape;
};

DeterminizedAlice determinize(const AliceProgram& prog, std::uint64_t seed);

struct MinimaxResult {
  int value = 0;  // 1 iff Bob can force an Alice loss
  std::vector<int> bob_line;
  std::uint64_t nodes = 0;
};

// Exhaustive search over Bob's moves against the now-deterministic Alice.
MinimaxResult minimax_best_response(const DeterminizedAlice& alice, int n,
                                    std::uint64_t budget = 10'000'000);

// Analytic guidance values. Asymptotic in nature: reported next to results,
// never asserted against simulation at this scale. c or k of 0 skips the
// corresponding lines.
struct BoundsReport {
  int n = 0;
  int c = 0;
  int k = 0;
  Rat half_loss;       // n/(2n+1)
  Rat amp_survival;    // ((n+1)/(2n+1))^(c/2)
  Rat set_prob_cap;    // (k/n)^k
  Rat corollary_cap;   // (21/25)^(2n)
  Rat epoch_cap;       // (1/c)^(n/2c)
  Rat beta;            // default beta for c
  double delta_low = 0.0;   // -(3/4) log2 beta
  double delta_high = 0.0;  // -log2 beta
  double delta_min = 0.0;   // 1/(8c)
};

BoundsReport bounds(int n, int c = 0, int k = 0);
std::string bounds_text(const BoundsReport& report);

// One result row. ci bounds are the 95% Wilson interval of the Alice-loss
// rate; oracle_alice_loss is filled when the exact oracle also ran.
struct SimulationRow {
  std::string experiment_id;
  int n = 0;
  std::string alice;
  std::string bob;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t alice_loss = 0;
  std::uint64_t bob_loss = 0;
  std::uint64_t draw = 0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::optional<Rat> oracle_alice_loss;
};

SimulationRow make_row(const std::string& alice_id, const std::string& bob_id,
                       int n, std::uint64_t trials, std::uint64_t seed,
                       const TrialStats& stats,
                       const std::optional<Rat>& oracle_alice_loss);

std::string csv_header();
std::string to_csv_row(const SimulationRow& row);
nlohmann::ordered_json to_json_row(const SimulationRow& row);

// Stable fingerprint of the run configuration (FNV-1a over the canonical
// parameter string), so rows from different runs can be joined.
std::string experiment_fingerprint(int n, const std::string& alice,
                                   const std::string& bob, std::uint64_t trials,
                                   std::uint64_t seed);

}  // namespace mirrorgame
