#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mirrorgame/belief.hpp"
#include "mirrorgame/match.hpp"
#include "mirrorgame/planner.hpp"

namespace mirrorgame {

struct AdversaryConfig {
  enum class Mode { half, amplified };

  Mode mode = Mode::half;
  int n = 0;
  int k = 0;  // half: breakpoint after turn 2k; 0 resolves to round(0.4n), min 1
  int c = 0;  // amplified: even, with n/c a positive even integer
  Rat layer_ratio;             // default 2n/(2n+1)
  int max_layers = 0;          // default (2n)^3
  Rat low_prob_cutoff;         // default 2^(-4n)
  Rat beta;                    // amplified: alpha < beta < 1, alpha = (1/c)^(1/4c)
  Rat useful_threshold;        // default (9/10)^(2n) half, beta^(2n) amplified
  std::uint64_t enumeration_budget = 10'000'000;

  static AdversaryConfig half_config(int n, int k = 0);
  static AdversaryConfig amplified_config(int n, int c);

  void validate() const;  // throws ConfigError
  std::vector<int> breakpoints() const;  // turns; half {2k}, amplified {t*n/c}
  PlannerConfig planner() const;
  std::string signature() const;  // stable cache-key component

  // Advisory asymptotic checks for a given Alice memory size; these do not
  // gate play because the constants are vacuous at desk scale.
  std::vector<std::string> diagnostics(int alice_mem_bits) const;
};

// Exact beta > alpha check without floating point: beta^(4c) * c > 1.
bool beta_above_alpha(const Rat& beta, int c);

// Smallest q/1000 above alpha = (1/c)^(1/4c); the shipped default.
Rat default_amplified_beta(int c);

// Everything the strategy needs to act after a breakpoint, cached by the
// exact inputs of the enumeration so replans across trials are free.
struct EpochPlanTable {
  std::map<MemState, PairPlanSet> bucket_plans;
  Rat immediate_win_mass;
  Rat surviving_mass;
  UsefulReport useful;
  std::uint64_t nodes = 0;
};

class PlanCache {
public:
  std::shared_ptr<const EpochPlanTable> get_or_compute(
      const std::string& key,
      const std::function<std::shared_ptr<const EpochPlanTable>()>& compute);
  std::size_t size() const;

private:
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<const EpochPlanTable>> entries_;
};

// Review data for tests and verbose output: what was planned at a breakpoint.
struct EpochReview {
  int index = 0;            // t, 1-based
  int breakpoint_turn = 0;  // k_t
  MemState mem;             // Alice's state at the breakpoint
  SetMask actual;           // the epoch's true played set
  std::optional<PairPlan> decoy;
};

// The enumerating adversary. Phase 1 plays uniformly from the allowed pool;
// each breakpoint yields a decoy pair for the epoch's actual set; afterwards
// Bob plays the smallest unused number outside every live pair's union. A
// pair dies at the first touch of its union after its breakpoint.
class AdversaryBob : public BobStrategy {
public:
  explicit AdversaryBob(AdversaryConfig config,
                        std::shared_ptr<PlanCache> cache = nullptr,
                        std::function<void(const std::string&)> debug_sink = nullptr);

  std::string id() const override;
  BobDecision decide(const PublicView& view) const override;

  // Recomputes the per-epoch plans for a finished game's transcript.
  std::vector<EpochReview> epoch_review(const AliceProgram& prog,
                                        const RandTape& tape,
                                        const std::vector<TurnRecord>& records) const;

  const AdversaryConfig& config() const { return config_; }

private:
  std::vector<EpochReview> plans_through(const AliceProgram& prog,
                                         const RandTape& tape,
                                         const std::vector<TurnRecord>& records,
                                         int before_turn) const;

  std::shared_ptr<const EpochPlanTable> build_plan_table(
      const AliceProgram& prog, const RandTape& tape, const PhaseStart& start,
      const SetMask& exclusion, int epoch_index, int bob_turns) const;

  AdversaryConfig config_;
  std::shared_ptr<PlanCache> cache_;
  std::function<void(const std::string&)> debug_sink_;
};

}  // namespace mirrorgame
