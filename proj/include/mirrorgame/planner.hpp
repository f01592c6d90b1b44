#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mirrorgame/rational.hpp"
#include "mirrorgame/setmask.hpp"

namespace mirrorgame {

struct PlannerConfig {
  Rat ratio;            // layer ratio 2n/(2n+1)
  int max_layers = 0;   // (2n)^3
  Rat low_prob_cutoff;  // probabilities below this land in the long-tail bucket
};

PlannerConfig default_planner_config(int n);

// Smallest j >= 1 with p in (ratio^j, ratio^(j-1)] (upper-closed intervals).
// Probabilities below the cutoff, or beyond max_layers, return nullopt: they
// belong to the long-tail bucket and are never paired.
std::optional<int> layer_index(const Rat& p, const PlannerConfig& config);

// Decoy pair: two same-layer feasible sets with an even union. Near-equal
// conditional probabilities make them statistically indistinguishable.
struct PairPlan {
  SetMask s1, s2;
  int layer = 0;
  Rat p1, p2;
  SetMask avoid;  // s1 union s2
};

struct PairPlanSet {
  std::vector<PairPlan> pairs;
  std::vector<std::pair<SetMask, Rat>> unpaired;  // leftovers + long tail
  Rat unpaired_mass = 0;
};

// Groups dist by layer, pairs each layer greedily, and pools the leftovers.
// All sets must have even cardinality. Every emitted pair is checked against
// the ratio interval [ratio, 1/ratio] exactly.
PairPlanSet build_pair_plan(const std::vector<std::pair<SetMask, Rat>>& dist,
                            int n, const PlannerConfig& config);

// The unique pair containing the actual set, if any.
std::optional<PairPlan> choose_decoy(const std::vector<PairPlan>& pairs,
                                     const SetMask& actual);

nlohmann::ordered_json pair_plan_json(const PairPlanSet& plan);

}  // namespace mirrorgame
