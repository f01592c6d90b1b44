#include "mirrorgame/planner.hpp"

#include <algorithm>
#include <map>

#include "mirrorgame/errors.hpp"
#include "mirrorgame/oddtown.hpp"

namespace mirrorgame {

PlannerConfig default_planner_config(int n) {
  if (n < 1) throw ConfigError("n must be at least 1");
  PlannerConfig cfg;
  cfg.ratio = Rat(2 * n, 2 * n + 1);
  cfg.max_layers = (2 * n) * (2 * n) * (2 * n);
  cfg.low_prob_cutoff = rat_pow2(-4 * n);
  return cfg;
}

std::optional<int> layer_index(const Rat& p, const PlannerConfig& config) {
  if (p <= 0 || p > 1) throw InvariantError("probability outside (0,1]");
  if (config.ratio <= 0 || config.ratio >= 1)
    throw ConfigError("layer ratio must lie in (0,1)");
  if (p < config.low_prob_cutoff) return std::nullopt;
  Rat power = config.ratio;  // ratio^j for the candidate j
  for (int j = 1; j <= config.max_layers; ++j) {
    if (p > power) return j;
    power *= config.ratio;
  }
  return std::nullopt;
}

PairPlanSet build_pair_plan(const std::vector<std::pair<SetMask, Rat>>& dist,
                            int n, const PlannerConfig& config) {
  PairPlanSet out;
  if (dist.empty()) return out;
  int ground = dist.front().first.ground();

  // Walk sets in descending probability so each layer's power of the ratio is
  // computed once instead of per set.
  std::vector<std::pair<SetMask, Rat>> sorted = dist;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  std::map<int, std::vector<SetMask>> layers;
  std::map<SetMask, Rat> prob;
  int j = 1;
  Rat power = config.ratio;
  for (const auto& [s, p] : sorted) {
    if (p <= 0 || p > 1) throw InvariantError("probability outside (0,1]");
    prob[s] = p;
    if (p < config.low_prob_cutoff) {
      out.unpaired.emplace_back(s, p);
      continue;
    }
    while (p <= power && j < config.max_layers + 1) {
      power *= config.ratio;
      ++j;
    }
    if (j > config.max_layers) {
      out.unpaired.emplace_back(s, p);
      continue;
    }
    layers[j].push_back(s);
  }

  for (auto& [layer, members] : layers) {
    SetFamily family{ground, std::move(members)};
    PairMatching matching = extract_even_union_pairs(family);
    for (auto& [s1, s2] : matching.pairs) {
      PairPlan plan;
      plan.s1 = s1;
      plan.s2 = s2;
      plan.layer = layer;
      plan.p1 = prob.at(s1);
      plan.p2 = prob.at(s2);
      plan.avoid = s1.united(s2);
      if (plan.avoid.count() % 2 != 0)
        throw InvariantError("decoy pair union has odd cardinality");
      const Rat& hi = std::max(plan.p1, plan.p2);
      const Rat& lo = std::min(plan.p1, plan.p2);
      if (hi * config.ratio > lo)
        throw InvariantError("decoy pair breaks the layer ratio bound");
      out.pairs.push_back(std::move(plan));
    }
    for (auto& s : matching.leftovers) out.unpaired.emplace_back(s, prob.at(s));
  }

  for (const auto& [s, p] : out.unpaired) out.unpaired_mass += p;
  return out;
}

std::optional<PairPlan> choose_decoy(const std::vector<PairPlan>& pairs,
                                     const SetMask& actual) {
  for (const auto& plan : pairs) {
    if (plan.s1 == actual || plan.s2 == actual) return plan;
  }
  return std::nullopt;
}

nlohmann::ordered_json pair_plan_json(const PairPlanSet& plan) {
  nlohmann::ordered_json out;
  out["pairs"] = nlohmann::ordered_json::array();
  for (const auto& p : plan.pairs) {
    out["pairs"].push_back({{"s1", p.s1.elements()},
                            {"s2", p.s2.elements()},
                            {"layer", p.layer},
                            {"p1", rat_str(p.p1)},
                            {"p2", rat_str(p.p2)}});
  }
  out["unpaired"] = nlohmann::ordered_json::array();
  for (const auto& [s, p] : plan.unpaired) {
    out["unpaired"].push_back({{"set", s.elements()}, {"p", rat_str(p)}});
  }
  out["unpaired_mass"] = rat_str(plan.unpaired_mass);
  return out;
}

}  // namespace mirrorgame
