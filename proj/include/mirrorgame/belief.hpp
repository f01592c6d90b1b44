#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mirrorgame/alice.hpp"
#include "mirrorgame/rational.hpp"
#include "mirrorgame/setmask.hpp"

namespace mirrorgame {

// Joint distribution over (Alice memory state, set played during the phase)
// induced by Bob's uniform choices, with Alice's random blocks pinned to the
// realized tape. Weights are exact; branches where Alice repeats (or emits an
// out-of-range number) accumulate in immediate_win_mass instead.
struct BeliefTable {
  std::map<MemState, std::map<SetMask, Rat>> buckets;
  Rat immediate_win_mass = 0;
  std::uint64_t nodes = 0;

  Rat surviving_mass() const;
  Rat total_mass() const;  // surviving + immediate win; always exactly 1
  nlohmann::ordered_json to_json() const;
};

// Board state entering the enumerated phase. mem is Alice's true state there,
// which Bob reconstructs from public data.
struct PhaseStart {
  SetMask used;
  MemState mem;
  int turn = 0;  // completed turns; even
};

// Candidate numbers for one of Bob's counterfactual turns, given the branch's
// used set. Must return unused numbers, ascending.
using PoolRule = std::function<std::vector<int>(const SetMask& used)>;

BeliefTable enumerate_phase(const AliceProgram& prog, const RandTape& tape,
                            const PoolRule& pool_rule, const PhaseStart& start,
                            int bob_turns, std::uint64_t budget);

// Bucket weights renormalized to sum 1. Throws InvariantError on unknown x.
std::vector<std::pair<SetMask, Rat>> conditional_dist(const BeliefTable& table,
                                                      const MemState& x);

// Unconditioned per-set weights, aggregated across memory buckets.
std::map<SetMask, Rat> set_masses(const BeliefTable& table);

struct UsefulReport {
  std::vector<MemState> useful;
  Rat mass_useful = 0;  // total normalized mass of useful states
  Rat silly_bound = 0;  // 1 - (2^m - 1) * threshold, for comparison
};

// States whose survival-conditioned probability exceeds the threshold.
UsefulReport classify_useful(const BeliefTable& table, const Rat& threshold);

}  // namespace mirrorgame
