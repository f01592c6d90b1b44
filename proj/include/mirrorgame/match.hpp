#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mirrorgame/alice.hpp"
#include "mirrorgame/game.hpp"

namespace mirrorgame {

// Everything Bob may look at: board, Alice's program, her current memory
// (recomputable from public data, provided directly for convenience), and
// the realized random tape.
struct PublicView {
  const GameState& state;
  const AliceProgram& prog;
  const MemState& alice_mem;
  const RandTape& tape;
};

// A strategy returns the support of its (uniform) move distribution. A
// single candidate is a deterministic move; the match loop and the exact
// oracle both consume the same decision, so sampled and enumerated play
// cannot diverge.
struct BobDecision {
  std::vector<int> candidates;
};

class BobStrategy {
public:
  virtual ~BobStrategy() = default;
  virtual std::string id() const = 0;
  virtual BobDecision decide(const PublicView& view) const = 0;
};

// Answers Alice's last number with its partner under the matching (1,2)(3,4)...
class MirrorBob : public BobStrategy {
public:
  std::string id() const override { return "mirror"; }
  BobDecision decide(const PublicView& view) const override;
};

class UniformBob : public BobStrategy {
public:
  std::string id() const override { return "uniform"; }
  BobDecision decide(const PublicView& view) const override;
};

struct MatchOptions {
  // Called after every completed turn (board printing in the REPL).
  std::function<void(const GameState&)> on_turn;
};

// Drives turns 1..2n. Streams: Alice's tape from sub-stream 0 of the seed,
// Bob's sampling from sub-stream 1. Out-of-range numbers forfeit.
Outcome run_match(const AliceProgram& alice, const BobStrategy& bob, int n,
                  std::uint64_t seed, const MatchOptions& options = {});

// Rebuilds the realized tape from a finished game's block annotations. One
// block per recorded Bob turn below 2n, zero-width blocks included.
RandTape tape_from_transcript(const AliceProgram& prog,
                              const std::vector<TurnRecord>& records);

}  // namespace mirrorgame
