#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mirrorgame/bitvec.hpp"
#include "mirrorgame/rng.hpp"

namespace mirrorgame {

// Public randomness: block i is drawn at the end of turn 2i and is visible to
// both players from then on. Blocks are immutable once appended.
class RandTape {
public:
  explicit RandTape(int block_bits);

  int block_bits() const { return block_bits_; }
  int blocks() const { return static_cast<int>(blocks_.size()); }
  std::uint64_t block(int i) const;
  std::uint64_t last_or_zero() const;
  void append(std::uint64_t block);
  RandTape prefix(int count) const;
  std::string block_hex(int i) const;  // fixed width ceil(block_bits/4)

private:
  int block_bits_;
  std::vector<std::uint64_t> blocks_;
};

std::uint64_t draw_block(Rng& rng, int block_bits);

// Open-book machine: m memory bits, l-bit public random blocks, and two pure
// functions. nxt picks the next number from (state, tape); upd folds Bob's
// move into the state at the start of each odd turn. All board knowledge
// must flow through upd into the m bits.
struct AliceProgram {
  std::string id;
  int n = 0;
  int mem_bits = 0;    // m
  int block_bits = 0;  // l
  bool interactive = false;
  std::function<int(const MemState&, const RandTape&)> next_move;
  std::function<MemState(int bob_move, const MemState&, int turn, const RandTape&)> update;

  MemState initial_state() const { return MemState(mem_bits); }
};

int alice_step(const AliceProgram& prog, const MemState& x, const RandTape& tape);
MemState alice_update(const AliceProgram& prog, int bob_move, const MemState& x,
                      int turn, const RandTape& tape);

int matched_partner(int number);  // matching (1,2)(3,4)...

AliceProgram make_full_memory(int n);
AliceProgram make_matched_response(int n);
// m blocks of {1..2n} exhausted in order, quota ceil(n/m) own moves each;
// the in-block pick is indexed by the freshest random block. l = 0 picks the
// default of just enough bits to index one block.
AliceProgram make_block_alice(int n, int m, int l = 0);
AliceProgram make_fresh_random(int n, int l = 0);
AliceProgram make_constant(int n);
AliceProgram make_human(int n, std::istream& in, std::ostream& out);

// The programmatic catalog (human excluded: it needs streams).
std::vector<AliceProgram> reference_alices(int n);

}  // namespace mirrorgame
