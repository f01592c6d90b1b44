#include "mirrorgame/alice.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "mirrorgame/errors.hpp"

namespace mirrorgame {

namespace {

int ceil_log2(int v) {
  int bits = 0;
  while ((1 << bits) < v) ++bits;
  return bits;
}

void check_n(int n) {
  if (n < 1) throw ConfigError("n must be at least 1");
}

}  // namespace

RandTape::RandTape(int block_bits) : block_bits_(block_bits) {
  if (block_bits < 0 || block_bits > 64)
    throw ConfigError("block bits must lie in [0, 64]");
}

std::uint64_t RandTape::block(int i) const {
  if (i < 0 || i >= blocks())
    throw InvariantError("tape block index out of range");
  return blocks_[i];
}

std::uint64_t RandTape::last_or_zero() const {
  return blocks_.empty() ? 0 : blocks_.back();
}

void RandTape::append(std::uint64_t block) {
  if (block_bits_ < 64 && (block >> block_bits_) != 0)
    throw InvariantError("block wider than the tape's block size");
  blocks_.push_back(block);
}

RandTape RandTape::prefix(int count) const {
  if (count < 0 || count > blocks())
    throw InvariantError("tape prefix length out of range");
  RandTape out(block_bits_);
  out.blocks_.assign(blocks_.begin(), blocks_.begin() + count);
  return out;
}

std::string RandTape::block_hex(int i) const {
  static const char* digits = "0123456789abcdef";
  std::uint64_t v = block(i);
  int width = (block_bits_ + 3) / 4;
  std::string out(width, '0');
  for (int d = width - 1; d >= 0; --d) {
    out[d] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

std::uint64_t draw_block(Rng& rng, int block_bits) {
  return rng.next_bits(block_bits);
}

int alice_step(const AliceProgram& prog, const MemState& x, const RandTape& tape) {
  return prog.next_move(x, tape);
}

MemState alice_update(const AliceProgram& prog, int bob_move, const MemState& x,
                      int turn, const RandTape& tape) {
  return prog.update(bob_move, x, turn, tape);
}

int matched_partner(int number) {
  return number % 2 == 1 ? number + 1 : number - 1;
}

AliceProgram make_full_memory(int n) {
  check_n(n);
  AliceProgram prog;
  prog.id = "full_memory";
  prog.n = n;
  prog.mem_bits = 2 * n;
  prog.block_bits = 0;
  auto smallest_absent = [n](const MemState& x) {
    for (int e = 1; e <= 2 * n; ++e)
      if (!x.test(e - 1)) return e;
    return 1;  // board full; unreachable in a live game
  };
  prog.next_move = [smallest_absent](const MemState& x, const RandTape&) {
    return smallest_absent(x);
  };
  prog.update = [smallest_absent](int bob_move, const MemState& x, int,
                                  const RandTape&) {
    MemState next = x;
    // Her own last move is recomputable from the state it was played from.
    next.set(smallest_absent(x) - 1);
    next.set(bob_move - 1);
    return next;
  };
  return prog;
}

AliceProgram make_matched_response(int n) {
  check_n(n);
  AliceProgram prog;
  prog.id = "matched_response";
  prog.n = n;
  prog.mem_bits = ceil_log2(2 * n);
  prog.block_bits = 0;
  prog.next_move = [n](const MemState& x, const RandTape&) {
    return static_cast<int>(x.to_uint() % (2 * n)) + 1;
  };
  int m = prog.mem_bits;
  prog.update = [m](int bob_move, const MemState&, int, const RandTape&) {
    return MemState::from_uint(m, matched_partner(bob_move) - 1);
  };
  return prog;
}

AliceProgram make_block_alice(int n, int m, int l) {
  check_n(n);
  if (m < 1 || m > n)
    throw ConfigError("block count m must lie in [1, n]");
  // Block j covers (floor((j-1)*2n/m), floor(j*2n/m)].
  std::vector<std::pair<int, int>> spans;
  for (int j = 1; j <= m; ++j)
    spans.emplace_back(((j - 1) * 2 * n) / m + 1, (j * 2 * n) / m);
  int largest = 0;
  for (auto [lo, hi] : spans) largest = std::max(largest, hi - lo + 1);
  if (l == 0) l = ceil_log2(largest);
  if (l < 0 || l > 8) throw ConfigError("block alice l must lie in [1, 8]");
  int quota = (n + m - 1) / m;  // own moves per block

  AliceProgram prog;
  std::ostringstream id;
  id << "block:l=" << l << ",m=" << m;
  prog.id = id.str();
  prog.n = n;
  prog.mem_bits = m;
  prog.block_bits = l;
  prog.next_move = [spans](const MemState& x, const RandTape& tape) {
    int j = 0;
    while (j < x.size() && x.test(j)) ++j;
    auto [lo, hi] = spans[j];
    int size = hi - lo + 1;
    return lo + static_cast<int>(tape.last_or_zero() % size);
  };
  prog.update = [m, quota](int, const MemState&, int turn, const RandTape&) {
    int own_moves = turn / 2;  // turns 1,3,...,turn-2 already played
    MemState next(m);
    int exhausted = std::min(own_moves / quota, m - 1);
    for (int j = 0; j < exhausted; ++j) next.set(j);
    return next;
  };
  return prog;
}

AliceProgram make_fresh_random(int n, int l) {
  check_n(n);
  if (l == 0) l = ceil_log2(2 * n);
  if (l < 0 || l > 8) throw ConfigError("fresh_random l must lie in [1, 8]");
  AliceProgram prog;
  std::ostringstream id;
  id << "fresh_random:l=" << l;
  prog.id = id.str();
  prog.n = n;
  prog.mem_bits = 0;
  prog.block_bits = l;
  prog.next_move = [n](const MemState&, const RandTape& tape) {
    return static_cast<int>(tape.last_or_zero() % (2 * n)) + 1;
  };
  prog.update = [](int, const MemState&, int, const RandTape&) {
    return MemState(0);
  };
  return prog;
}

AliceProgram make_constant(int n) {
  check_n(n);
  AliceProgram prog;
  prog.id = "constant";
  prog.n = n;
  prog.mem_bits = 0;
  prog.block_bits = 0;
  prog.next_move = [](const MemState&, const RandTape&) { return 1; };
  prog.update = [](int, const MemState&, int, const RandTape&) {
    return MemState(0);
  };
  return prog;
}

AliceProgram make_human(int n, std::istream& in, std::ostream& out) {
  check_n(n);
  AliceProgram prog;
  prog.id = "human";
  prog.n = n;
  prog.mem_bits = 0;
  prog.block_bits = 0;
  prog.interactive = true;
  prog.next_move = [n, &in, &out](const MemState&, const RandTape&) {
    for (;;) {
      out << "your number [1.." << 2 * n << "]: " << std::flush;
      std::string line;
      if (!std::getline(in, line)) throw SessionAbort("input closed");
      std::istringstream parse(line);
      int number;
      if (parse >> number && number >= 1 && number <= 2 * n) return number;
      out << "enter an integer in [1.." << 2 * n << "]\n";
    }
  };
  prog.update = [](int, const MemState&, int, const RandTape&) {
    return MemState(0);
  };
  return prog;
}

std::vector<AliceProgram> reference_alices(int n) {
  return {make_full_memory(n), make_matched_response(n),
          make_block_alice(n, std::min(2, n)), make_fresh_random(n),
          make_constant(n)};
}

}  // namespace mirrorgame
