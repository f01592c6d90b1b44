#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mirrorgame/setmask.hpp"

namespace mirrorgame {

enum class Player { alice, bob };
const char* to_string(Player p);

Player mover_of_turn(int turn);  // odd turns are Alice's

// One line of the open-book log. alice_mem_hex is Alice's memory when the
// turn was played; rand_block_hex is the block drawn at the end of the turn
// (even turns before the last only), else empty.
struct TurnRecord {
  int turn = 0;
  Player player = Player::alice;
  int number = 0;
  std::string alice_mem_hex;
  std::string rand_block_hex;
};

struct Loss {
  Player by = Player::alice;
  int turn = 0;
  bool forfeit = false;  // emitted an out-of-range number
};

enum class OutcomeKind { alice_loses, bob_loses, draw };
const char* to_string(OutcomeKind k);

struct Outcome {
  OutcomeKind kind = OutcomeKind::draw;
  std::optional<int> losing_turn;
  bool forfeit = false;
  std::vector<TurnRecord> transcript;
};

class GameState {
public:
  explicit GameState(int n);  // universe {1..2n}; throws ConfigError if n < 1

  int n() const { return n_; }
  int universe() const { return 2 * n_; }
  int turn() const { return turn_; }  // completed turns
  bool finished() const { return turn_ == 2 * n_; }
  Player to_move() const { return mover_of_turn(turn_ + 1); }
  const SetMask& used() const { return used_; }
  const std::vector<TurnRecord>& history() const { return history_; }

  // Repeated number: the mover of turn+1 loses and the state is unchanged.
  // Out-of-range number or a move after the game ends throws InvariantError;
  // forfeit handling lives in the match loop.
  std::optional<Loss> apply_move(int number);

  // Open-book annotations for the record just appended / just completed turn.
  void annotate_mem(const std::string& mem_hex);
  void annotate_block(const std::string& block_hex);

private:
  int n_;
  SetMask used_;
  int turn_ = 0;
  std::vector<TurnRecord> history_;
};

void write_transcript(std::ostream& os, const std::vector<TurnRecord>& transcript);
std::vector<TurnRecord> read_transcript(std::istream& is);

}  // namespace mirrorgame
