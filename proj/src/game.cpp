#include "mirrorgame/game.hpp"

#include <istream>
#include <ostream>

#include "json.hpp"
#include "mirrorgame/errors.hpp"

namespace mirrorgame {

const char* to_string(Player p) { return p == Player::alice ? "alice" : "bob"; }

const char* to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::alice_loses: return "AliceLoses";
    case OutcomeKind::bob_loses: return "BobLoses";
    case OutcomeKind::draw: return "Draw";
  }
  return "?";
}

Player mover_of_turn(int turn) {
  return turn % 2 == 1 ? Player::alice : Player::bob;
}

GameState::GameState(int n) : n_(n), used_(n >= 1 ? 2 * n : 0) {
  if (n < 1) throw ConfigError("n must be at least 1");
}

std::optional<Loss> GameState::apply_move(int number) {
  if (finished()) throw InvariantError("move applied after game end");
  if (number < 1 || number > universe())
    throw InvariantError("number outside the universe");
  Player mover = to_move();
  if (used_.contains(number)) return Loss{mover, turn_ + 1, false};
  used_.insert(number);
  ++turn_;
  history_.push_back(TurnRecord{turn_, mover, number, "", ""});
  return std::nullopt;
}

void GameState::annotate_mem(const std::string& mem_hex) {
  if (history_.empty()) throw InvariantError("no turn to annotate");
  history_.back().alice_mem_hex = mem_hex;
}

void GameState::annotate_block(const std::string& block_hex) {
  if (history_.empty()) throw InvariantError("no turn to annotate");
  history_.back().rand_block_hex = block_hex;
}

void write_transcript(std::ostream& os, const std::vector<TurnRecord>& transcript) {
  for (const auto& rec : transcript) {
    nlohmann::ordered_json line = {
        {"turn", rec.turn},
        {"player", to_string(rec.player)},
        {"number", rec.number},
        {"alice_mem_hex", rec.alice_mem_hex},
        {"rand_block_hex", rec.rand_block_hex},
    };
    os << line.dump() << '\n';
  }
}

std::vector<TurnRecord> read_transcript(std::istream& is) {
  std::vector<TurnRecord> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    TurnRecord rec;
    rec.turn = j.at("turn").get<int>();
    std::string player = j.at("player").get<std::string>();
    if (player != "alice" && player != "bob")
      throw ConfigError("transcript player must be alice or bob");
    rec.player = player == "alice" ? Player::alice : Player::bob;
    rec.number = j.at("number").get<int>();
    rec.alice_mem_hex = j.at("alice_mem_hex").get<std::string>();
    rec.rand_block_hex = j.at("rand_block_hex").get<std::string>();
    out.push_back(rec);
  }
  return out;
}

}  // namespace mirrorgame
