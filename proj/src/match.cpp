#include "mirrorgame/match.hpp"

#include <algorithm>

#include "mirrorgame/errors.hpp"

namespace mirrorgame {

BobDecision MirrorBob::decide(const PublicView& view) const {
  const auto& history = view.state.history();
  if (history.empty() || history.back().player != Player::alice)
    throw InvariantError("mirror bob expects an alice move to answer");
  return BobDecision{{matched_partner(history.back().number)}};
}

BobDecision UniformBob::decide(const PublicView& view) const {
  BobDecision d;
  for (int e = 1; e <= view.state.universe(); ++e)
    if (!view.state.used().contains(e)) d.candidates.push_back(e);
  return d;
}

Outcome run_match(const AliceProgram& alice, const BobStrategy& bob, int n,
                  std::uint64_t seed, const MatchOptions& options) {
  if (alice.n != n) throw ConfigError("alice program built for a different n");
  GameState state(n);
  MemState x = alice.initial_state();
  RandTape tape(alice.block_bits);
  Rng alice_rng(derive_stream(seed, 0));
  Rng bob_rng(derive_stream(seed, 1));

  auto finish_loss = [&](const Loss& loss) {
    Outcome out;
    out.kind = loss.by == Player::alice ? OutcomeKind::alice_loses
                                        : OutcomeKind::bob_loses;
    out.losing_turn = loss.turn;
    out.forfeit = loss.forfeit;
    out.transcript = state.history();
    return out;
  };

  while (!state.finished()) {
    int turn = state.turn() + 1;
    int number;
    if (state.to_move() == Player::alice) {
      number = alice_step(alice, x, tape);
    } else {
      BobDecision d = bob.decide(PublicView{state, alice, x, tape});
      if (d.candidates.empty())
        throw InvariantError("bob strategy returned no candidates");
      size_t pick = d.candidates.size() == 1
                        ? 0
                        : bob_rng.next_below(d.candidates.size());
      number = d.candidates[pick];
    }
    if (number < 1 || number > 2 * n) {
      return finish_loss(Loss{mover_of_turn(turn), turn, true});
    }
    if (auto loss = state.apply_move(number)) return finish_loss(*loss);
    state.annotate_mem(x.to_hex());
    if (mover_of_turn(turn) == Player::bob && !state.finished()) {
      tape.append(draw_block(alice_rng, alice.block_bits));
      state.annotate_block(tape.block_hex(tape.blocks() - 1));
      x = alice_update(alice, number, x, turn + 1, tape);
      if (x.size() != alice.mem_bits)
        throw InvariantError("alice update broke the memory bound");
    }
    if (options.on_turn) options.on_turn(state);
  }

  Outcome out;
  out.kind = OutcomeKind::draw;
  out.transcript = state.history();
  return out;
}

RandTape tape_from_transcript(const AliceProgram& prog,
                              const std::vector<TurnRecord>& records) {
  RandTape tape(prog.block_bits);
  for (const auto& rec : records) {
    if (rec.player != Player::bob || rec.turn >= 2 * prog.n) continue;
    std::uint64_t value = 0;
    if (prog.block_bits > 0) {
      if (rec.rand_block_hex.empty())
        throw InvariantError("transcript missing a random block annotation");
      for (char ch : rec.rand_block_hex) {
        int digit;
        if (ch >= '0' && ch <= '9') digit = ch - '0';
        else if (ch >= 'a' && ch <= 'f') digit = ch - 'a' + 10;
        else throw InvariantError("malformed random block annotation");
        value = (value << 4) | static_cast<std::uint64_t>(digit);
      }
    }
    tape.append(value);
  }
  return tape;
}

}  // namespace mirrorgame
