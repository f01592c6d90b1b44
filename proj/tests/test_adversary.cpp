#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "mirrorgame/adversary.hpp"
#include "mirrorgame/errors.hpp"
#include "mirrorgame/experiments.hpp"
#include "mirrorgame/match.hpp"

using namespace mirrorgame;

namespace {

std::string transcript_text(const std::vector<TurnRecord>& transcript) {
  std::ostringstream os;
  write_transcript(os, transcript);
  return os.str();
}

}  // namespace

TEST_CASE("half config defaults and validation") {
  CHECK(AdversaryConfig::half_config(1).k == 1);
  CHECK(AdversaryConfig::half_config(4).k == 2);
  CHECK(AdversaryConfig::half_config(5).k == 2);
  CHECK(AdversaryConfig::half_config(6).k == 2);
  CHECK(AdversaryConfig::half_config(8).k == 3);
  CHECK(AdversaryConfig::half_config(9).k == 4);   // 3.6 rounds up
  CHECK(AdversaryConfig::half_config(10).k == 4);
  CHECK(AdversaryConfig::half_config(13).k == 5);  // 5.2 rounds down

  CHECK(AdversaryConfig::half_config(8, 2).k == 2);
  CHECK_THROWS_AS(AdversaryConfig::half_config(4, 5), ConfigError);
  CHECK_THROWS_AS(AdversaryConfig::half_config(0), ConfigError);
  CHECK(AdversaryConfig::half_config(8).breakpoints() == std::vector<int>{6});
  CHECK(AdversaryConfig::half_config(8, 2).breakpoints() == std::vector<int>{4});
}

TEST_CASE("amplified config validation") {
  CHECK_NOTHROW(AdversaryConfig::amplified_config(4, 2));
  CHECK_NOTHROW(AdversaryConfig::amplified_config(8, 2));
  CHECK_NOTHROW(AdversaryConfig::amplified_config(8, 4));
  CHECK_THROWS_AS(AdversaryConfig::amplified_config(6, 2), ConfigError);  // n/c odd
  CHECK_THROWS_AS(AdversaryConfig::amplified_config(8, 3), ConfigError);  // odd c
  CHECK_THROWS_AS(AdversaryConfig::amplified_config(8, 8), ConfigError);  // n/c odd
  CHECK_THROWS_AS(AdversaryConfig::amplified_config(8, 6), ConfigError);  // n%c != 0
  CHECK_THROWS_AS(AdversaryConfig::amplified_config(4, 0), ConfigError);

  CHECK(AdversaryConfig::amplified_config(8, 4).breakpoints() ==
        std::vector<int>{2, 4});
  CHECK(AdversaryConfig::amplified_config(8, 2).breakpoints() == std::vector<int>{4});
  CHECK(AdversaryConfig::amplified_config(4, 2).breakpoints() == std::vector<int>{2});
}

TEST_CASE("default beta is the smallest thousandth above alpha") {
  Rat beta = default_amplified_beta(2);
  CHECK(beta == Rat(459, 500));  // 918/1000
  CHECK(beta_above_alpha(beta, 2));
  CHECK(!beta_above_alpha(Rat(917, 1000), 2));
  CHECK(AdversaryConfig::amplified_config(4, 2).beta == beta);

  // A beta at or below alpha is rejected outright.
  auto cfg = AdversaryConfig::amplified_config(4, 2);
  cfg.beta = Rat(1, 2);
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.beta = Rat(1);
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("signature pins the enumeration parameters") {
  CHECK(AdversaryConfig::half_config(8, 2).signature() ==
        "half;n=8;k=2;ratio=16/17;layers=4096;cutoff=1/4294967296");
  CHECK(AdversaryConfig::amplified_config(4, 2).signature() ==
        "amplified;n=4;c=2;ratio=8/9;layers=512;cutoff=1/65536");
}

TEST_CASE("strategy ids") {
  CHECK(AdversaryBob(AdversaryConfig::half_config(4)).id() == "half:k=2");
  CHECK(AdversaryBob(AdversaryConfig::amplified_config(8, 4)).id() == "amplified:c=4");
}

TEST_CASE("diagnostics flag out of range memory sizes") {
  auto half = AdversaryConfig::half_config(4);
  CHECK(half.diagnostics(0).empty());
  CHECK(half.diagnostics(2).size() == 1);  // 5m > n

  auto amp = AdversaryConfig::amplified_config(4, 2);
  CHECK(amp.diagnostics(0).empty());      // beta^(2n) < 1 alone
  CHECK(amp.diagnostics(2).size() == 1);  // 2^m beta^(2n) >= 1
}

TEST_CASE("interactive or mismatched alices are rejected") {
  AdversaryBob bob(AdversaryConfig::half_config(2));
  std::istringstream in;
  std::ostringstream out;
  auto human = make_human(2, in, out);
  GameState state(2);
  state.apply_move(1);
  MemState x(0);
  RandTape tape(0);
  CHECK_THROWS_AS(bob.decide(PublicView{state, human, x, tape}), ConfigError);

  auto wrong = make_constant(3);
  GameState state3(3);
  state3.apply_move(1);
  RandTape tape3(0);
  CHECK_THROWS_AS(bob.decide(PublicView{state3, wrong, x, tape3}), ConfigError);

  auto right = make_constant(2);
  GameState fresh(2);
  CHECK_THROWS_AS(bob.decide(PublicView{fresh, right, x, tape}), InvariantError);
}

TEST_CASE("phase one offers every unused number") {
  AdversaryBob bob(AdversaryConfig::half_config(8, 3));
  auto prog = make_full_memory(8);
  GameState state(8);
  state.apply_move(1);
  MemState x = prog.initial_state();
  RandTape tape(0);
  auto d = bob.decide(PublicView{state, prog, x, tape});
  CHECK(d.candidates.size() == 15);
  for (int e = 2; e <= 16; ++e) CHECK(d.candidates[e - 2] == e);
}

TEST_CASE("the two mode configurations that coincide play identical games") {
  // A single breakpoint at turn 4 with the same planner constants: the half
  // strategy at k=2 and the amplified strategy at c=2 for n=8 make the same
  // decisions move for move.
  AdversaryBob half_bob(AdversaryConfig::half_config(8, 2));
  AdversaryBob amp_bob(AdversaryConfig::amplified_config(8, 2));

  for (const auto& prog : {make_matched_response(8), make_block_alice(8, 2)}) {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
      auto a = run_match(prog, half_bob, 8, seed);
      auto b = run_match(prog, amp_bob, 8, seed);
      CHECK(a.kind == b.kind);
      CHECK(transcript_text(a.transcript) == transcript_text(b.transcript));
    }
  }

  auto ex_half = exact_outcome_distribution(make_matched_response(8), half_bob, 8);
  auto ex_amp = exact_outcome_distribution(make_matched_response(8), amp_bob, 8);
  CHECK(ex_half.alice_loss == ex_amp.alice_loss);
  CHECK(ex_half.draw == ex_amp.draw);
  CHECK(ex_half.leaves_alice_loss == ex_amp.leaves_alice_loss);
}

TEST_CASE("after a breakpoint bob avoids live decoy unions") {
  // Replayed bookkeeping, independent of decide(): after each breakpoint, a
  // pair union is live until its first touch, and bob only ever moves inside
  // a live union when every unused number lies in one (the fallback).
  int n = 6;
  AdversaryBob bob(AdversaryConfig::half_config(n, 2));
  auto prog = make_block_alice(n, 2, 2);
  int games_with_decoy = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto out = run_match(prog, bob, n, seed);
    auto tape = tape_from_transcript(prog, out.transcript);
    auto reviews = bob.epoch_review(prog, tape, out.transcript);
    if (reviews.empty() || !reviews[0].decoy) continue;
    ++games_with_decoy;
    const auto& review = reviews[0];
    CHECK((review.actual == review.decoy->s1 || review.actual == review.decoy->s2));

    SetMask used(2 * n);
    for (const auto& rec : out.transcript) {
      if (rec.turn <= review.breakpoint_turn) {
        used.insert(rec.number);
        continue;
      }
      bool live = true;
      for (const auto& prior : out.transcript) {
        if (prior.turn <= review.breakpoint_turn || prior.turn >= rec.turn) continue;
        if (review.decoy->avoid.contains(prior.number)) live = false;
      }
      if (rec.player == Player::bob && live &&
          review.decoy->avoid.contains(rec.number)) {
        // Fallback only: every unused number sat inside the union.
        for (int e = 1; e <= 2 * n; ++e)
          if (!used.contains(e)) CHECK(review.decoy->avoid.contains(e));
      }
      used.insert(rec.number);
    }
  }
  CHECK(games_with_decoy > 50);
}

TEST_CASE("amplified epochs exclude earlier decoy unions from the pool") {
  // Two breakpoints need c >= 4, and pairable epoch sets need two bob turns
  // per epoch, so the smallest exercising board is n=16.
  int n = 16;
  AdversaryBob bob(AdversaryConfig::amplified_config(n, 4));
  auto prog = make_block_alice(n, 2, 4);
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto out = run_match(prog, bob, n, seed);
    if (out.transcript.size() < 8) continue;
    auto tape = tape_from_transcript(prog, out.transcript);
    auto reviews = bob.epoch_review(prog, tape, out.transcript);
    if (reviews.empty() || !reviews[0].decoy) continue;
    // Turns 6 and 8 are bob's epoch-2 phase moves: never inside the epoch-1
    // union, live or not.
    const SetMask& u1 = reviews[0].decoy->avoid;
    CHECK(!u1.contains(out.transcript[5].number));
    CHECK(!u1.contains(out.transcript[7].number));
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("single bob turn epochs cannot hide behind a decoy") {
  // With one bob move per epoch every epoch set shares alice's move, so all
  // unions are odd and no pair is ever available. The strategy then reduces
  // to uniform play followed by smallest-unused.
  int n = 8;
  AdversaryBob bob(AdversaryConfig::amplified_config(n, 4));
  auto prog = make_matched_response(n);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto out = run_match(prog, bob, n, seed);
    auto tape = tape_from_transcript(prog, out.transcript);
    for (const auto& review : bob.epoch_review(prog, tape, out.transcript)) {
      CHECK(!review.decoy.has_value());
    }
  }
}

TEST_CASE("epoch reviews cover each completed breakpoint") {
  int n = 8;
  AdversaryBob bob(AdversaryConfig::amplified_config(n, 4));
  auto prog = make_matched_response(n);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto out = run_match(prog, bob, n, seed);
    auto tape = tape_from_transcript(prog, out.transcript);
    auto reviews = bob.epoch_review(prog, tape, out.transcript);
    int expected = 0;
    for (int b : bob.config().breakpoints())
      if (static_cast<int>(out.transcript.size()) >= b + 1) ++expected;
    CHECK(static_cast<int>(reviews.size()) == expected);
    for (size_t t = 0; t < reviews.size(); ++t) {
      CHECK(reviews[t].index == static_cast<int>(t) + 1);
      CHECK(reviews[t].breakpoint_turn == bob.config().breakpoints()[t]);
      // The epoch's actual set is what was played between the breakpoints.
      CHECK(reviews[t].actual.count() ==
            reviews[t].breakpoint_turn - (t == 0 ? 0 : reviews[t - 1].breakpoint_turn));
    }
  }
}

TEST_CASE("plan cache collapses tape independent replans") {
  auto cache = std::make_shared<PlanCache>();
  int n = 6;
  AdversaryBob bob(AdversaryConfig::half_config(n, 2), cache);
  auto prog = make_matched_response(n);  // no random blocks
  for (std::uint64_t seed = 1; seed <= 50; ++seed) run_match(prog, bob, n, seed);
  CHECK(cache->size() == 1);

  std::size_t before = cache->size();
  for (std::uint64_t seed = 1; seed <= 50; ++seed) run_match(prog, bob, n, seed);
  CHECK(cache->size() == before);

  // Distinct tapes enumerate distinct phases.
  auto cache2 = std::make_shared<PlanCache>();
  AdversaryBob bob2(AdversaryConfig::half_config(n, 2), cache2);
  auto wide = make_block_alice(n, 2, 2);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) run_match(wide, bob2, n, seed);
  CHECK(cache2->size() >= 2);
  std::size_t snap = cache2->size();
  for (std::uint64_t seed = 1; seed <= 30; ++seed) run_match(wide, bob2, n, seed);
  CHECK(cache2->size() == snap);
}

TEST_CASE("shared and private caches give identical play") {
  int n = 6;
  auto prog = make_block_alice(n, 3, 2);
  AdversaryBob shared_bob(AdversaryConfig::half_config(n), std::make_shared<PlanCache>());
  AdversaryBob private_bob(AdversaryConfig::half_config(n));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto a = run_match(prog, shared_bob, n, seed);
    auto b = run_match(prog, private_bob, n, seed);
    CHECK(transcript_text(a.transcript) == transcript_text(b.transcript));
  }
}

TEST_CASE("debug sink reports conserved plan mass") {
  std::vector<std::string> dumps;
  AdversaryBob bob(AdversaryConfig::half_config(4, 2), nullptr,
                   [&dumps](const std::string& s) { dumps.push_back(s); });
  auto prog = make_matched_response(4);
  // The plan is only built in games that reach the turn after the breakpoint.
  for (std::uint64_t seed = 1; seed <= 20 && dumps.empty(); ++seed)
    run_match(prog, bob, 4, seed);
  REQUIRE(!dumps.empty());
  for (const auto& text : dumps) {
    auto j = nlohmann::json::parse(text);
    CHECK(j["epoch"] == 1);
    CHECK(j["start_turn"] == 0);
    Rat surviving = rat_parse(j["surviving_mass"].get<std::string>());
    Rat immediate = rat_parse(j["immediate_win_mass"].get<std::string>());
    CHECK(surviving + immediate == 1);
    CHECK(!j["bucket_plans"].empty());
    CHECK(j["nodes"].get<std::uint64_t>() > 0);
  }
}

TEST_CASE("enumeration budget violations surface as budget errors") {
  auto cfg = AdversaryConfig::half_config(4, 1);
  cfg.enumeration_budget = 5;
  AdversaryBob bob(cfg);
  auto prog = make_matched_response(4);
  CHECK_THROWS_AS(run_match(prog, bob, 4, 1), BudgetError);
}

TEST_CASE("a perfect rememberer always draws against the adversary") {
  for (int n : {4, 6}) {
    AdversaryBob bob(AdversaryConfig::half_config(n));
    auto prog = make_full_memory(n);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      auto out = run_match(prog, bob, n, seed);
      CHECK(out.kind == OutcomeKind::draw);
    }
  }
  AdversaryBob amp(AdversaryConfig::amplified_config(4, 2));
  auto prog = make_full_memory(4);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    CHECK(run_match(prog, amp, 4, seed).kind == OutcomeKind::draw);
  }
}

TEST_CASE("memoryless alices route through the single belief bucket") {
  int n = 4;
  AdversaryBob bob(AdversaryConfig::half_config(n));
  for (const auto& prog : {make_fresh_random(n), make_constant(n)}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      CHECK_NOTHROW(run_match(prog, bob, n, seed));
    }
  }
}
