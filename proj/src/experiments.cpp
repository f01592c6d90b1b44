#include "mirrorgame/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

#include "mirrorgame/adversary.hpp"
#include "mirrorgame/errors.hpp"

namespace mirrorgame {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return Interval{0.0, 1.0};
  double n = static_cast<double>(trials);
  double p = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return Interval{std::max(0.0, center - half), std::min(1.0, center + half)};
}

double TrialStats::rate(std::uint64_t count) const {
  return trials == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(trials);
}

Interval TrialStats::wilson(std::uint64_t count, double z) const {
  return wilson_interval(count, trials, z);
}

TrialStats run_trials(const AliceProgram& alice, const BobStrategy& bob, int n,
                      std::uint64_t trials, std::uint64_t master_seed,
                      int threads) {
  TrialStats stats;
  stats.trials = trials;
  if (trials == 0) return stats;

  int workers = std::max(1, threads);
  if (static_cast<std::uint64_t>(workers) > trials)
    workers = static_cast<int>(trials);

  std::vector<TrialStats> partial(workers);
  std::vector<std::exception_ptr> failures(workers);

  auto work = [&](int w) {
    try {
      for (std::uint64_t i = w; i < trials; i += workers) {
        Outcome out = run_match(alice, bob, n, derive_stream(master_seed, i));
        switch (out.kind) {
          case OutcomeKind::alice_loses: ++partial[w].alice_loss; break;
          case OutcomeKind::bob_loses: ++partial[w].bob_loss; break;
          case OutcomeKind::draw: ++partial[w].draw; break;
        }
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& failure : failures)
    if (failure) std::rethrow_exception(failure);

  for (const auto& p : partial) {
    stats.alice_loss += p.alice_loss;
    stats.bob_loss += p.bob_loss;
    stats.draw += p.draw;
  }
  if (stats.alice_loss + stats.bob_loss + stats.draw != trials)
    throw InvariantError("trial outcomes do not sum to the trial count");
  return stats;
}

namespace {

struct OracleContext {
  const AliceProgram& prog;
  const BobStrategy& bob;
  int n;
  std::uint64_t budget;
  OracleResult result;

  void tick() {
    if (++result.nodes > budget)
      throw BudgetError("oracle enumeration exceeded the node budget");
  }

  void leaf(OutcomeKind kind, const Rat& weight) {
    switch (kind) {
      case OutcomeKind::alice_loses:
        result.alice_loss += weight;
        ++result.leaves_alice_loss;
        break;
      case OutcomeKind::bob_loses:
        result.bob_loss += weight;
        ++result.leaves_bob_loss;
        break;
      case OutcomeKind::draw:
        result.draw += weight;
        ++result.leaves_draw;
        break;
    }
  }

  // Mirrors run_match move for move: Alice steps are deterministic given the
  // branch, Bob turns branch over his candidate support, and every block draw
  // branches over all 2^l values at weight 2^-l each.
  void recurse(GameState state, MemState x, RandTape tape, Rat weight) {
    while (true) {
      tick();
      if (state.finished()) {
        leaf(OutcomeKind::draw, weight);
        return;
      }
      int turn = state.turn() + 1;
      if (state.to_move() == Player::alice) {
        int number = alice_step(prog, x, tape);
        if (number < 1 || number > 2 * n) {
          leaf(OutcomeKind::alice_loses, weight);
          return;
        }
        if (auto loss = state.apply_move(number)) {
          leaf(loss->by == Player::alice ? OutcomeKind::alice_loses
                                         : OutcomeKind::bob_loses,
               weight);
          return;
        }
        state.annotate_mem(x.to_hex());
        continue;
      }

      BobDecision d = bob.decide(PublicView{state, prog, x, tape});
      if (d.candidates.empty())
        throw InvariantError("bob strategy returned no candidates");
      Rat share = weight / Rat(static_cast<long>(d.candidates.size()));
      for (int number : d.candidates) {
        tick();
        if (number < 1 || number > 2 * n) {
          leaf(OutcomeKind::bob_loses, share);
          continue;
        }
        GameState next = state;
        if (auto loss = next.apply_move(number)) {
          leaf(loss->by == Player::alice ? OutcomeKind::alice_loses
                                         : OutcomeKind::bob_loses,
               share);
          continue;
        }
        next.annotate_mem(x.to_hex());
        if (next.finished()) {
          leaf(OutcomeKind::draw, share);
          continue;
        }
        int l = prog.block_bits;
        if (l > 24)
          throw BudgetError("random blocks too wide for exhaustive enumeration");
        std::uint64_t values = 1ull << l;
        Rat block_share = share * rat_pow2(-l);
        for (std::uint64_t v = 0; v < values; ++v) {
          GameState branch = next;
          RandTape branch_tape = tape;
          branch_tape.append(v);
          branch.annotate_block(branch_tape.block_hex(branch_tape.blocks() - 1));
          MemState bx = alice_update(prog, number, x, turn + 1, branch_tape);
          if (bx.size() != prog.mem_bits)
            throw InvariantError("alice update broke the memory bound");
          recurse(std::move(branch), std::move(bx), std::move(branch_tape),
                  block_share);
        }
      }
      return;
    }
  }
};

}  // namespace

OracleResult exact_outcome_distribution(const AliceProgram& prog,
                                        const BobStrategy& bob, int n,
                                        std::uint64_t budget) {
  if (prog.n != n) throw ConfigError("alice program built for a different n");
  if (prog.interactive)
    throw ConfigError("the exact oracle cannot enumerate an interactive alice");
  OracleContext ctx{prog, bob, n, budget, {}};
  ctx.recurse(GameState(n), prog.initial_state(), RandTape(prog.block_bits),
              Rat(1));
  if (ctx.result.total() != 1)
    throw InvariantError("oracle branch weights do not sum to 1");
  return ctx.result;
}

DeterminizedAlice determinize(const AliceProgram& prog, std::uint64_t seed) {
  Rng rng(derive_stream(seed, 0));
  RandTape tape(prog.block_bits);
  for (int i = 0; i < prog.n - 1; ++i) tape.append(draw_block(rng, prog.block_bits));
  return DeterminizedAlice{prog, std::move(tape)};
}

namespace {

struct MinimaxContext {
  const AliceProgram& prog;
  const RandTape& full_tape;
  int n;
  std::uint64_t budget;
  std::uint64_t nodes = 0;

  void tick() {
    if (++nodes > budget)
      throw BudgetError("minimax search exceeded the node budget");
  }

  // Alice is deterministic here, so the search ranges over Bob's moves only;
  // value 1 means some Bob line forces an Alice repeat (or forfeit).
  int search(GameState& state, MemState x, RandTape tape, std::vector<int>& line) {
    while (true) {
      tick();
      if (state.finished()) return 0;
      int turn = state.turn() + 1;
      if (state.to_move() == Player::alice) {
        int number = alice_step(prog, x, tape);
        if (number < 1 || number > 2 * n) return 1;
        if (auto loss = state.apply_move(number))
          return loss->by == Player::alice ? 1 : 0;
        continue;
      }
      for (int e = 1; e <= 2 * n; ++e) {
        if (state.used().contains(e)) continue;
        GameState next = state;
        next.apply_move(e);
        MemState bx = x;
        RandTape next_tape = tape;
        if (!next.finished()) {
          next_tape.append(full_tape.block(next_tape.blocks()));
          bx = alice_update(prog, e, x, turn + 1, next_tape);
        }
        line.push_back(e);
        if (search(next, std::move(bx), std::move(next_tape), line) == 1) return 1;
        line.pop_back();
      }
      return 0;
    }
  }
};

}  // namespace

MinimaxResult minimax_best_response(const DeterminizedAlice& alice, int n,
                                    std::uint64_t budget) {
  const AliceProgram& prog = alice.prog;
  if (prog.n != n) throw ConfigError("alice program built for a different n");
  if (prog.interactive)
    throw ConfigError("minimax search needs a programmatic alice");
  if (alice.tape.blocks() < n - 1)
    throw ConfigError("determinized tape is shorter than the game needs");
  MinimaxContext ctx{prog, alice.tape, n, budget};
  MinimaxResult out;
  GameState state(n);
  out.value = ctx.search(state, prog.initial_state(), RandTape(prog.block_bits),
                         out.bob_line);
  if (out.value == 0) out.bob_line.clear();
  out.nodes = ctx.nodes;
  return out;
}

BoundsReport bounds(int n, int c, int k) {
  if (n < 1) throw ConfigError("n must be at least 1");
  if (c < 0 || k < 0) throw ConfigError("c and k must be nonnegative");
  BoundsReport report;
  report.n = n;
  report.c = c;
  report.k = k;
  report.half_loss = Rat(n, 2 * n + 1);
  report.corollary_cap = rat_pow(Rat(21, 25), 2ul * n);
  if (k > 0 && k <= n)
    report.set_prob_cap = rat_pow(Rat(k, n), static_cast<unsigned long>(k));
  if (c > 0) {
    if (c % 2 != 0) throw ConfigError("the amplified bound needs an even c");
    report.amp_survival =
        rat_pow(Rat(n + 1, 2 * n + 1), static_cast<unsigned long>(c / 2));
    if (n % (2 * c) == 0)
      report.epoch_cap =
          rat_pow(Rat(1, c), static_cast<unsigned long>(n / (2 * c)));
    report.beta = default_amplified_beta(c);
    report.delta_high = -std::log2(rat_double(report.beta));
    report.delta_low = 0.75 * report.delta_high;
    report.delta_min = 1.0 / (8.0 * c);
  }
  return report;
}

namespace {

std::string approx(const Rat& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", rat_double(r));
  return buf;
}

}  // namespace

std::string bounds_text(const BoundsReport& report) {
  std::ostringstream os;
  int n = report.n;
  os << "# analytic guidance at n=" << n
     << " (asymptotic; informational, not asserted at this scale)\n";
  os << "# half strategy alice-loss lower bound n/(2n+1) = "
     << rat_str(report.half_loss) << " ~ " << approx(report.half_loss) << "\n";
  if (report.k > 0 && report.set_prob_cap != 0) {
    os << "# half(k=" << report.k << ") per-set probability cap (2k/2n)^k = "
       << rat_str(report.set_prob_cap) << " ~ " << approx(report.set_prob_cap)
       << ", corollary cap 0.84^(2n) ~ " << approx(report.corollary_cap) << "\n";
  }
  if (report.c > 0) {
    os << "# amplified(c=" << report.c
       << ") alice-survival upper bound ((n+1)/(2n+1))^(c/2) = "
       << rat_str(report.amp_survival) << " ~ " << approx(report.amp_survival)
       << "\n";
    if (report.epoch_cap != 0) {
      os << "# amplified epoch set cap (1/c)^(n/2c) = "
         << rat_str(report.epoch_cap) << " ~ " << approx(report.epoch_cap)
         << "\n";
    }
    char window[128];
    std::snprintf(window, sizeof window,
                  "# memory rate delta window (%.4f, %.4f), needs delta > "
                  "1/(8c) = %.4f, beta = %s",
                  report.delta_low, report.delta_high, report.delta_min,
                  rat_str(report.beta).c_str());
    os << window << "\n";
  }
  return os.str();
}

SimulationRow make_row(const std::string& alice_id, const std::string& bob_id,
                       int n, std::uint64_t trials, std::uint64_t seed,
                       const TrialStats& stats,
                       const std::optional<Rat>& oracle_alice_loss) {
  SimulationRow row;
  row.experiment_id = experiment_fingerprint(n, alice_id, bob_id, trials, seed);
  row.n = n;
  row.alice = alice_id;
  row.bob = bob_id;
  row.trials = trials;
  row.seed = seed;
  row.alice_loss = stats.alice_loss;
  row.bob_loss = stats.bob_loss;
  row.draw = stats.draw;
  Interval ci = stats.wilson(stats.alice_loss);
  row.ci_low = ci.low;
  row.ci_high = ci.high;
  row.oracle_alice_loss = oracle_alice_loss;
  return row;
}

std::string csv_header() {
  return "experiment_id,n,alice,bob,trials,seed,alice_loss,bob_loss,draw,"
         "ci_low,ci_high,oracle_alice_loss";
}

namespace {

// Strategy ids can carry commas (block:l=2,m=2), so those cells get quoted.
std::string csv_cell(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

std::string to_csv_row(const SimulationRow& row) {
  std::ostringstream os;
  char ci[64];
  std::snprintf(ci, sizeof ci, "%.6f,%.6f", row.ci_low, row.ci_high);
  os << row.experiment_id << ',' << row.n << ',' << csv_cell(row.alice) << ','
     << csv_cell(row.bob) << ',' << row.trials << ',' << row.seed << ','
     << row.alice_loss << ',' << row.bob_loss << ',' << row.draw << ',' << ci
     << ',';
  if (row.oracle_alice_loss) os << rat_str(*row.oracle_alice_loss);
  return os.str();
}

nlohmann::ordered_json to_json_row(const SimulationRow& row) {
  nlohmann::ordered_json j;
  j["experiment_id"] = row.experiment_id;
  j["n"] = row.n;
  j["alice"] = row.alice;
  j["bob"] = row.bob;
  j["trials"] = row.trials;
  j["seed"] = row.seed;
  j["alice_loss"] = row.alice_loss;
  j["bob_loss"] = row.bob_loss;
  j["draw"] = row.draw;
  j["ci_low"] = row.ci_low;
  j["ci_high"] = row.ci_high;
  if (row.oracle_alice_loss)
    j["oracle_alice_loss"] = rat_str(*row.oracle_alice_loss);
  else
    j["oracle_alice_loss"] = nullptr;
  return j;
}

std::string experiment_fingerprint(int n, const std::string& alice,
                                   const std::string& bob, std::uint64_t trials,
                                   std::uint64_t seed) {
  std::ostringstream os;
  os << "n=" << n << ";alice=" << alice << ";bob=" << bob
     << ";trials=" << trials << ";seed=" << seed;
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : os.str()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mirrorgame
