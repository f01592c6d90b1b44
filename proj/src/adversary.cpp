#include "mirrorgame/adversary.hpp"

#include <algorithm>
#include <sstream>

#include "mirrorgame/errors.hpp"

namespace mirrorgame {

namespace {

int default_half_k(int n) { return std::max(1, (4 * n + 5) / 10); }

}  // namespace

bool beta_above_alpha(const Rat& beta, int c) {
  return rat_pow(beta, 4ul * c) * c > 1;
}

Rat default_amplified_beta(int c) {
  for (int q = 1; q < 1000; ++q) {
    Rat beta(q, 1000);
    beta.canonicalize();
    if (beta_above_alpha(beta, c)) return beta;
  }
  return Rat(999, 1000);
}

AdversaryConfig AdversaryConfig::half_config(int n, int k) {
  if (n < 1) throw ConfigError("n must be at least 1");
  AdversaryConfig cfg;
  cfg.mode = Mode::half;
  cfg.n = n;
  cfg.k = k > 0 ? k : default_half_k(n);
  PlannerConfig planner = default_planner_config(n);
  cfg.layer_ratio = planner.ratio;
  cfg.max_layers = planner.max_layers;
  cfg.low_prob_cutoff = planner.low_prob_cutoff;
  cfg.useful_threshold = rat_pow(Rat(9, 10), 2ul * n);
  cfg.validate();
  return cfg;
}

AdversaryConfig AdversaryConfig::amplified_config(int n, int c) {
  if (n < 1) throw ConfigError("n must be at least 1");
  AdversaryConfig cfg;
  cfg.mode = Mode::amplified;
  cfg.n = n;
  cfg.c = c;
  PlannerConfig planner = default_planner_config(n);
  cfg.layer_ratio = planner.ratio;
  cfg.max_layers = planner.max_layers;
  cfg.low_prob_cutoff = planner.low_prob_cutoff;
  cfg.beta = default_amplified_beta(c);
  cfg.useful_threshold = rat_pow(cfg.beta, 2ul * n);
  cfg.validate();
  return cfg;
}

void AdversaryConfig::validate() const {
  if (n < 1) throw ConfigError("n must be at least 1");
  if (layer_ratio <= 0 || layer_ratio >= 1)
    throw ConfigError("layer ratio must lie in (0,1)");
  if (max_layers < 1) throw ConfigError("max_layers must be positive");
  if (low_prob_cutoff <= 0 || low_prob_cutoff >= 1)
    throw ConfigError("low probability cutoff must lie in (0,1)");
  if (useful_threshold <= 0 || useful_threshold >= 1)
    throw ConfigError("useful threshold must lie in (0,1)");
  if (enumeration_budget < 1)
    throw ConfigError("enumeration budget must be positive");
  if (mode == Mode::half) {
    if (k < 1 || k > n)
      throw ConfigError("half strategy needs 1 <= k <= n");
  } else {
    if (c < 2 || c % 2 != 0)
      throw ConfigError("amplified strategy needs an even c >= 2");
    if (n % c != 0 || (n / c) % 2 != 0)
      throw ConfigError("amplified strategy needs n/c to be a positive even integer");
    if (beta >= 1 || !beta_above_alpha(beta, c))
      throw ConfigError("beta must satisfy (1/c)^(1/4c) < beta < 1");
  }
}

std::vector<int> AdversaryConfig::breakpoints() const {
  if (mode == Mode::half) return {2 * k};
  std::vector<int> out;
  for (int t = 1; t <= c / 2; ++t) out.push_back(t * (n / c));
  return out;
}

PlannerConfig AdversaryConfig::planner() const {
  return PlannerConfig{layer_ratio, max_layers, low_prob_cutoff};
}

std::string AdversaryConfig::signature() const {
  std::ostringstream os;
  if (mode == Mode::half) {
    os << "half;n=" << n << ";k=" << k;
  } else {
    os << "amplified;n=" << n << ";c=" << c;
  }
  os << ";ratio=" << rat_str(layer_ratio) << ";layers=" << max_layers
     << ";cutoff=" << rat_str(low_prob_cutoff);
  return os.str();
}

std::vector<std::string> AdversaryConfig::diagnostics(int alice_mem_bits) const {
  std::vector<std::string> out;
  if (mode == Mode::half) {
    if (5 * alice_mem_bits > n) {
      std::ostringstream os;
      os << "alice memory m=" << alice_mem_bits
         << " exceeds n/5; the half-strategy loss bound assumes m <= 0.2n";
      out.push_back(os.str());
    }
  } else {
    // The survival bound needs 2^delta * beta < 1 for delta = m/2n, i.e.
    // 2^m * beta^(2n) < 1. Vacuous at desk scale, so advisory only.
    if (rat_pow2(alice_mem_bits) * rat_pow(beta, 2ul * n) >= 1) {
      std::ostringstream os;
      os << "2^delta*beta >= 1 for delta=" << alice_mem_bits << "/" << 2 * n
         << "; the amplified survival bound is vacuous at this scale";
      out.push_back(os.str());
    }
  }
  return out;
}

std::shared_ptr<const EpochPlanTable> PlanCache::get_or_compute(
    const std::string& key,
    const std::function<std::shared_ptr<const EpochPlanTable>()>& compute) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
  }
  auto built = compute();
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = entries_.emplace(key, built);
  return it->second;
}

std::size_t PlanCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

AdversaryBob::AdversaryBob(AdversaryConfig config, std::shared_ptr<PlanCache> cache,
                           std::function<void(const std::string&)> debug_sink)
    : config_(std::move(config)),
      cache_(cache ? std::move(cache) : std::make_shared<PlanCache>()),
      debug_sink_(std::move(debug_sink)) {
  config_.validate();
}

std::string AdversaryBob::id() const {
  std::ostringstream os;
  if (config_.mode == AdversaryConfig::Mode::half) {
    os << "half:k=" << config_.k;
  } else {
    os << "amplified:c=" << config_.c;
  }
  return os.str();
}

namespace {

SetMask numbers_through(int universe, const std::vector<TurnRecord>& records,
                        int last_turn) {
  SetMask out(universe);
  for (const auto& rec : records) {
    if (rec.turn > last_turn) break;
    out.insert(rec.number);
  }
  return out;
}

bool union_touched_after(const std::vector<TurnRecord>& records, int after_turn,
                         const SetMask& avoid) {
  for (const auto& rec : records) {
    if (rec.turn > after_turn && avoid.contains(rec.number)) return true;
  }
  return false;
}

}  // namespace

std::vector<EpochReview> AdversaryBob::plans_through(
    const AliceProgram& prog, const RandTape& tape,
    const std::vector<TurnRecord>& records, int before_turn) const {
  int n = config_.n;
  int universe = 2 * n;
  auto breakpoints = config_.breakpoints();
  std::vector<EpochReview> out;
  SetMask exclusion(universe);  // unions of the decoys chosen so far

  // records[t] is turn t+1, so an odd record records[even_turn] carries the
  // memory state after the block draw at the end of even_turn. That is both
  // the bucket key at a breakpoint and the start state of the next phase.
  for (std::size_t ti = 0; ti < breakpoints.size(); ++ti) {
    int b = breakpoints[ti];
    if (b > before_turn - 2) break;
    if (static_cast<int>(records.size()) < b + 1)
      throw InvariantError("transcript too short for a planned breakpoint");
    int prev = ti == 0 ? 0 : breakpoints[ti - 1];

    EpochReview review;
    review.index = static_cast<int>(ti) + 1;
    review.breakpoint_turn = b;
    review.mem = MemState::from_hex(prog.mem_bits, records[b].alice_mem_hex);
    review.actual = SetMask(universe);
    for (const auto& rec : records) {
      if (rec.turn > prev && rec.turn <= b) review.actual.insert(rec.number);
    }

    PhaseStart start;
    start.turn = prev;
    start.used = numbers_through(universe, records, prev);
    start.mem = MemState::from_hex(prog.mem_bits, records[prev].alice_mem_hex);

    int required_blocks = b < 2 * n ? b / 2 : n - 1;
    RandTape phase_tape = tape.prefix(required_blocks);

    std::ostringstream key;
    key << config_.signature() << "|prog=" << prog.id << ";m=" << prog.mem_bits
        << ";l=" << prog.block_bits << "|t=" << review.index
        << "|used=" << start.used.to_string() << "|mem=" << start.mem.to_hex()
        << "|excl=" << exclusion.to_string() << "|tape=";
    for (int bi = 0; bi < phase_tape.blocks(); ++bi) key << phase_tape.block_hex(bi) << ",";

    SetMask pool_exclusion = exclusion;
    int bob_turns = (b - prev) / 2;
    auto entry = cache_->get_or_compute(key.str(), [&]() {
      return build_plan_table(prog, phase_tape, start, pool_exclusion,
                              review.index, bob_turns);
    });

    auto bucket = entry->bucket_plans.find(review.mem);
    if (bucket == entry->bucket_plans.end())
      throw InvariantError("observed memory state missing from the belief table");
    review.decoy = choose_decoy(bucket->second.pairs, review.actual);
    if (review.decoy) exclusion = exclusion.united(review.decoy->avoid);
    out.push_back(std::move(review));
  }
  return out;
}

std::shared_ptr<const EpochPlanTable> AdversaryBob::build_plan_table(
    const AliceProgram& prog, const RandTape& tape, const PhaseStart& start,
    const SetMask& exclusion, int epoch_index, int bob_turns) const {
  int n = config_.n;
  int universe = 2 * n;
  PoolRule rule = [universe, &exclusion](const SetMask& used) {
    std::vector<int> pool;
    for (int e = 1; e <= universe; ++e)
      if (!used.contains(e) && !exclusion.contains(e)) pool.push_back(e);
    return pool;
  };
  BeliefTable table = enumerate_phase(prog, tape, rule, start, bob_turns,
                                      config_.enumeration_budget);

  // The per-set probability cap is provable for uniform pools of this size;
  // a violation means the enumeration itself is wrong.
  Rat cap = config_.mode == AdversaryConfig::Mode::half
                ? rat_pow(Rat(config_.k, n), static_cast<unsigned long>(config_.k))
                : rat_pow(Rat(1, config_.c), static_cast<unsigned long>(bob_turns));
  for (const auto& [s, w] : set_masses(table)) {
    if (w > cap)
      throw InvariantError("enumerated set weight exceeds the probability cap");
  }

  auto entry = std::make_shared<EpochPlanTable>();
  entry->immediate_win_mass = table.immediate_win_mass;
  entry->surviving_mass = table.surviving_mass();
  entry->useful = classify_useful(table, config_.useful_threshold);
  entry->nodes = table.nodes;
  for (const auto& [x, sets] : table.buckets) {
    entry->bucket_plans[x] =
        build_pair_plan(conditional_dist(table, x), n, config_.planner());
  }

  if (debug_sink_) {
    nlohmann::ordered_json dump;
    dump["epoch"] = epoch_index;
    dump["start_turn"] = start.turn;
    dump["start_used"] = start.used.elements();
    dump["excluded"] = exclusion.elements();
    dump["immediate_win_mass"] = rat_str(entry->immediate_win_mass);
    dump["surviving_mass"] = rat_str(entry->surviving_mass);
    dump["useful_mass"] = rat_str(entry->useful.mass_useful);
    dump["silly_bound"] = rat_str(entry->useful.silly_bound);
    dump["nodes"] = entry->nodes;
    dump["bucket_plans"] = nlohmann::ordered_json::object();
    for (const auto& [x, plan] : entry->bucket_plans)
      dump["bucket_plans"][x.to_hex().empty() ? "-" : x.to_hex()] = pair_plan_json(plan);
    debug_sink_(dump.dump());
  }
  return entry;
}

BobDecision AdversaryBob::decide(const PublicView& view) const {
  if (view.prog.interactive)
    throw ConfigError("the enumerating adversary cannot model an interactive alice");
  if (view.state.n() != config_.n || view.prog.n != config_.n)
    throw ConfigError("adversary configured for a different n");
  int i = view.state.turn() + 1;
  if (i % 2 != 0) throw InvariantError("bob asked to move on an odd turn");

  const auto& records = view.state.history();
  auto reviews = plans_through(view.prog, view.tape, records, i);
  int universe = 2 * config_.n;
  auto breakpoints = config_.breakpoints();

  if (i <= breakpoints.back()) {
    SetMask exclusion(universe);
    for (const auto& review : reviews)
      if (review.decoy) exclusion = exclusion.united(review.decoy->avoid);
    BobDecision d;
    for (int e = 1; e <= universe; ++e)
      if (!view.state.used().contains(e) && !exclusion.contains(e))
        d.candidates.push_back(e);
    if (d.candidates.empty())
      throw InvariantError("phase pool underflow in the adversary");
    return d;
  }

  SetMask avoid(universe);
  for (const auto& review : reviews) {
    if (!review.decoy) continue;
    if (!union_touched_after(records, review.breakpoint_turn, review.decoy->avoid))
      avoid = avoid.united(review.decoy->avoid);
  }
  for (int e = 1; e <= universe; ++e)
    if (!view.state.used().contains(e) && !avoid.contains(e))
      return BobDecision{{e}};
  for (int e = 1; e <= universe; ++e)
    if (!view.state.used().contains(e)) return BobDecision{{e}};
  throw InvariantError("bob asked to move with no numbers left");
}

std::vector<EpochReview> AdversaryBob::epoch_review(
    const AliceProgram& prog, const RandTape& tape,
    const std::vector<TurnRecord>& records) const {
  return plans_through(prog, tape, records, static_cast<int>(records.size()) + 1);
}

}  // namespace mirrorgame
