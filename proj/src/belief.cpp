#include "mirrorgame/belief.hpp"

#include "mirrorgame/errors.hpp"

namespace mirrorgame {

Rat BeliefTable::surviving_mass() const {
  Rat total = 0;
  for (const auto& [x, sets] : buckets)
    for (const auto& [s, w] : sets) total += w;
  return total;
}

Rat BeliefTable::total_mass() const { return surviving_mass() + immediate_win_mass; }

nlohmann::ordered_json BeliefTable::to_json() const {
  nlohmann::ordered_json out;
  out["buckets"] = nlohmann::ordered_json::array();
  for (const auto& [x, sets] : buckets) {
    nlohmann::ordered_json bucket;
    bucket["mem_hex"] = x.to_hex();
    bucket["sets"] = nlohmann::ordered_json::array();
    for (const auto& [s, w] : sets) {
      bucket["sets"].push_back({{"set", s.elements()}, {"weight", rat_str(w)}});
    }
    out["buckets"].push_back(bucket);
  }
  out["immediate_win_mass"] = rat_str(immediate_win_mass);
  out["nodes"] = nodes;
  return out;
}

namespace {

class Enumerator {
public:
  Enumerator(const AliceProgram& prog, const RandTape& tape,
             const PoolRule& pool_rule, std::uint64_t budget)
      : prog_(prog), tape_(tape), pool_rule_(pool_rule), budget_(budget) {}

  BeliefTable run(const PhaseStart& start, int bob_turns) {
    int n = prog_.n;
    int end = start.turn + 2 * bob_turns;
    if (start.turn % 2 != 0)
      throw InvariantError("phase must start at an even turn");
    if (end > 2 * n) throw InvariantError("phase extends past the game end");
    int required_blocks = end < 2 * n ? end / 2 : n - 1;
    if (tape_.blocks() < required_blocks)
      throw InvariantError("realized tape too short for the phase");
    if (start.mem.size() != prog_.mem_bits)
      throw InvariantError("start memory has the wrong width");
    dfs(start.used, start.mem, start.turn, SetMask(2 * n), bob_turns, Rat(1));
    return std::move(table_);
  }

private:
  void tick() {
    if (++table_.nodes > budget_)
      throw BudgetError("belief enumeration exceeded its node budget");
  }

  void dfs(const SetMask& used, const MemState& x, int turn, const SetMask& phase_set,
           int rounds_left, const Rat& weight) {
    if (rounds_left == 0) {
      table_.buckets[x][phase_set] += weight;
      return;
    }
    int n = prog_.n;
    int alice_turn = turn + 1;
    tick();
    int a = prog_.next_move(x, tape_.prefix((alice_turn - 1) / 2));
    if (a < 1 || a > 2 * n || used.contains(a)) {
      table_.immediate_win_mass += weight;
      return;
    }
    SetMask used_a = used;
    used_a.insert(a);
    SetMask phase_a = phase_set;
    phase_a.insert(a);

    auto pool = pool_rule_(used_a);
    if (pool.empty())
      throw InvariantError("empty bob pool during belief enumeration");
    Rat branch_weight = weight / Rat(static_cast<int>(pool.size()));
    int end_turn = turn + 2;
    for (int b : pool) {
      tick();
      if (used_a.contains(b))
        throw InvariantError("pool rule offered a used number");
      SetMask used_b = used_a;
      used_b.insert(b);
      SetMask phase_b = phase_a;
      phase_b.insert(b);
      MemState next_x = x;
      if (end_turn < 2 * n) {
        next_x = prog_.update(b, x, end_turn + 1, tape_.prefix(end_turn / 2));
        if (next_x.size() != prog_.mem_bits)
          throw InvariantError("alice update broke the memory bound");
      }
      dfs(used_b, next_x, end_turn, phase_b, rounds_left - 1, branch_weight);
    }
  }

  const AliceProgram& prog_;
  const RandTape& tape_;
  const PoolRule& pool_rule_;
  std::uint64_t budget_;
  BeliefTable table_;
};

}  // namespace

BeliefTable enumerate_phase(const AliceProgram& prog, const RandTape& tape,
                            const PoolRule& pool_rule, const PhaseStart& start,
                            int bob_turns, std::uint64_t budget) {
  return Enumerator(prog, tape, pool_rule, budget).run(start, bob_turns);
}

std::vector<std::pair<SetMask, Rat>> conditional_dist(const BeliefTable& table,
                                                      const MemState& x) {
  auto it = table.buckets.find(x);
  if (it == table.buckets.end())
    throw InvariantError("memory state absent from the belief table");
  Rat total = 0;
  for (const auto& [s, w] : it->second) total += w;
  std::vector<std::pair<SetMask, Rat>> out;
  out.reserve(it->second.size());
  for (const auto& [s, w] : it->second) out.emplace_back(s, w / total);
  return out;
}

std::map<SetMask, Rat> set_masses(const BeliefTable& table) {
  std::map<SetMask, Rat> out;
  for (const auto& [x, sets] : table.buckets)
    for (const auto& [s, w] : sets) out[s] += w;
  return out;
}

UsefulReport classify_useful(const BeliefTable& table, const Rat& threshold) {
  if (threshold <= 0 || threshold >= 1)
    throw ConfigError("useful threshold must lie in (0,1)");
  UsefulReport report;
  Rat surviving = table.surviving_mass();
  if (surviving == 0) return report;
  int m = table.buckets.begin()->first.size();
  report.silly_bound = Rat(1) - (rat_pow2(m) - 1) * threshold;
  for (const auto& [x, sets] : table.buckets) {
    Rat mass = 0;
    for (const auto& [s, w] : sets) mass += w;
    Rat normalized = mass / surviving;
    if (normalized > threshold) {
      report.useful.push_back(x);
      report.mass_useful += normalized;
    }
  }
  return report;
}

}  // namespace mirrorgame
