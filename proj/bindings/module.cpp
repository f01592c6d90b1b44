#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>

#include "mirrorgame/adversary.hpp"
#include "mirrorgame/errors.hpp"
#include "mirrorgame/experiments.hpp"
#include "mirrorgame/oddtown.hpp"
#include "mirrorgame/registry.hpp"

namespace py = pybind11;
namespace mg = mirrorgame;

namespace {

mg::SetFamily family_from_lists(const std::vector<std::vector<int>>& sets,
                                int ground) {
  int max_element = 1;
  for (const auto& elems : sets)
    for (int e : elems) {
      if (e < 1) throw mg::ConfigError("set elements must be positive");
      max_element = std::max(max_element, e);
    }
  mg::SetFamily family;
  family.ground = ground > 0 ? ground : max_element;
  for (const auto& elems : sets)
    family.members.push_back(mg::SetMask::from_elements(family.ground, elems));
  return family;
}

py::list mask_to_list(const mg::SetMask& mask) {
  py::list out;
  for (int e : mask.elements()) out.append(e);
  return out;
}

py::list transcript_to_list(const std::vector<mg::TurnRecord>& transcript) {
  py::list out;
  for (const auto& rec : transcript) {
    py::dict d;
    d["turn"] = rec.turn;
    d["player"] = mg::to_string(rec.player);
    d["number"] = rec.number;
    d["alice_mem_hex"] = rec.alice_mem_hex;
    d["rand_block_hex"] = rec.rand_block_hex;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "mirror game simulator: memory-bounded open-book players";

  py::register_exception<mg::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<mg::BudgetError>(m, "BudgetError", PyExc_RuntimeError);
  py::register_exception<mg::InvariantError>(m, "InvariantError",
                                             PyExc_RuntimeError);

  m.def(
      "simulate",
      [](int n, const std::string& alice, const std::string& bob,
         std::uint64_t trials, std::uint64_t seed, int threads,
         std::uint64_t budget, bool oracle) {
        mg::AliceProgram prog = mg::make_alice(alice, n);
        auto strat = mg::make_bob(bob, n, budget);
        mg::TrialStats stats =
            mg::run_trials(prog, *strat, n, trials, seed, threads);
        std::optional<mg::Rat> oracle_loss;
        if (oracle)
          oracle_loss =
              mg::exact_outcome_distribution(prog, *strat, n, budget).alice_loss;
        mg::SimulationRow row = mg::make_row(prog.id, strat->id(), n, trials,
                                             seed, stats, oracle_loss);
        py::dict d;
        d["experiment_id"] = row.experiment_id;
        d["n"] = row.n;
        d["alice"] = row.alice;
        d["bob"] = row.bob;
        d["trials"] = row.trials;
        d["seed"] = row.seed;
        d["alice_loss"] = row.alice_loss;
        d["bob_loss"] = row.bob_loss;
        d["draw"] = row.draw;
        d["ci_low"] = row.ci_low;
        d["ci_high"] = row.ci_high;
        if (row.oracle_alice_loss)
          d["oracle_alice_loss"] = mg::rat_str(*row.oracle_alice_loss);
        else
          d["oracle_alice_loss"] = py::none();
        return d;
      },
      py::arg("n"), py::arg("alice") = "block:m=2", py::arg("bob") = "half",
      py::arg("trials") = 1000, py::arg("seed") = 1, py::arg("threads") = 1,
      py::arg("budget") = 10'000'000, py::arg("oracle") = false,
      "Seeded Monte Carlo trials; returns one result row as a dict.");

  m.def(
      "run_match",
      [](int n, const std::string& alice, const std::string& bob,
         std::uint64_t seed, std::uint64_t budget) {
        mg::AliceProgram prog = mg::make_alice(alice, n);
        auto strat = mg::make_bob(bob, n, budget);
        mg::Outcome out = mg::run_match(prog, *strat, n, seed);
        py::dict d;
        d["outcome"] = mg::to_string(out.kind);
        if (out.losing_turn)
          d["losing_turn"] = *out.losing_turn;
        else
          d["losing_turn"] = py::none();
        d["forfeit"] = out.forfeit;
        d["transcript"] = transcript_to_list(out.transcript);
        return d;
      },
      py::arg("n"), py::arg("alice"), py::arg("bob"), py::arg("seed") = 1,
      py::arg("budget") = 10'000'000,
      "One full game; returns the outcome and the open-book transcript.");

  m.def(
      "exact_distribution",
      [](int n, const std::string& alice, const std::string& bob,
         std::uint64_t budget) {
        mg::AliceProgram prog = mg::make_alice(alice, n);
        auto strat = mg::make_bob(bob, n, budget);
        mg::OracleResult res =
            mg::exact_outcome_distribution(prog, *strat, n, budget);
        py::dict d;
        d["alice_loss"] = mg::rat_str(res.alice_loss);
        d["bob_loss"] = mg::rat_str(res.bob_loss);
        d["draw"] = mg::rat_str(res.draw);
        d["alice_loss_float"] = mg::rat_double(res.alice_loss);
        d["bob_loss_float"] = mg::rat_double(res.bob_loss);
        d["draw_float"] = mg::rat_double(res.draw);
        d["leaves_alice_loss"] = res.leaves_alice_loss;
        d["leaves_bob_loss"] = res.leaves_bob_loss;
        d["leaves_draw"] = res.leaves_draw;
        d["nodes"] = res.nodes;
        return d;
      },
      py::arg("n"), py::arg("alice"), py::arg("bob"),
      py::arg("budget") = 10'000'000,
      "Exact outcome distribution over all Bob branches and block values.");

  m.def(
      "minimax_value",
      [](int n, const std::string& alice, std::uint64_t seed,
         std::uint64_t budget) {
        mg::AliceProgram prog = mg::make_alice(alice, n);
        mg::DeterminizedAlice fixed = mg::determinize(prog, seed);
        mg::MinimaxResult res = mg::minimax_best_response(fixed, n, budget);
        py::dict d;
        d["value"] = res.value;
        d["bob_line"] = res.bob_line;
        d["nodes"] = res.nodes;
        return d;
      },
      py::arg("n"), py::arg("alice"), py::arg("seed") = 1,
      py::arg("budget") = 10'000'000,
      "Best response against an alice whose tape is fixed up front.");

  m.def(
      "bounds",
      [](int n, int c, int k) {
        mg::BoundsReport report = mg::bounds(n, c, k);
        py::dict d;
        d["n"] = report.n;
        d["half_loss"] = mg::rat_str(report.half_loss);
        d["half_loss_float"] = mg::rat_double(report.half_loss);
        d["corollary_cap"] = mg::rat_str(report.corollary_cap);
        if (report.k > 0) d["set_prob_cap"] = mg::rat_str(report.set_prob_cap);
        if (report.c > 0) {
          d["amp_survival"] = mg::rat_str(report.amp_survival);
          d["amp_survival_float"] = mg::rat_double(report.amp_survival);
          if (report.epoch_cap != 0)
            d["epoch_cap"] = mg::rat_str(report.epoch_cap);
          d["beta"] = mg::rat_str(report.beta);
          d["delta_low"] = report.delta_low;
          d["delta_high"] = report.delta_high;
          d["delta_min"] = report.delta_min;
        }
        d["text"] = mg::bounds_text(report);
        return d;
      },
      py::arg("n"), py::arg("c") = 0, py::arg("k") = 0,
      "Analytic guidance values (informational at this scale).");

  m.def(
      "is_oddtown",
      [](const std::vector<std::vector<int>>& sets, int ground) {
        return mg::is_oddtown(family_from_lists(sets, ground));
      },
      py::arg("sets"), py::arg("ground") = 0,
      "Even-cardinality members with pairwise odd intersections?");

  m.def(
      "gf2_rank",
      [](const std::vector<std::vector<int>>& sets, int ground) {
        return mg::gf2_rank(family_from_lists(sets, ground).members);
      },
      py::arg("sets"), py::arg("ground") = 0,
      "GF(2) rank of the indicator vectors.");

  m.def(
      "even_union_pairs",
      [](const std::vector<std::vector<int>>& sets, int ground) {
        mg::PairMatching matching =
            mg::extract_even_union_pairs(family_from_lists(sets, ground));
        py::dict d;
        py::list pairs;
        for (const auto& [s1, s2] : matching.pairs) {
          py::list pair;
          pair.append(mask_to_list(s1));
          pair.append(mask_to_list(s2));
          pairs.append(pair);
        }
        py::list leftovers;
        for (const auto& s : matching.leftovers)
          leftovers.append(mask_to_list(s));
        d["pairs"] = pairs;
        d["leftovers"] = leftovers;
        return d;
      },
      py::arg("sets"), py::arg("ground") = 0,
      "Greedy pairing of even-cardinality sets into even-union pairs.");

  m.def("alice_names", &mg::alice_names, "Alice catalog identifiers.");
  m.def("bob_names", &mg::bob_names, "Bob catalog identifiers.");
}
