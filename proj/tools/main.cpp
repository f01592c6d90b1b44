#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mirrorgame/adversary.hpp"
#include "mirrorgame/errors.hpp"
#include "mirrorgame/experiments.hpp"
#include "mirrorgame/oddtown.hpp"
#include "mirrorgame/registry.hpp"

namespace mg = mirrorgame;

namespace {

struct SimulateArgs {
  int n = 4;
  std::string alice = "block:m=2";
  std::string bob = "half";
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  bool oracle = false;
  std::string format = "csv";
  std::string out;
  std::string config_path;
  std::uint64_t budget = 10'000'000;
  bool verbose = false;
  int threads = 1;
};

struct PlayArgs {
  int n = 4;
  std::string bob = "mirror";
  std::uint64_t seed = 1;
  std::string out;
};

struct OddtownArgs {
  std::string family_path;
  int ground = 0;
};

std::uint64_t config_uint(const nlohmann::json& value, const std::string& key) {
  if (!value.is_number_integer() && !value.is_number_unsigned())
    throw mg::ConfigError("config key '" + key + "' needs an integer");
  if (value.is_number_integer() && value.get<long long>() < 0)
    throw mg::ConfigError("config key '" + key + "' must be nonnegative");
  return value.get<std::uint64_t>();
}

int config_int(const nlohmann::json& value, const std::string& key) {
  if (!value.is_number_integer())
    throw mg::ConfigError("config key '" + key + "' needs an integer");
  return value.get<int>();
}

std::string config_str(const nlohmann::json& value, const std::string& key) {
  if (!value.is_string())
    throw mg::ConfigError("config key '" + key + "' needs a string");
  return value.get<std::string>();
}

bool config_bool(const nlohmann::json& value, const std::string& key) {
  if (!value.is_boolean())
    throw mg::ConfigError("config key '" + key + "' needs a boolean");
  return value.get<bool>();
}

// Flags beat file values: a file value lands only where the flag was absent.
void merge_config_file(SimulateArgs& args,
                       const std::map<std::string, CLI::Option*>& opts) {
  if (args.config_path.empty()) return;
  std::ifstream in(args.config_path);
  if (!in)
    throw mg::ConfigError("cannot open config file " + args.config_path);
  nlohmann::json doc = nlohmann::json::parse(in);
  if (!doc.is_object())
    throw mg::ConfigError("config file must hold a JSON object");
  auto flag_absent = [&](const char* name) {
    return opts.at(name)->count() == 0;
  };
  for (const auto& [key, value] : doc.items()) {
    if (key == "n") {
      if (flag_absent("n")) args.n = config_int(value, key);
    } else if (key == "alice") {
      if (flag_absent("alice")) args.alice = config_str(value, key);
    } else if (key == "bob") {
      if (flag_absent("bob")) args.bob = config_str(value, key);
    } else if (key == "trials") {
      if (flag_absent("trials")) args.trials = config_uint(value, key);
    } else if (key == "seed") {
      if (flag_absent("seed")) args.seed = config_uint(value, key);
    } else if (key == "oracle") {
      if (flag_absent("oracle")) args.oracle = config_bool(value, key);
    } else if (key == "format") {
      if (flag_absent("format")) args.format = config_str(value, key);
    } else if (key == "out") {
      if (flag_absent("out")) args.out = config_str(value, key);
    } else if (key == "budget") {
      if (flag_absent("budget")) args.budget = config_uint(value, key);
    } else if (key == "verbose") {
      if (flag_absent("verbose")) args.verbose = config_bool(value, key);
    } else if (key == "threads") {
      if (flag_absent("threads")) args.threads = config_int(value, key);
    } else {
      throw mg::ConfigError("unknown config key '" + key + "'");
    }
  }
}

int cmd_simulate(SimulateArgs& args,
                 const std::map<std::string, CLI::Option*>& opts) {
  merge_config_file(args, opts);
  if (args.format != "csv" && args.format != "json")
    throw mg::ConfigError("format must be csv or json");
  if (args.threads < 1) throw mg::ConfigError("threads must be at least 1");
  if (args.budget < 1) throw mg::ConfigError("budget must be at least 1");

  mg::AliceProgram alice = mg::make_alice(args.alice, args.n);
  auto cache = std::make_shared<mg::PlanCache>();
  std::function<void(const std::string&)> sink;
  if (args.verbose)
    sink = [](const std::string& dump) { std::cerr << "plan " << dump << "\n"; };
  auto bob = mg::make_bob(args.bob, args.n, args.budget, cache, sink);

  int bound_c = 0;
  int bound_k = 0;
  if (const auto* adv = dynamic_cast<const mg::AdversaryBob*>(bob.get())) {
    if (adv->config().mode == mg::AdversaryConfig::Mode::amplified)
      bound_c = adv->config().c;
    else
      bound_k = adv->config().k;
    for (const auto& note : adv->config().diagnostics(alice.mem_bits))
      std::cerr << "# note: " << note << "\n";
  }
  std::cerr << mg::bounds_text(mg::bounds(args.n, bound_c, bound_k));

  mg::TrialStats stats = mg::run_trials(alice, *bob, args.n, args.trials,
                                        args.seed, args.threads);
  std::optional<mg::Rat> oracle_loss;
  if (args.oracle) {
    mg::OracleResult oracle =
        mg::exact_outcome_distribution(alice, *bob, args.n, args.budget);
    oracle_loss = oracle.alice_loss;
    if (args.verbose) {
      std::cerr << "# oracle: alice_loss=" << mg::rat_str(oracle.alice_loss)
                << " bob_loss=" << mg::rat_str(oracle.bob_loss)
                << " draw=" << mg::rat_str(oracle.draw)
                << " leaves=" << oracle.leaves_alice_loss + oracle.leaves_bob_loss +
                                     oracle.leaves_draw
                << " nodes=" << oracle.nodes << "\n";
    }
  }

  mg::SimulationRow row = mg::make_row(alice.id, bob->id(), args.n, args.trials,
                                       args.seed, stats, oracle_loss);
  std::string rendered;
  if (args.format == "csv") {
    rendered = mg::csv_header() + "\n" + mg::to_csv_row(row) + "\n";
  } else {
    rendered = mg::to_json_row(row).dump() + "\n";
  }
  if (args.out.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw mg::ConfigError("cannot write " + args.out);
    out << rendered;
    std::cerr << "# wrote " << args.out << "\n";
  }
  return 0;
}

int cmd_play(const PlayArgs& args) {
  if (args.bob != "mirror" && args.bob != "uniform" && args.bob != "random")
    throw mg::ConfigError("play supports --bob mirror or uniform");
  auto bob = mg::make_bob(args.bob, args.n, 1);
  mg::AliceProgram human = mg::make_human(args.n, std::cin, std::cout);

  std::cout << "mirror game on {1.." << 2 * args.n
            << "}: repeating any number loses, a full board is a draw.\n"
            << "you are alice and move first; bob plays '" << bob->id()
            << "'.\n";
  mg::MatchOptions options;
  options.on_turn = [](const mg::GameState& state) {
    const mg::TurnRecord& rec = state.history().back();
    std::cout << "turn " << rec.turn << ": " << mg::to_string(rec.player)
              << " played " << rec.number << " | used "
              << state.used().to_string() << "\n";
  };
  mg::Outcome outcome = mg::run_match(human, *bob, args.n, args.seed, options);

  switch (outcome.kind) {
    case mg::OutcomeKind::alice_loses:
      std::cout << "alice loses at turn " << *outcome.losing_turn
                << (outcome.forfeit ? " (forfeit)" : " (repeated a number)")
                << "\n";
      break;
    case mg::OutcomeKind::bob_loses:
      std::cout << "bob loses at turn " << *outcome.losing_turn
                << (outcome.forfeit ? " (forfeit)" : " (repeated a number)")
                << "\n";
      break;
    case mg::OutcomeKind::draw:
      std::cout << "draw: every number was played exactly once\n";
      break;
  }
  if (!args.out.empty()) {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw mg::ConfigError("cannot write " + args.out);
    mg::write_transcript(out, outcome.transcript);
    std::cout << "transcript saved to " << args.out << "\n";
  }
  return 0;
}

int cmd_oddtown(const OddtownArgs& args) {
  std::ifstream in(args.family_path);
  if (!in)
    throw mg::ConfigError("cannot open family file " + args.family_path);
  nlohmann::json doc = nlohmann::json::parse(in);
  if (!doc.is_array())
    throw mg::ConfigError("family file must hold a JSON list of integer lists");

  std::vector<std::vector<int>> raw;
  int max_element = 0;
  for (const auto& entry : doc) {
    if (!entry.is_array())
      throw mg::ConfigError("family file must hold a JSON list of integer lists");
    std::vector<int> elems;
    for (const auto& e : entry) {
      if (!e.is_number_integer())
        throw mg::ConfigError("set elements must be integers");
      int v = e.get<int>();
      if (v < 1) throw mg::ConfigError("set elements must be positive");
      max_element = std::max(max_element, v);
      elems.push_back(v);
    }
    raw.push_back(std::move(elems));
  }

  int ground = std::max(args.ground, std::max(max_element, 1));
  mg::SetFamily family;
  family.ground = ground;
  for (const auto& elems : raw)
    family.members.push_back(mg::SetMask::from_elements(ground, elems));

  std::cout << "family: " << family.members.size() << " sets over {1.."
            << ground << "}\n";
  bool oddtown = mg::is_oddtown(family);
  std::cout << "oddtown (even members, pairwise odd intersections): "
            << (oddtown ? "yes" : "no") << "\n";
  if (oddtown) {
    mg::BoundCheck check = mg::oddtown_bound_check(family);
    std::cout << "size bound |family| <= ground: "
              << (check.within_bound ? "holds" : "VIOLATED") << " ("
              << family.members.size() << " <= " << ground << ")\n"
              << "gf2 rank of indicator vectors: " << check.rank
              << (check.independent ? " (independent)" : " (dependent)")
              << "\n";
  }

  for (const auto& member : family.members) {
    if (member.count() % 2 != 0) {
      std::cout << "even-union extraction refused: member "
                << member.to_string() << " has odd cardinality\n";
      return 0;
    }
  }
  mg::PairMatching matching = mg::extract_even_union_pairs(family);
  std::cout << "even-union pairs: " << matching.pairs.size() << "\n";
  for (std::size_t i = 0; i < matching.pairs.size(); ++i) {
    const auto& [s1, s2] = matching.pairs[i];
    std::cout << "  pair " << i + 1 << ": " << s1.to_string() << " + "
              << s2.to_string() << " -> union " << s1.united(s2).to_string()
              << "\n";
  }
  std::cout << "leftovers: " << matching.leftovers.size() << "\n";
  for (const auto& s : matching.leftovers)
    std::cout << "  " << s.to_string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mirror game simulator: memory-bounded open-book players"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  std::map<std::string, CLI::Option*> sim_opts;
  CLI::App* sim = app.add_subcommand(
      "simulate", "run seeded trials (and optionally the exact oracle)");
  sim_opts["n"] = sim->add_option("--n", sim_args.n, "half-universe size; numbers are 1..2n");
  sim_opts["alice"] = sim->add_option("--alice", sim_args.alice,
                                      "alice spec, e.g. block:m=2 (default)");
  sim_opts["bob"] = sim->add_option("--bob", sim_args.bob,
                                    "bob spec, e.g. half, amplified:c=2, mirror");
  sim_opts["trials"] = sim->add_option("--trials", sim_args.trials, "number of games");
  sim_opts["seed"] = sim->add_option("--seed", sim_args.seed, "master seed");
  sim_opts["oracle"] = sim->add_flag("--oracle", sim_args.oracle,
                                     "also compute the exact outcome distribution");
  sim_opts["format"] = sim->add_option("--format", sim_args.format, "csv or json");
  sim_opts["out"] = sim->add_option("--out", sim_args.out, "write results here instead of stdout");
  sim_opts["config"] = sim->add_option("--config", sim_args.config_path,
                                       "JSON config file; flags override file values");
  sim_opts["budget"] = sim->add_option("--budget", sim_args.budget,
                                       "node cap for enumerations and the oracle");
  sim_opts["verbose"] = sim->add_flag("-v,--verbose", sim_args.verbose,
                                      "print plan tables at each breakpoint to stderr");
  sim_opts["threads"] = sim->add_option("--threads", sim_args.threads,
                                        "worker threads for trials");

  PlayArgs play_args;
  CLI::App* play = app.add_subcommand("play", "interactive game: you are alice");
  play->add_option("--n", play_args.n, "half-universe size");
  play->add_option("--bob", play_args.bob, "mirror or uniform");
  play->add_option("--seed", play_args.seed, "seed for uniform bob");
  play->add_option("--out", play_args.out, "save the transcript as JSON lines");

  OddtownArgs odd_args;
  CLI::App* odd = app.add_subcommand(
      "oddtown-check", "inspect a set family and extract even-union pairs");
  odd->add_option("--family", odd_args.family_path,
                  "JSON file: list of integer lists")
      ->required();
  odd->add_option("--ground", odd_args.ground,
                  "ground size (default: largest element)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_args, sim_opts);
    if (play->parsed()) return cmd_play(play_args);
    if (odd->parsed()) return cmd_oddtown(odd_args);
  } catch (const mg::SessionAbort& e) {
    std::cout << "\n" << e.what() << "\n";
    return 0;
  } catch (const mg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const mg::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const mg::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
