#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mirrorgame/adversary.hpp"
#include "mirrorgame/alice.hpp"
#include "mirrorgame/match.hpp"

namespace mirrorgame {

// Strategy micro-syntax: "name" or "name:key=value,key=value". Keys and
// values carry no whitespace; anything malformed is a ConfigError.
struct StrategySpec {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
};

StrategySpec parse_spec(const std::string& text);

// Catalog names: full_memory, matched_response, block (m=, l=),
// fresh_random (l=), constant. human is interactive and built by the REPL.
AliceProgram make_alice(const std::string& spec, int n);

// Catalog names: mirror, uniform (alias random), half (k=),
// amplified (c=, beta=). The budget caps each belief enumeration.
std::shared_ptr<BobStrategy> make_bob(
    const std::string& spec, int n, std::uint64_t enumeration_budget,
    std::shared_ptr<PlanCache> cache = nullptr,
    std::function<void(const std::string&)> debug_sink = nullptr);

std::vector<std::string> alice_names();
std::vector<std::string> bob_names();

}  // namespace mirrorgame
