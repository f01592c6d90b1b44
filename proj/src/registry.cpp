#include "mirrorgame/registry.hpp"

#include <algorithm>
#include <cctype>

#include "mirrorgame/errors.hpp"

namespace mirrorgame {

namespace {

bool valid_token(const std::string& text) {
  if (text.empty()) return false;
  return std::all_of(text.begin(), text.end(), [](unsigned char ch) {
    return std::isalnum(ch) || ch == '_' || ch == '-' || ch == '/' || ch == '.';
  });
}

int param_int(const StrategySpec& spec, const std::string& key, int fallback) {
  for (const auto& [k, v] : spec.params) {
    if (k != key) continue;
    try {
      std::size_t pos = 0;
      int value = std::stoi(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return value;
    } catch (const std::exception&) {
      throw ConfigError("parameter " + key + " needs an integer, got '" + v + "'");
    }
  }
  return fallback;
}

std::string param_str(const StrategySpec& spec, const std::string& key) {
  for (const auto& [k, v] : spec.params)
    if (k == key) return v;
  return {};
}

void reject_unknown(const StrategySpec& spec,
                    const std::vector<std::string>& known) {
  for (const auto& [k, v] : spec.params) {
    if (std::find(known.begin(), known.end(), k) == known.end())
      throw ConfigError("unknown parameter '" + k + "' for strategy '" +
                        spec.name + "'");
  }
}

}  // namespace

StrategySpec parse_spec(const std::string& text) {
  StrategySpec spec;
  auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (!valid_token(spec.name))
    throw ConfigError("malformed strategy spec '" + text + "'");
  if (colon == std::string::npos) return spec;

  std::string rest = text.substr(colon + 1);
  if (rest.empty())
    throw ConfigError("malformed strategy spec '" + text + "'");
  std::size_t start = 0;
  while (start <= rest.size()) {
    auto comma = rest.find(',', start);
    std::string item = rest.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= item.size())
      throw ConfigError("malformed parameter '" + item + "' in '" + text + "'");
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    if (!valid_token(key) || !valid_token(value))
      throw ConfigError("malformed parameter '" + item + "' in '" + text + "'");
    spec.params.emplace_back(std::move(key), std::move(value));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return spec;
}

AliceProgram make_alice(const std::string& text, int n) {
  StrategySpec spec = parse_spec(text);
  if (spec.name == "full_memory") {
    reject_unknown(spec, {});
    return make_full_memory(n);
  }
  if (spec.name == "matched_response") {
    reject_unknown(spec, {});
    return make_matched_response(n);
  }
  if (spec.name == "block") {
    reject_unknown(spec, {"m", "l"});
    return make_block_alice(n, param_int(spec, "m", 2), param_int(spec, "l", 0));
  }
  if (spec.name == "fresh_random") {
    reject_unknown(spec, {"l"});
    return make_fresh_random(n, param_int(spec, "l", 0));
  }
  if (spec.name == "constant") {
    reject_unknown(spec, {});
    return make_constant(n);
  }
  if (spec.name == "human")
    throw ConfigError("human alice is interactive; use the play subcommand");
  throw ConfigError("unknown alice '" + spec.name + "'");
}

std::shared_ptr<BobStrategy> make_bob(
    const std::string& text, int n, std::uint64_t enumeration_budget,
    std::shared_ptr<PlanCache> cache,
    std::function<void(const std::string&)> debug_sink) {
  StrategySpec spec = parse_spec(text);
  if (spec.name == "mirror") {
    reject_unknown(spec, {});
    return std::make_shared<MirrorBob>();
  }
  if (spec.name == "uniform" || spec.name == "random") {
    reject_unknown(spec, {});
    return std::make_shared<UniformBob>();
  }
  if (spec.name == "half") {
    reject_unknown(spec, {"k"});
    AdversaryConfig cfg = AdversaryConfig::half_config(n, param_int(spec, "k", 0));
    cfg.enumeration_budget = enumeration_budget;
    return std::make_shared<AdversaryBob>(cfg, std::move(cache),
                                          std::move(debug_sink));
  }
  if (spec.name == "amplified") {
    reject_unknown(spec, {"c", "beta"});
    int c = param_int(spec, "c", 0);
    if (c == 0)
      throw ConfigError("amplified needs c, e.g. amplified:c=2");
    AdversaryConfig cfg = AdversaryConfig::amplified_config(n, c);
    std::string beta = param_str(spec, "beta");
    if (!beta.empty()) {
      cfg.beta = rat_parse(beta);
      cfg.useful_threshold = rat_pow(cfg.beta, 2ul * n);
      cfg.validate();
    }
    cfg.enumeration_budget = enumeration_budget;
    return std::make_shared<AdversaryBob>(cfg, std::move(cache),
                                          std::move(debug_sink));
  }
  throw ConfigError("unknown bob '" + spec.name + "'");
}

std::vector<std::string> alice_names() {
  return {"full_memory", "matched_response", "block", "fresh_random",
          "constant", "human"};
}

std::vector<std::string> bob_names() {
  return {"mirror", "uniform", "half", "amplified"};
}

}  // namespace mirrorgame
