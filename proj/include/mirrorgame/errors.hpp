#pragma once

#include <stdexcept>
#include <string>

namespace mirrorgame {

// Bad user input: CLI flags, config files, strategy specs, out-of-range n.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration or recursion exceeded its node budget.
class BudgetError : public std::runtime_error {
public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// A structural guarantee failed; indicates a bug, not bad input.
class InvariantError : public std::logic_error {
public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

// Interactive session ended early (EOF at a prompt). Not a failure.
class SessionAbort : public std::runtime_error {
public:
  explicit SessionAbort(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mirrorgame
