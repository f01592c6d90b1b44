#pragma once

#include <gmpxx.h>

#include <string>

namespace mirrorgame {

// Exact arithmetic everywhere probabilities are compared against analytic
// bounds. Doubles only appear at the reporting edge.
using Rat = mpq_class;

Rat rat_pow(const Rat& base, unsigned long exp);

// 2^e for possibly negative e.
Rat rat_pow2(long e);

// Canonical "num/den" (or bare integer when den == 1).
std::string rat_str(const Rat& r);

// Accepts "3/7", "3", "-3/7". Throws ConfigError on malformed input.
Rat rat_parse(const std::string& text);

double rat_double(const Rat& r);

}  // namespace mirrorgame
