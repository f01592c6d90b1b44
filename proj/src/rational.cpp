#include "mirrorgame/rational.hpp"

#include <cctype>

#include "mirrorgame/errors.hpp"

namespace mirrorgame {

Rat rat_pow(const Rat& base, unsigned long exp) {
  Rat result = 1;
  Rat b = base;
  while (exp > 0) {
    if (exp & 1) result *= b;
    b *= b;
    exp >>= 1;
  }
  result.canonicalize();
  return result;
}

Rat rat_pow2(long e) {
  Rat r;
  if (e >= 0) {
    mpz_class num = 1;
    num <<= static_cast<unsigned long>(e);
    r = Rat(num, 1);
  } else {
    mpz_class den = 1;
    den <<= static_cast<unsigned long>(-e);
    r = Rat(1, den);
  }
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) {
  Rat c = r;  // two-argument construction may leave a reducible fraction
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat rat_parse(const std::string& text) {
  if (text.empty()) throw ConfigError("empty rational literal");
  for (size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) continue;
    if (ch == '/' || (ch == '-' && (i == 0 || text[i - 1] == '/'))) continue;
    throw ConfigError("malformed rational literal: " + text);
  }
  try {
    Rat r(text);
    if (r.get_den() == 0) throw ConfigError("zero denominator: " + text);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ConfigError("malformed rational literal: " + text);
  }
}

double rat_double(const Rat& r) { return r.get_d(); }

}  // namespace mirrorgame
