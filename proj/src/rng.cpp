#include "mirrorgame/rng.hpp"

#include "mirrorgame/errors.hpp"

namespace mirrorgame {

std::uint64_t split_mix64(std::uint64_t state) {
  std::uint64_t z = state + 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t derive_stream(std::uint64_t master_seed, std::uint64_t index) {
  return split_mix64(master_seed + (index + 1) * 0x9e3779b97f4a7c15ull);
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
  if (bound == 0) throw InvariantError("next_below with zero bound");
  if (bound == 1) return 0;
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t v = gen_();
    if (v < limit) return v % bound;
  }
}

std::uint64_t Rng::next_bits(int bits) {
  if (bits < 0 || bits > 64) throw InvariantError("bit count out of range");
  if (bits == 0) return 0;
  std::uint64_t v = gen_();
  if (bits == 64) return v;
  return v >> (64 - bits);
}

}  // namespace mirrorgame
