#pragma once

#include <cstdint>
#include <random>

namespace mirrorgame {

std::uint64_t split_mix64(std::uint64_t state);

// Independent seed for sub-stream `index` of a master seed. Used to give each
// trial (and each role within a match) its own generator, so results do not
// depend on scheduling or on how much randomness other trials consumed.
std::uint64_t derive_stream(std::uint64_t master_seed, std::uint64_t index);

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, bound) by rejection sampling. Unlike
  // std::uniform_int_distribution this is pinned to one algorithm, so streams
  // are reproducible across standard libraries.
  std::uint64_t next_below(std::uint64_t bound);

  // Uniform on [0, 2^bits); bits in [0, 64].
  std::uint64_t next_bits(int bits);

private:
  std::mt19937_64 gen_;
};

}  // namespace mirrorgame
