#include "mirrorgame/bitvec.hpp"

#include <bit>

#include "mirrorgame/errors.hpp"

namespace mirrorgame {

namespace {
int limbs_for(int bits) { return (bits + 63) / 64; }
}  // namespace

BitVec::BitVec(int bits) : bits_(bits), limbs_(limbs_for(bits), 0) {
  if (bits < 0) throw InvariantError("negative bit width");
}

bool BitVec::test(int i) const {
  if (i < 0 || i >= bits_) throw InvariantError("bit index out of range");
  return (limbs_[i / 64] >> (i % 64)) & 1u;
}

void BitVec::set(int i, bool value) {
  if (i < 0 || i >= bits_) throw InvariantError("bit index out of range");
  std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (value)
    limbs_[i / 64] |= mask;
  else
    limbs_[i / 64] &= ~mask;
}

int BitVec::count() const {
  int total = 0;
  for (auto limb : limbs_) total += std::popcount(limb);
  return total;
}

BitVec BitVec::from_uint(int bits, std::uint64_t value) {
  BitVec v(bits);
  if (bits == 0) {
    if (value != 0) throw InvariantError("value does not fit in 0 bits");
    return v;
  }
  if (bits < 64 && (value >> bits) != 0)
    throw InvariantError("value does not fit in bit width");
  if (!v.limbs_.empty()) v.limbs_[0] = value;
  return v;
}

std::uint64_t BitVec::to_uint() const {
  return limbs_.empty() ? 0 : limbs_[0];
}

std::string BitVec::to_hex() const {
  static const char* digits = "0123456789abcdef";
  int bytes = (bits_ + 7) / 8;
  std::string out;
  out.reserve(2 * bytes);
  for (int b = 0; b < bytes; ++b) {
    unsigned byte = (limbs_[b / 8] >> ((b % 8) * 8)) & 0xffu;
    out.push_back(digits[byte >> 4]);
    out.push_back(digits[byte & 0xf]);
  }
  return out;
}

BitVec BitVec::from_hex(int bits, const std::string& hex) {
  int bytes = (bits + 7) / 8;
  if (static_cast<int>(hex.size()) != 2 * bytes)
    throw InvariantError("hex string length does not match bit width");
  BitVec v(bits);
  for (int b = 0; b < bytes; ++b) {
    unsigned byte = 0;
    for (int k = 0; k < 2; ++k) {
      char ch = hex[2 * b + k];
      unsigned nibble;
      if (ch >= '0' && ch <= '9')
        nibble = ch - '0';
      else if (ch >= 'a' && ch <= 'f')
        nibble = 10 + (ch - 'a');
      else
        throw InvariantError("bad hex digit");
      byte = (byte << 4) | nibble;
    }
    v.limbs_[b / 8] |= std::uint64_t{byte} << ((b % 8) * 8);
  }
  int spare = bytes * 8 - bits;
  if (spare > 0) {
    std::uint64_t top = v.limbs_.back() >> ((bits - 1) % 64 + 1);
    if (top != 0) throw InvariantError("hex string sets bits beyond width");
  }
  return v;
}

std::strong_ordering BitVec::operator<=>(const BitVec& other) const {
  if (auto c = bits_ <=> other.bits_; c != 0) return c;
  for (size_t i = limbs_.size(); i-- > 0;) {
    if (auto c = limbs_[i] <=> other.limbs_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

}  // namespace mirrorgame
