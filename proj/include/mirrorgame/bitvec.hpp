#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace mirrorgame {

// Fixed-width bit string. Width 0 is legal (memoryless players).
class BitVec {
public:
  BitVec() = default;
  explicit BitVec(int bits);

  int size() const { return bits_; }
  bool test(int i) const;
  void set(int i, bool value = true);
  int count() const;
  bool none() const { return count() == 0; }

  // Low `bits` stored little-endian; bit i of the value is bit i here.
  static BitVec from_uint(int bits, std::uint64_t value);
  std::uint64_t to_uint() const;  // low 64 bits

  // Byte 0 holds bits 0..7, printed as two lowercase hex digits, and so on.
  // Width 0 serializes as the empty string.
  std::string to_hex() const;
  static BitVec from_hex(int bits, const std::string& hex);

  bool operator==(const BitVec& other) const = default;
  std::strong_ordering operator<=>(const BitVec& other) const;

private:
  int bits_ = 0;
  std::vector<std::uint64_t> limbs_;
};

using MemState = BitVec;

}  // namespace mirrorgame
