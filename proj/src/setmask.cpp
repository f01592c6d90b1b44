#include "mirrorgame/setmask.hpp"

#include <bit>
#include <sstream>

#include "mirrorgame/errors.hpp"

namespace mirrorgame {

SetMask::SetMask(int ground) : ground_(ground), limbs_((ground + 63) / 64, 0) {
  if (ground < 0) throw InvariantError("negative ground set size");
}

SetMask SetMask::of(int ground, std::initializer_list<int> elements) {
  SetMask s(ground);
  for (int e : elements) s.insert(e);
  return s;
}

SetMask SetMask::from_elements(int ground, const std::vector<int>& elements) {
  SetMask s(ground);
  for (int e : elements) s.insert(e);
  return s;
}

int SetMask::count() const {
  int total = 0;
  for (auto limb : limbs_) total += std::popcount(limb);
  return total;
}

bool SetMask::contains(int e) const {
  if (e < 1 || e > ground_) return false;
  int i = e - 1;
  return (limbs_[i / 64] >> (i % 64)) & 1u;
}

void SetMask::insert(int e) {
  if (e < 1 || e > ground_) throw InvariantError("element outside ground set");
  int i = e - 1;
  limbs_[i / 64] |= std::uint64_t{1} << (i % 64);
}

void SetMask::erase(int e) {
  if (e < 1 || e > ground_) throw InvariantError("element outside ground set");
  int i = e - 1;
  limbs_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

void SetMask::check_compatible(const SetMask& other) const {
  if (ground_ != other.ground_)
    throw InvariantError("set operation across different ground sets");
}

SetMask SetMask::united(const SetMask& other) const {
  check_compatible(other);
  SetMask out = *this;
  for (size_t i = 0; i < limbs_.size(); ++i) out.limbs_[i] |= other.limbs_[i];
  return out;
}

SetMask SetMask::intersected(const SetMask& other) const {
  check_compatible(other);
  SetMask out = *this;
  for (size_t i = 0; i < limbs_.size(); ++i) out.limbs_[i] &= other.limbs_[i];
  return out;
}

SetMask SetMask::minus(const SetMask& other) const {
  check_compatible(other);
  SetMask out = *this;
  for (size_t i = 0; i < limbs_.size(); ++i) out.limbs_[i] &= ~other.limbs_[i];
  return out;
}

bool SetMask::intersects(const SetMask& other) const {
  check_compatible(other);
  for (size_t i = 0; i < limbs_.size(); ++i)
    if (limbs_[i] & other.limbs_[i]) return true;
  return false;
}

bool SetMask::subset_of(const SetMask& other) const {
  check_compatible(other);
  for (size_t i = 0; i < limbs_.size(); ++i)
    if (limbs_[i] & ~other.limbs_[i]) return false;
  return true;
}

std::vector<int> SetMask::elements() const {
  std::vector<int> out;
  out.reserve(count());
  for (size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t limb = limbs_[i];
    while (limb) {
      int bit = std::countr_zero(limb);
      out.push_back(static_cast<int>(i) * 64 + bit + 1);
      limb &= limb - 1;
    }
  }
  return out;
}

std::string SetMask::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int e : elements()) {
    if (!first) os << ',';
    os << e;
    first = false;
  }
  os << '}';
  return os.str();
}

std::strong_ordering SetMask::operator<=>(const SetMask& other) const {
  if (auto c = ground_ <=> other.ground_; c != 0) return c;
  for (size_t i = limbs_.size(); i-- > 0;) {
    if (auto c = limbs_[i] <=> other.limbs_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

}  // namespace mirrorgame
