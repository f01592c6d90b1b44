#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace mirrorgame {

// Subset of {1, ..., ground}. Element ids are 1-based throughout.
class SetMask {
public:
  SetMask() = default;
  explicit SetMask(int ground);
  static SetMask of(int ground, std::initializer_list<int> elements);
  static SetMask from_elements(int ground, const std::vector<int>& elements);

  int ground() const { return ground_; }
  int count() const;
  bool empty() const { return count() == 0; }
  bool contains(int e) const;
  void insert(int e);
  void erase(int e);

  SetMask united(const SetMask& other) const;
  SetMask intersected(const SetMask& other) const;
  SetMask minus(const SetMask& other) const;
  bool intersects(const SetMask& other) const;
  bool subset_of(const SetMask& other) const;

  std::vector<int> elements() const;  // ascending
  std::string to_string() const;      // "{1,4,5}"

  bool operator==(const SetMask& other) const = default;
  std::strong_ordering operator<=>(const SetMask& other) const;

private:
  void check_compatible(const SetMask& other) const;
  int ground_ = 0;
  std::vector<std::uint64_t> limbs_;
};

}  // namespace mirrorgame
