#pragma once

#include <utility>
#include <vector>

#include "mirrorgame/setmask.hpp"

namespace mirrorgame {

struct SetFamily {
  int ground = 0;
  std::vector<SetMask> members;
};

enum class Parity { even, odd };

Parity intersection_parity(const SetMask& a, const SetMask& b);

// Every member has even cardinality and every distinct pair intersects in an
// odd number of elements. Duplicate members disqualify the family.
bool is_oddtown(const SetFamily& family);

struct BoundCheck {
  bool within_bound = false;   // |family| <= ground
  int rank = 0;                // GF(2) rank of the member indicator vectors
  bool independent = false;    // rank == |family|
};

// Requires an oddtown family; throws InvariantError otherwise.
BoundCheck oddtown_bound_check(const SetFamily& family);

int gf2_rank(const std::vector<SetMask>& vectors);

struct PairMatching {
  std::vector<std::pair<SetMask, SetMask>> pairs;  // |s1 union s2| even each
  std::vector<SetMask> leftovers;
};

// Greedy pairing of even-cardinality sets so that each emitted pair has an
// even union, i.e. even intersection. Members are sorted first and the scan
// always takes the lexicographically first eligible pair, so the result is a
// deterministic function of the family. Pairing continues while any eligible
// pair remains. Throws InvariantError if a member has odd cardinality.
PairMatching extract_even_union_pairs(const SetFamily& family);

}  // namespace mirrorgame
