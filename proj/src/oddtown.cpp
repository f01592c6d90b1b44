#include "mirrorgame/oddtown.hpp"

#include <algorithm>
#include <set>

#include "mirrorgame/errors.hpp"

namespace mirrorgame {

Parity intersection_parity(const SetMask& a, const SetMask& b) {
  return a.intersected(b).count() % 2 == 0 ? Parity::even : Parity::odd;
}

bool is_oddtown(const SetFamily& family) {
  const auto& m = family.members;
  std::set<SetMask> distinct(m.begin(), m.end());
  if (distinct.size() != m.size()) return false;
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i].ground() != family.ground) return false;
    if (m[i].count() % 2 != 0) return false;
    for (size_t j = i + 1; j < m.size(); ++j) {
      if (intersection_parity(m[i], m[j]) == Parity::even) return false;
    }
  }
  return true;
}

int gf2_rank(const std::vector<SetMask>& vectors) {
  if (vectors.empty()) return 0;
  int ground = vectors[0].ground();
  std::vector<SetMask> basis;  // basis[i] has pivot at pivots[i]
  std::vector<int> pivots;
  int rank = 0;
  for (SetMask v : vectors) {
    for (size_t i = 0; i < basis.size(); ++i) {
      if (v.contains(pivots[i])) {
        // XOR over GF(2): symmetric difference
        v = v.united(basis[i]).minus(v.intersected(basis[i]));
      }
    }
    auto elems = v.elements();
    if (elems.empty()) continue;
    pivots.push_back(elems.front());
    basis.push_back(v);
    ++rank;
  }
  (void)ground;
  return rank;
}

BoundCheck oddtown_bound_check(const SetFamily& family) {
  if (!is_oddtown(family))
    throw InvariantError("bound check requires an oddtown family");
  BoundCheck out;
  out.within_bound = static_cast<int>(family.members.size()) <= family.ground;
  out.rank = gf2_rank(family.members);
  out.independent = out.rank == static_cast<int>(family.members.size());
  return out;
}

PairMatching extract_even_union_pairs(const SetFamily& family) {
  std::vector<SetMask> pool = family.members;
  for (const auto& s : pool) {
    if (s.count() % 2 != 0)
      throw InvariantError("even-union pairing requires even-cardinality sets");
  }
  std::sort(pool.begin(), pool.end());
  PairMatching out;
  // Removals never create new eligible pairs, so one ascending pass over the
  // sorted family reproduces the repeated take-first-eligible-pair loop.
  std::vector<bool> taken(pool.size(), false);
  for (size_t i = 0; i < pool.size(); ++i) {
    if (taken[i]) continue;
    for (size_t j = i + 1; j < pool.size(); ++j) {
      if (taken[j]) continue;
      if (intersection_parity(pool[i], pool[j]) == Parity::even) {
        out.pairs.emplace_back(pool[i], pool[j]);
        taken[i] = taken[j] = true;
        break;
      }
    }
  }
  for (size_t i = 0; i < pool.size(); ++i)
    if (!taken[i]) out.leftovers.push_back(pool[i]);
  return out;
}

}  // namespace mirrorgame
