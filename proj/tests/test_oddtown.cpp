#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "mirrorgame/errors.hpp"
#include "mirrorgame/oddtown.hpp"

using namespace mirrorgame;

namespace {

SetMask mask(int ground, std::initializer_list<int> elements) {
  return SetMask::of(ground, elements);
}

SetMask random_even_set(std::mt19937_64& gen, int ground) {
  SetMask s(ground);
  for (int e = 1; e <= ground; ++e)
    if (gen() & 1) s.insert(e);
  if (s.count() % 2 != 0) {
    int e = 1 + static_cast<int>(gen() % ground);
    if (s.contains(e))
      s.erase(e);
    else
      s.insert(e);
  }
  return s;
}

// Grow a family by accepting random even sets that intersect every current
// member oddly. Produces arbitrary valid families for the property tests.
SetFamily grown_family(std::mt19937_64& gen, int ground, int attempts) {
  SetFamily fam{ground, {}};
  for (int a = 0; a < attempts; ++a) {
    SetMask cand = random_even_set(gen, ground);
    if (cand.count() == 0) continue;
    bool ok = true;
    for (const auto& m : fam.members) {
      if (m == cand || intersection_parity(m, cand) == Parity::even) {
        ok = false;
        break;
      }
    }
    if (ok) fam.members.push_back(cand);
  }
  return fam;
}

// Rank oracle: size of the span under subset XOR.
int rank_by_span(const std::vector<SetMask>& vectors) {
  if (vectors.empty()) return 0;
  int ground = vectors[0].ground();
  std::set<SetMask> span;
  span.insert(SetMask(ground));
  for (const auto& v : vectors) {
    std::set<SetMask> next = span;
    for (const auto& s : span)
      next.insert(s.united(v).minus(s.intersected(v)));
    span = next;
  }
  int rank = 0;
  while ((size_t{1} << rank) < span.size()) ++rank;
  return rank;
}

}  // namespace

TEST_CASE("intersection parity") {
  CHECK(intersection_parity(mask(4, {1, 2}), mask(4, {2, 3})) == Parity::odd);
  CHECK(intersection_parity(mask(4, {1, 2}), mask(4, {3, 4})) == Parity::even);
  CHECK(intersection_parity(mask(4, {}), mask(4, {1, 2})) == Parity::even);
}

TEST_CASE("oddtown recognition") {
  SetFamily good{4, {mask(4, {1, 2}), mask(4, {1, 3}), mask(4, {1, 4})}};
  CHECK(is_oddtown(good));

  SetFamily odd_member{4, {mask(4, {1, 2}), mask(4, {1, 2, 3})}};
  CHECK(!is_oddtown(odd_member));

  SetFamily even_pair{4, {mask(4, {1, 2}), mask(4, {3, 4})}};
  CHECK(!is_oddtown(even_pair));

  SetFamily duplicate{4, {mask(4, {1, 2}), mask(4, {1, 2})}};
  CHECK(!is_oddtown(duplicate));

  SetFamily wrong_ground{4, {mask(3, {1, 2})}};
  CHECK(!is_oddtown(wrong_ground));

  CHECK(is_oddtown(SetFamily{4, {}}));
}

TEST_CASE("no oddtown family of four sets fits in a four element ground") {
  // All even subsets of {1..4}, empty set excluded (it never pairs oddly).
  std::vector<SetMask> even_sets;
  for (unsigned bits = 1; bits < 16; ++bits) {
    SetMask s(4);
    for (int e = 1; e <= 4; ++e)
      if (bits & (1u << (e - 1))) s.insert(e);
    if (s.count() % 2 == 0) even_sets.push_back(s);
  }
  REQUIRE(even_sets.size() == 7);
  int best = 0;
  for (unsigned pick = 0; pick < (1u << even_sets.size()); ++pick) {
    SetFamily fam{4, {}};
    for (size_t i = 0; i < even_sets.size(); ++i)
      if (pick & (1u << i)) fam.members.push_back(even_sets[i]);
    if (is_oddtown(fam)) best = std::max(best, static_cast<int>(fam.members.size()));
  }
  CHECK(best == 3);
}

TEST_CASE("grown oddtown families respect the rank bound") {
  // The GF(2) Gram matrix of such a family is J - I: invertible for even
  // sizes, rank size-1 for odd ones ({1,2},{1,3},{2,3} really is dependent).
  std::mt19937_64 gen(3);
  bool saw_dependent_odd = false;
  for (int rep = 0; rep < 200; ++rep) {
    int ground = 2 + static_cast<int>(gen() % 14);
    SetFamily fam = grown_family(gen, ground, 60);
    REQUIRE(is_oddtown(fam));
    auto check = oddtown_bound_check(fam);
    int size = static_cast<int>(fam.members.size());
    CHECK(check.rank >= size - 1);
    CHECK(check.rank <= size);
    CHECK(check.independent == (check.rank == size));
    if (size % 2 == 0) CHECK(check.independent);
    if (!check.independent) saw_dependent_odd = true;
    CHECK(check.within_bound);
  }
  CHECK(saw_dependent_odd);  // the odd-size dependent case genuinely occurs

  SetFamily triangle{3, {mask(3, {1, 2}), mask(3, {1, 3}), mask(3, {2, 3})}};
  REQUIRE(is_oddtown(triangle));
  auto check = oddtown_bound_check(triangle);
  CHECK(check.rank == 2);
  CHECK(!check.independent);
  CHECK(check.within_bound);
}

TEST_CASE("bound check refuses non oddtown input") {
  SetFamily bad{4, {mask(4, {1, 2}), mask(4, {3, 4})}};
  CHECK_THROWS_AS(oddtown_bound_check(bad), InvariantError);
}

TEST_CASE("gf2 rank matches the span oracle") {
  std::mt19937_64 gen(5);
  for (int rep = 0; rep < 300; ++rep) {
    int ground = 1 + static_cast<int>(gen() % 9);
    int count = static_cast<int>(gen() % 7);
    std::vector<SetMask> vectors;
    for (int i = 0; i < count; ++i) {
      SetMask v(ground);
      for (int e = 1; e <= ground; ++e)
        if (gen() & 1) v.insert(e);
      vectors.push_back(v);
    }
    CHECK(gf2_rank(vectors) == rank_by_span(vectors));
  }
  CHECK(gf2_rank({}) == 0);
}

TEST_CASE("the six two element subsets pair into the three complements") {
  SetFamily fam{4, {}};
  for (int a = 1; a <= 4; ++a)
    for (int b = a + 1; b <= 4; ++b) fam.members.push_back(mask(4, {a, b}));
  REQUIRE(fam.members.size() == 6);
  auto matching = extract_even_union_pairs(fam);
  REQUIRE(matching.pairs.size() == 3);
  CHECK(matching.leftovers.empty());
  CHECK(matching.pairs[0].first == mask(4, {1, 2}));
  CHECK(matching.pairs[0].second == mask(4, {3, 4}));
  CHECK(matching.pairs[1].first == mask(4, {1, 3}));
  CHECK(matching.pairs[1].second == mask(4, {2, 4}));
  // Masks sort by their bit patterns, so {2,3} precedes {1,4} in the scan.
  CHECK(matching.pairs[2].first == mask(4, {2, 3}));
  CHECK(matching.pairs[2].second == mask(4, {1, 4}));
}

TEST_CASE("an oddtown family yields no pairs") {
  SetFamily fam{6, {mask(6, {1, 2}), mask(6, {1, 3}), mask(6, {1, 4})}};
  auto matching = extract_even_union_pairs(fam);
  CHECK(matching.pairs.empty());
  CHECK(matching.leftovers.size() == 3);
}

TEST_CASE("odd cardinality members are refused") {
  SetFamily fam{4, {mask(4, {1, 2, 3})}};
  CHECK_THROWS_AS(extract_even_union_pairs(fam), InvariantError);
}

TEST_CASE("pair extraction properties on random even families") {
  std::mt19937_64 gen(8);
  for (int rep = 0; rep < 300; ++rep) {
    int ground = 2 + static_cast<int>(gen() % 10);
    int size = 1 + static_cast<int>(gen() % (2 * ground));
    SetFamily fam{ground, {}};
    for (int i = 0; i < size; ++i) fam.members.push_back(random_even_set(gen, ground));

    auto matching = extract_even_union_pairs(fam);
    CHECK(matching.pairs.size() * 2 + matching.leftovers.size() == fam.members.size());

    for (const auto& [s1, s2] : matching.pairs) {
      CHECK(s1.united(s2).count() % 2 == 0);
      CHECK(intersection_parity(s1, s2) == Parity::even);
    }
    // Leftovers admit no further pair, so they are pairwise odd-intersecting
    // and distinct: an oddtown family, hence at most `ground` of them.
    for (size_t i = 0; i < matching.leftovers.size(); ++i)
      for (size_t j = i + 1; j < matching.leftovers.size(); ++j)
        CHECK(intersection_parity(matching.leftovers[i], matching.leftovers[j]) ==
              Parity::odd);
    SetFamily rest{ground, matching.leftovers};
    bool any_empty = false;
    for (const auto& s : matching.leftovers) any_empty |= s.count() == 0;
    if (!any_empty || matching.leftovers.size() == 1) CHECK(is_oddtown(rest));
    CHECK(matching.leftovers.size() <= static_cast<size_t>(ground) + 1);

    // More members than the oddtown bound allows forces pairs out.
    if (fam.members.size() > static_cast<size_t>(ground) + 1) {
      size_t excess = fam.members.size() - ground - 1;
      CHECK(matching.pairs.size() >= (excess + 1) / 2);
    }
  }
}

TEST_CASE("pair extraction ignores input order") {
  std::mt19937_64 gen(13);
  for (int rep = 0; rep < 50; ++rep) {
    int ground = 3 + static_cast<int>(gen() % 6);
    SetFamily fam{ground, {}};
    int size = 2 + static_cast<int>(gen() % 8);
    for (int i = 0; i < size; ++i) fam.members.push_back(random_even_set(gen, ground));
    auto base = extract_even_union_pairs(fam);

    SetFamily shuffled = fam;
    std::shuffle(shuffled.members.begin(), shuffled.members.end(), gen);
    auto again = extract_even_union_pairs(shuffled);
    CHECK(base.pairs == again.pairs);
    CHECK(base.leftovers == again.leftovers);
  }
}
