#include <doctest.h>

#include "oracles.hpp"
#include "thetalab/error.hpp"
#include "thetalab/goepel.hpp"

using namespace thetalab;

TEST_SUITE("goepel") {

TEST_CASE("group counts match brute-force isotropic subspace counts") {
  for (int g = 1; g <= 3; ++g) {
    for (int r = 1; r <= g; ++r) {
      CAPTURE(g);
      CAPTURE(r);
      const auto groups = enumerate_goepel_groups(g, r);
      const std::uint64_t brute = oracle::isotropic_subspaces(g, r);
      CHECK(groups.size() == brute);
      CHECK(goepel_group_count(g, r) == brute);
    }
  }
}

TEST_CASE("known small counts") {
  CHECK(goepel_group_count(1, 1) == 3);
  CHECK(goepel_group_count(2, 1) == 15);
  CHECK(goepel_group_count(2, 2) == 15);
  CHECK(goepel_group_count(3, 3) == 135);
}

TEST_CASE("groups are closed and pairwise syzygetic") {
  for (const auto& G : enumerate_goepel_groups(3, 2)) {
    REQUIRE(G.elements.size() == 4);
    for (HalfChar x : G.elements) {
      for (HalfChar y : G.elements) {
        CHECK(pairing(x, y) == 0);
        CHECK(G.contains(x ^ y));
      }
    }
  }
}

TEST_CASE("system census per group") {
  for (int g = 1; g <= 3; ++g) {
    for (int r = 1; r <= g; ++r) {
      const int s = g - r;
      const std::uint64_t even = (1ull << s) * ((1ull << s) + 1) / 2;
      const std::uint64_t odd = (1ull << s) * ((1ull << s) - 1) / 2;
      const std::uint64_t mixed = (1ull << (2 * s)) * ((1ull << r) - 1);
      const SystemCensus want = expected_census(g, r);
      CHECK(want.all_even == even);
      CHECK(want.all_odd == odd);
      CHECK(want.mixed == mixed);
      for (const auto& G : enumerate_goepel_groups(g, r)) {
        const auto systems = goepel_systems(G);
        CHECK(systems.size() == (1ull << (2 * g - r)));
        const SystemCensus got = census(systems);
        CHECK(got.all_even == even);
        CHECK(got.all_odd == odd);
        CHECK(got.mixed == mixed);
      }
    }
  }
}

TEST_CASE("maximal groups have one all-even system and no all-odd one") {
  for (int g = 1; g <= 3; ++g) {
    const SystemCensus c = census(goepel_systems(enumerate_goepel_groups(g, g).front()));
    CHECK(c.all_even == 1);
    CHECK(c.all_odd == 0);
  }
}

TEST_CASE("mixed systems split evenly") {
  for (const auto& S : goepel_systems(enumerate_goepel_groups(3, 2)[5])) {
    if (S.tag != SystemTag::kMixed) continue;
    int even = 0;
    for (HalfChar m : S.elements) even += is_even(m);
    CHECK(even * 2 == static_cast<int>(S.elements.size()));
  }
}

TEST_CASE("group type") {
  const HalfChar a = HalfChar::parse("100/000");
  const HalfChar b = HalfChar::parse("000/100");
  const HalfChar c = HalfChar::parse("010/000");
  CHECK(group_type({a, b}) == SubgroupType{2, 0, 1});
  CHECK(group_type({a, c}) == SubgroupType{2, 2, 0});
  CHECK(group_type({a, b, c}) == SubgroupType{3, 1, 1});
  CHECK(span({a, b, a ^ b}).size() == 4);
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(enumerate_goepel_groups(2, 3), ThetaError);
  CHECK_THROWS_AS(enumerate_goepel_groups(0, 1), ThetaError);
}

}  // TEST_SUITE
