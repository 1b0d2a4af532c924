#ifndef THETALAB_GOEPEL_HPP
#define THETALAB_GOEPEL_HPP

// Göpel groups (pairwise syzygetic subgroups of half characteristics), their
// cosets, and the rank/type classification of subgroups of half periods.

#include <cstdint>
#include <vector>

#include "thetalab/characteristic.hpp"

namespace thetalab {

struct GoepelGroup {
  int genus = 0;
  int rank = 0;
  std::vector<HalfChar> elements;  // sorted by code, contains zero

  bool contains(HalfChar m) const;
};

enum class SystemTag { kAllEven, kAllOdd, kMixed };

const char* to_string(SystemTag tag);

struct GoepelSystem {
  GoepelGroup base;
  HalfChar representative;          // smallest code in the coset
  std::vector<HalfChar> elements;   // sorted by code
  SystemTag tag = SystemTag::kMixed;
};

/// Closed-form count of Göpel groups with 2^r elements in genus g.
std::uint64_t goepel_group_count(int genus, int rank);

/// Every Göpel group of order 2^r, ordered by their sorted element codes.
/// Exhaustive; requires 1 ≤ r ≤ g ≤ 3.
std::vector<GoepelGroup> enumerate_goepel_groups(int genus, int rank);

/// The 2^{2g−r} cosets of G, each tagged by the parity of its members.
std::vector<GoepelSystem> goepel_systems(const GoepelGroup& group);

struct SystemCensus {
  std::uint64_t all_even = 0;
  std::uint64_t all_odd = 0;
  std::uint64_t mixed = 0;
};
/// Expected census for a Göpel group of rank r in genus g (σ = g − r).
SystemCensus expected_census(int genus, int rank);
SystemCensus census(const std::vector<GoepelSystem>& systems);

/// Krazer rank and type of a subgroup of half periods: r = m + 2n where m is
/// the dimension of the radical of the pairing restricted to the subgroup.
struct SubgroupType {
  int rank = 0;
  int m = 0;
  int n = 0;
  friend bool operator==(const SubgroupType&, const SubgroupType&) = default;
};

/// Elements of the subgroup generated by the given half characteristics.
std::vector<HalfChar> span(const std::vector<HalfChar>& generators);

SubgroupType group_type(const std::vector<HalfChar>& generators);

}  // namespace thetalab

#endif
