#ifndef THETALAB_HYPERELLIPTIC_HPP
#define THETALAB_HYPERELLIPTIC_HPP

// Hyperelliptic curves y² = Π (x − α_i) with 2g+1 finite branch points and
// one at infinity: the ε map onto half characteristics, the vanishing
// criterion for even theta-nulls, period matrices for real branch points,
// and numerical checks of Thomae's and Frobenius' formulas.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "thetalab/characteristic.hpp"
#include "thetalab/theta.hpp"

namespace thetalab {

class BranchSet {
 public:
  /// 2g+1 pairwise distinct points, separation > 1e-9 · max(1, max |α|).
  explicit BranchSet(std::vector<Complex> points);

  int genus() const noexcept { return genus_; }
  const std::vector<Complex>& points() const noexcept { return points_; }
  /// α_i for 1 ≤ i ≤ 2g+1.
  Complex point(int index) const;
  /// All points real and strictly increasing.
  bool real_sorted() const noexcept { return real_sorted_; }

 private:
  int genus_ = 0;
  std::vector<Complex> points_;
  bool real_sorted_ = false;
};

BranchSet real_branch_set(const std::vector<double>& points);

/// Subsets of S = {1, …, 2g+1}: index i is bit i−1.
using IndexSet = std::uint32_t;

inline constexpr int kInfinity = 0;

IndexSet make_index_set(const std::vector<int>& indices);
std::vector<int> indices_of(IndexSet set);
int cardinality(IndexSet set);
/// U = {1, 3, …, 2g+1}.
IndexSet odd_indices(int genus);
IndexSet full_index_set(int genus);

/// ε(i) for 1 ≤ i ≤ 2g+1, ε(∞) = 0 for i = kInfinity.
HalfChar epsilon_map(int index, int genus);
/// ε_T = Σ_{k ∈ T} ε(k).
HalfChar epsilon_t(IndexSet set, int genus);

/// θ[ε_T](0) = 0 iff #(T △ U) ≠ g+1. T must have even cardinality.
bool is_vanishing(IndexSet set, int genus);

struct VanishingRow {
  HalfChar characteristic;
  IndexSet subset = 0;  // the even-cardinality T ⊆ S with ε_T = characteristic
  bool vanishing = false;
};
/// One row per even half characteristic, in code order. Requires g ≤ 4.
std::vector<VanishingRow> vanishing_table(int genus);

struct CurveData {
  BranchSet branch;
  RiemannMatrix tau;
  CMatrix a_periods;  // (differential x^m dx/y, cycle)
  CMatrix b_periods;
  double asymmetry = 0.0;  // max |τ − τᵗ| before symmetrization
};

/// Period matrix of a curve with real sorted branch points. A_k encircles
/// [α_{2k−1}, α_{2k}], B_k encircles [α_{2k}, α_{2k+1}] ∪ … ∪ [α_{2g}, α_{2g+1}].
CurveData period_matrix(const BranchSet& branch);

/// P(T) = Π_{i<j ∈ T△U} (α_i − α_j) · Π_{i<j ∉ T△U} (α_i − α_j).
Complex thomae_product(IndexSet set, const BranchSet& branch);

/// θ[ε_T1]⁴ / θ[ε_T2]⁴ as predicted by Thomae's formula, P(T1)/P(T2).
Complex thomae_ratio(IndexSet t1, IndexSet t2, const BranchSet& branch);

/// Even-cardinality T ⊆ S whose characteristic does not vanish.
std::vector<IndexSet> thomae_admissible(int genus);

struct ThomaeReport {
  double max_rel_err = 0.0;
  IndexSet worst_t1 = 0;
  IndexSet worst_t2 = 0;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  int samples = 0;
};

ThomaeReport verify_thomae(const CurveData& curve, int samples, std::uint64_t seed,
                           double tolerance = 1e-5, const EvalConfig& cfg = {});

struct FrobeniusResult {
  Complex sum;
  double largest_term = 0.0;
};

/// Σ_{j ∈ S ∪ {∞}} ε_U(j) Π_i θ[b_i + ε(j)](z_i). The b_i must sum to zero
/// mod 1 and the z_i to zero; b₄ is replaced by the exact representative
/// −(b₁+b₂+b₃).
FrobeniusResult frobenius_sum(const std::array<HalfChar, 4>& b,
                              const std::array<CVector, 4>& z, const CurveData& curve,
                              const EvalConfig& cfg = {});

std::string to_string(IndexSet set);

}  // namespace thetalab

#endif
