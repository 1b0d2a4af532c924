#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "support.hpp"
#include "thetalab/error.hpp"
#include "thetalab/hyperelliptic.hpp"
#include "thetalab/quadrature.hpp"
#include "thetalab/random_tau.hpp"

using namespace thetalab;
using support::rel;

TEST_SUITE("hyperelliptic") {

TEST_CASE("Gauss-Chebyshev integrates endpoint singularities") {
  // ∫_{-1}^{1} dx / sqrt(1 - x²) = π
  const auto r = gauss_chebyshev([](double) { return std::complex<double>(1.0); });
  CHECK(std::abs(r.value - oracle::kPi) < 1e-13);
  // ∫ x² / sqrt(1 - x²) = π/2
  const auto s = gauss_chebyshev([](double x) { return std::complex<double>(x * x); });
  CHECK(std::abs(s.value - oracle::kPi / 2) < 1e-13);
  // Odd integrand integrates to zero without stalling.
  const auto o = gauss_chebyshev([](double x) { return std::complex<double>(x * x * x); });
  CHECK(std::abs(o.value) < 1e-13);
}

TEST_CASE("epsilon map against the column rule") {
  for (int g = 1; g <= 4; ++g) {
    CHECK(epsilon_map(kInfinity, g).is_zero());
    HalfChar total(g);
    for (int j = 1; j <= 2 * g + 1; ++j) {
      const HalfChar e = epsilon_map(j, g);
      CHECK(e == support::from_half(oracle::epsilon(j, g)));
      total = total ^ e;
    }
    CHECK(total.is_zero());
  }
  CHECK(epsilon_map(1, 2).to_string() == "10/00");
  CHECK(epsilon_map(2, 2).to_string() == "10/10");
  CHECK(epsilon_map(3, 2).to_string() == "01/10");
  CHECK(epsilon_map(4, 2).to_string() == "01/11");
  CHECK(epsilon_map(5, 2).to_string() == "00/11");
  CHECK_THROWS_AS(epsilon_map(6, 2), ThetaError);
}

TEST_CASE("epsilon_T over even subsets is a bijection onto all characteristics") {
  for (int g = 1; g <= 3; ++g) {
    std::set<std::uint32_t> seen;
    int even_subsets = 0;
    const IndexSet full = full_index_set(g);
    for (IndexSet t = 0; t <= full; ++t) {
      if ((t & ~full) || cardinality(t) % 2) continue;
      ++even_subsets;
      seen.insert(epsilon_t(t, g).code());
    }
    CHECK(even_subsets == (1 << (2 * g)));
    CHECK(seen.size() == (1u << (2 * g)));
  }
}

TEST_CASE("vanishing table counts") {
  // even nulls vanishing on a hyperelliptic curve: 2^{g-1}(2^g+1) - C(2g+1, g)
  const int expected[] = {0, 0, 0, 1, 10};
  for (int g = 1; g <= 4; ++g) {
    const auto rows = vanishing_table(g);
    CHECK(rows.size() == static_cast<std::size_t>((1 << (g - 1)) * ((1 << g) + 1)));
    int vanishing = 0;
    for (const auto& r : rows) {
      vanishing += r.vanishing;
      CHECK(is_even(r.characteristic));
      CHECK(epsilon_t(r.subset, g) == r.characteristic);
    }
    CHECK(vanishing == expected[g]);
  }
  CHECK_THROWS_AS(is_vanishing(make_index_set({1}), 2), ThetaError);
}

TEST_CASE("branch set validation") {
  CHECK_THROWS_AS(real_branch_set({0.0, 1.0, 1.0}), ThetaError);
  CHECK_THROWS_AS(real_branch_set({0.0, 1.0, 2.0, 3.0}), ThetaError);
  CHECK(real_branch_set({0.0, 1.0, 2.0}).real_sorted());
  CHECK_FALSE(BranchSet({Complex(0, 1), Complex(1, 0), Complex(2, 0)}).real_sorted());
}

TEST_CASE("genus-1 period matrix against the AGM") {
  std::mt19937_64 rng(3);
  for (int s = 0; s < 5; ++s) {
    const auto p = support::random_branch_points(3, rng);
    const CurveData cd = period_matrix(real_branch_set(p));
    CHECK(std::abs(cd.tau.tau()(0, 0) - oracle::agm_tau(p[0], p[1], p[2])) < 1e-10);
  }
}

TEST_CASE("period matrices are Siegel and symmetric") {
  std::mt19937_64 rng(4);
  for (int g = 2; g <= 3; ++g) {
    const CurveData cd = period_matrix(real_branch_set(support::random_branch_points(2 * g + 1, rng)));
    CHECK(cd.asymmetry < 1e-10);
    CHECK(cd.tau.lambda_min() > 0.0);
  }
}

TEST_CASE("even theta-null vanishing pattern follows the subset criterion") {
  for (int g = 2; g <= 3; ++g) {
    std::vector<double> p;
    for (int k = 0; k <= 2 * g; ++k) p.push_back(k - g);
    const CurveData cd = period_matrix(real_branch_set(p));
    const double scale = even_null_scale(cd.tau);
    for (const auto& row : vanishing_table(g)) {
      const double r = std::abs(theta_null(row.characteristic, cd.tau)) / scale;
      CHECK((r < 1e-8) == row.vanishing);
    }
  }
}

TEST_CASE("Thomae ratios against box-sum theta-nulls") {
  std::mt19937_64 rng(8);
  for (int g = 1; g <= 2; ++g) {
    const auto p = support::random_branch_points(2 * g + 1, rng);
    const CurveData cd = period_matrix(real_branch_set(p));
    std::vector<oracle::C> alpha(p.begin(), p.end());
    const auto sets = thomae_admissible(g);
    REQUIRE(sets.size() >= 2);
    for (std::size_t i = 1; i < sets.size(); ++i) {
      const auto t1 = indices_of(sets[0]);
      const auto t2 = indices_of(sets[i]);
      const oracle::C q = std::pow(oracle::theta_null(oracle::epsilon_of(t1, g), cd.tau.tau(), 10), 4) /
                          std::pow(oracle::theta_null(oracle::epsilon_of(t2, g), cd.tau.tau(), 10), 4);
      const oracle::C prod = oracle::thomae_product(t1, alpha) / oracle::thomae_product(t2, alpha);
      CHECK(rel(q, prod) < 1e-9);
      CHECK(rel(thomae_ratio(sets[0], sets[i], cd.branch), prod) < 1e-12);
    }
  }
}

TEST_CASE("the (-1)^{#(T ∩ U)} sign factor breaks Thomae at genus 1") {
  const std::vector<double> p{-1.0, 0.5, 2.0};
  const CurveData cd = period_matrix(real_branch_set(p));
  const IndexSet u = odd_indices(1);
  int literal_failures = 0;
  for (IndexSet t1 : thomae_admissible(1)) {
    for (IndexSet t2 : thomae_admissible(1)) {
      const Complex q = std::pow(theta_null(epsilon_t(t1, 1), cd.tau), 4) /
                        std::pow(theta_null(epsilon_t(t2, 1), cd.tau), 4);
      const int sign = (cardinality(t1 & u) + cardinality(t2 & u)) % 2 ? -1 : 1;
      const Complex literal = double(sign) * thomae_ratio(t1, t2, cd.branch);
      CHECK(rel(q, thomae_ratio(t1, t2, cd.branch)) < 1e-9);
      literal_failures += rel(q, literal) > 1e-3;
    }
  }
  CHECK(literal_failures > 0);
}

TEST_CASE("verify_thomae reports and reproduces") {
  const CurveData cd = period_matrix(real_branch_set({-2.0, -0.5, 0.25, 1.0, 3.0}));
  const ThomaeReport a = verify_thomae(cd, 10, 42);
  const ThomaeReport b = verify_thomae(cd, 10, 42);
  CHECK(a.pass);
  CHECK(a.max_rel_err < 1e-8);
  CHECK(a.max_rel_err == b.max_rel_err);
  CHECK(a.seed == 42);
  CHECK_THROWS_AS(thomae_ratio(make_index_set({1, 3}), make_index_set({1, 2}),
                               real_branch_set({0.0, 1.0, 2.0})),
                  ThetaError);
}

TEST_CASE("Frobenius sums vanish for exact representatives") {
  const CurveData cd = period_matrix(real_branch_set({-2.0, -0.5, 0.25, 1.0, 3.0}));
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::uint32_t> pick(0, 15);
  for (int s = 0; s < 10; ++s) {
    std::array<HalfChar, 4> b{HalfChar(2, pick(rng)), HalfChar(2, pick(rng)),
                              HalfChar(2, pick(rng)), HalfChar(2)};
    b[3] = b[0] ^ b[1] ^ b[2];
    std::array<CVector, 4> z{random_argument(2, rng), random_argument(2, rng),
                             random_argument(2, rng), CVector()};
    z[3] = -(z[0] + z[1] + z[2]);
    const FrobeniusResult r = frobenius_sum(b, z, cd);
    CHECK(std::abs(r.sum) < 1e-9 * std::max(1.0, r.largest_term));
  }
  std::array<CVector, 4> bad{CVector::Ones(2), CVector::Zero(2), CVector::Zero(2),
                             CVector::Zero(2)};
  CHECK_THROWS_AS(frobenius_sum({HalfChar(2), HalfChar(2), HalfChar(2), HalfChar(2)}, bad, cd),
                  ThetaError);
}

}  // TEST_SUITE
