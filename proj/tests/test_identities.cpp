#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "thetalab/error.hpp"
#include "thetalab/identities.hpp"
#include "thetalab/random_tau.hpp"

using namespace thetalab;

namespace {

// Both sides from box-sum theta-nulls, following the term layout.
double oracle_residual(const Identity& id, const RiemannMatrix& tau) {
  std::vector<oracle::C> nulls;
  for (HalfChar m : enumerate_half_chars(id.genus)) {
    nulls.push_back(oracle::theta_null(support::to_half(m), tau.tau(), id.genus == 1 ? 12 : 8));
  }
  auto side = [&](const std::vector<IdentityTerm>& terms, double scale, double& largest) {
    oracle::C sum = 0.0;
    for (const auto& t : terms) {
      const oracle::C x = std::pow(nulls[t.first.code()], t.power);
      const oracle::C y = std::pow(nulls[t.second.code()], t.power);
      const oracle::C v = scale * double(t.sign) *
                          (id.kind == IdentityKind::kProduct ? x * y : x + double(t.inner_sign) * y);
      largest = std::max(largest, std::abs(v));
      sum += v;
    }
    return sum;
  };
  double largest = 0.0;
  const oracle::C lhs = side(id.left, 1.0, largest);
  const oracle::C rhs = side(id.right, std::ldexp(1.0, -id.scale_exponent), largest);
  return std::abs(lhs - rhs) / largest;
}

}  // namespace

TEST_SUITE("identities") {

TEST_CASE("admissible sets satisfy their defining conditions") {
  for (HalfChar a : enumerate_half_chars(2)) {
    for (HalfChar h : enumerate_half_chars(2)) {
      if (h.is_zero()) continue;
      for (HalfChar e : admissible_e(a, h, IdentityKind::kProduct)) {
        CHECK(is_even(e));
        CHECK(is_even(e ^ h));
        CHECK(pairing(a ^ e, h) == 0);
        CHECK(e < (e ^ h));
      }
      for (HalfChar e : admissible_e(a, h, IdentityKind::kQuartic)) {
        CHECK(is_even(e));
        CHECK(is_even(e ^ h));
        CHECK((parity_exponent(h) + pairing(e, h)) % 2 == 0);
      }
    }
  }
}

TEST_CASE("h = 0 is rejected") {
  try {
    generate_identity(HalfChar(2), HalfChar(2), IdentityKind::kQuartic);
    FAIL("expected an exception");
  } catch (const ThetaError& e) {
    CHECK(e.code() == ErrorCode::kEmptyAdmissibleSet);
  }
}

TEST_CASE("every genus-1 identity holds against box-sum theta-nulls") {
  std::mt19937_64 rng(2);
  for (int s = 0; s < 3; ++s) {
    const RiemannMatrix tau = random_period_matrix(1, rng);
    for (auto kind : {IdentityKind::kProduct, IdentityKind::kQuartic}) {
      for (HalfChar a : enumerate_half_chars(1)) {
        for (HalfChar h : enumerate_half_chars(1)) {
          if (h.is_zero() || admissible_e(a, h, kind).empty()) continue;
          const Identity id = generate_identity(a, h, kind);
          CHECK(oracle_residual(id, tau) < 1e-12);
          CHECK(verify_identity(id, tau).relative < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("genus-2 identities hold") {
  std::mt19937_64 rng(6);
  const RiemannMatrix tau = random_period_matrix(2, rng);
  int checked = 0;
  for (auto kind : {IdentityKind::kProduct, IdentityKind::kQuartic}) {
    for (HalfChar a : enumerate_half_chars(2)) {
      for (HalfChar h : enumerate_half_chars(2)) {
        if (h.is_zero() || admissible_e(a, h, kind).empty()) continue;
        const Identity id = generate_identity(a, h, kind);
        CHECK(verify_identity(id, tau).relative < 1e-11);
        if (checked++ % 17 == 0) CHECK(oracle_residual(id, tau) < 1e-11);
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("the genus-1 quartic family contains Jacobi's identity") {
  const HalfChar z00 = HalfChar::parse("0/0"), z01 = HalfChar::parse("0/1"),
                 z10 = HalfChar::parse("1/0");
  bool found = false;
  for (HalfChar a : enumerate_half_chars(1)) {
    for (HalfChar h : enumerate_half_chars(1)) {
      if (h.is_zero() || admissible_e(a, h, IdentityKind::kQuartic).empty()) continue;
      const Identity id = generate_identity(a, h, IdentityKind::kQuartic);
      // θ00⁴ = θ01⁴ + θ10⁴ up to the vanishing odd θ11
      std::multiset<std::uint32_t> chars;
      for (const auto& t : id.left) chars.insert({t.first.code(), t.second.code()});
      for (const auto& t : id.right) chars.insert({t.first.code(), t.second.code()});
      found = found || (chars.count(z00.code()) && chars.count(z01.code()) &&
                        chars.count(z10.code()));
    }
  }
  CHECK(found);
}

TEST_CASE("LaTeX rendering") {
  const Identity id = generate_identity(HalfChar::parse("1/0"), HalfChar::parse("0/1"),
                                        IdentityKind::kQuartic);
  const std::string tex = to_latex(id);
  CHECK(tex.find("\\theta^{4}") != std::string::npos);
  CHECK(tex.find('=') != std::string::npos);
  CHECK(parse_identity_kind("product") == IdentityKind::kProduct);
  CHECK_THROWS_AS(parse_identity_kind("cubic"), ThetaError);
}

}  // TEST_SUITE
