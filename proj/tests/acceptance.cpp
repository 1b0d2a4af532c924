// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance AC3 AC5    run the named criteria
//
// Exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "support.hpp"
#include "thetalab/characteristic.hpp"
#include "thetalab/error.hpp"
#include "thetalab/genus3.hpp"
#include "thetalab/goepel.hpp"
#include "thetalab/hyperelliptic.hpp"
#include "thetalab/identities.hpp"
#include "thetalab/random_tau.hpp"
#include "thetalab/theta.hpp"

using namespace thetalab;
using support::rel;

namespace {

// Tolerances.
constexpr double kQuasiTol = 1e-8;
constexpr double kShiftTol = 1e-10;
constexpr double kOddTol = 1e-8;
constexpr double kIdentityTol = 1e-8;
constexpr double kJacobiTol = 1e-10;
constexpr double kVanishRatio = 1e-6;
constexpr double kThomaeTol = 1e-5;
constexpr double kAgmTol = 1e-9;
constexpr double kFrobeniusTol = 1e-7;

// Sample sizes.
constexpr int kQuasiSamples = 100;
constexpr int kOddSamples = 10;
constexpr int kIdentityTaus = 10;
constexpr int kIdentityPairsG2 = 50;
constexpr int kCurvesPerGenus = 3;
constexpr int kThomaePairs = 10;
constexpr int kFrobeniusSamples = 50;
constexpr int kGenericTaus = 5;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[fail: " << what << "] ";
    }
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::uint64_t binom_ratio_count(int g, int r) {
  std::uint64_t num = 1, den = 1;
  for (int k = 0; k < r; ++k) num *= (1ull << (2 * g - 2 * k)) - 1;
  for (int k = 1; k <= r; ++k) den *= (1ull << k) - 1;
  return num / den;
}

// ---------------------------------------------------------------------------

void ac1(Verdict& v) {
  for (int g = 1; g <= 4; ++g) {
    std::uint64_t even = 0, odd = 0;
    for (HalfChar m : enumerate_half_chars(g)) (is_even(m) ? even : odd)++;
    const std::uint64_t p = 1ull << (g - 1), q = 1ull << g;
    v.require(even == p * (q + 1) && odd == p * (q - 1), "census g=" + std::to_string(g));
    v.detail << "g=" << g << ":" << even << "/" << odd << " ";
  }
}

void ac2(Verdict& v) {
  for (int g = 1; g <= 3; ++g) {
    for (int r = 1; r <= g; ++r) {
      const auto groups = enumerate_goepel_groups(g, r);
      const std::string tag = "g=" + std::to_string(g) + ",r=" + std::to_string(r);
      v.require(groups.size() == binom_ratio_count(g, r), "group count " + tag);
      const int s = g - r;
      const std::uint64_t even = (1ull << s) * ((1ull << s) + 1) / 2;
      const std::uint64_t odd = (1ull << s) * ((1ull << s) - 1) / 2;
      const std::uint64_t mixed = (1ull << (2 * s)) * ((1ull << r) - 1);
      bool ok = true;
      for (const auto& G : groups) {
        const SystemCensus c = census(goepel_systems(G));
        ok = ok && c.all_even == even && c.all_odd == odd && c.mixed == mixed;
      }
      v.require(ok, "system census " + tag);
      if (r == g) v.require(even == 1 && odd == 0, "maximal census " + tag);
      v.detail << tag << ":" << groups.size() << " ";
    }
  }
}

void ac3(Verdict& v) {
  std::mt19937_64 rng(0xAC3);
  std::uniform_int_distribution<int> num(0, 11);
  std::uniform_int_distribution<int> shift(-1, 1);
  double worst_quasi = 0.0, worst_parity = 0.0, worst_shift = 0.0, worst_double = 0.0;
  const EvalConfig cfg;
  for (int g = 1; g <= 3; ++g) {
    for (int s = 0; s < kQuasiSamples; ++s) {
      const RiemannMatrix t = random_period_matrix(g, rng);
      const CMatrix& tau = t.tau();
      Eigen::VectorXd a(g), b(g), n(g), m(g);
      for (int i = 0; i < g; ++i) {
        a(i) = num(rng) / 12.0;
        b(i) = num(rng) / 12.0;
        n(i) = shift(rng);
        m(i) = shift(rng);
      }
      const CVector z = random_argument(g, rng);
      const CVector mc = m.cast<Complex>();
      const Complex base = theta_shifted(a, b, z, t);
      const Complex i2pi(0.0, 2.0 * oracle::kPi);

      // Envelope of the larger of the two arguments involved.
      auto envelope = [&](const CVector& w) {
        const Eigen::VectorXd y = w.imag();
        return std::exp(oracle::kPi * y.dot(t.imag_inverse() * y));
      };
      auto measure = [&](Complex lhs, Complex rhs, double env) {
        return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), env});
      };

      // θ[a+n; b+m](z) = e^{2πi aᵗm} θ[a;b](z)
      const Complex law1 = theta_shifted(a + n, b + m, z, t);
      const Complex f1 = std::exp(i2pi * a.dot(m));
      worst_quasi = std::max(worst_quasi, measure(law1, f1 * base, envelope(z)));

      // θ[a;b](z + m) = e^{2πi aᵗm} θ[a;b](z)
      const Complex law2 = theta_shifted(a, b, z + mc, t);
      worst_quasi = std::max(worst_quasi, measure(law2, f1 * base, envelope(z)));

      // θ[a;b](z + τm) = e^{πi(−2bᵗm − mᵗτm − 2mᵗz)} θ[a;b](z)
      const CVector zt = z + tau * mc;
      const Complex law3 = theta_shifted(a, b, zt, t);
      const Complex mtm = (mc.transpose() * tau * mc)(0, 0);
      const Complex mz = (mc.transpose() * z)(0, 0);
      const Complex f3 = std::exp(Complex(0.0, oracle::kPi) * (-2.0 * b.dot(m) - mtm - 2.0 * mz));
      worst_quasi = std::max(worst_quasi, measure(law3, f3 * base, envelope(zt)));

      // θ[γ](−z) = e(γ) θ[γ](z) for half-integer γ
      const HalfChar gamma(g, static_cast<std::uint32_t>(rng() % (1u << (2 * g))));
      const Complex plus = theta_char(gamma, z, t);
      const Complex minus = theta_char(gamma, -z, t);
      worst_parity = std::max(worst_parity,
                              measure(minus, double(parity(gamma)) * plus, envelope(z)));

      // Exponential factor times the shifted Riemann theta.
      const Complex ata = (a.cast<Complex>().transpose() * tau * a.cast<Complex>())(0, 0);
      const Complex lin = (a.cast<Complex>().transpose() * (z + b.cast<Complex>()))(0, 0);
      const CVector w = z + tau * a.cast<Complex>() + b.cast<Complex>();
      const Complex factored = std::exp(Complex(0.0, oracle::kPi) * (ata + 2.0 * lin)) *
                               theta_base(w, t);
      worst_shift = std::max(worst_shift, measure(base, factored, envelope(z)));

      // Doubling the certified radius.
      const ThetaSum narrow = theta_sum(a, b, z, t, cfg);
      const ThetaSum wide = theta_sum(a, b, z, t, cfg, 2 * narrow.radius);
      worst_double = std::max(worst_double, std::abs(narrow.value - wide.value) / envelope(z));
    }
  }
  v.require(worst_quasi < kQuasiTol, "quasi-periodicity");
  v.require(worst_parity < kQuasiTol, "parity");
  v.require(worst_shift < kShiftTol, "exponential factor");
  v.require(worst_double < cfg.tol, "radius doubling");
  v.detail << "quasi=" << sci(worst_quasi) << " parity=" << sci(worst_parity)
           << " shift=" << sci(worst_shift) << " doubling=" << sci(worst_double);
}

void ac4(Verdict& v) {
  std::mt19937_64 rng(0xAC4);
  double worst = 0.0;
  for (int g = 1; g <= 3; ++g) {
    for (int s = 0; s < kOddSamples; ++s) {
      const RiemannMatrix t = random_period_matrix(g, rng);
      double even_max = 0.0, odd_max = 0.0;
      for (HalfChar m : enumerate_half_chars(g)) {
        const double a = std::abs(theta_null(m, t));
        (is_even(m) ? even_max : odd_max) = std::max(is_even(m) ? even_max : odd_max, a);
      }
      worst = std::max(worst, odd_max / even_max);
    }
  }
  v.require(worst < kOddTol, "odd theta-nulls");
  v.detail << "max odd/even=" << sci(worst);
}

void ac5(Verdict& v) {
  std::mt19937_64 rng(0xAC5);
  double worst1 = 0.0, worst2 = 0.0;
  std::vector<Identity> g1;
  for (auto kind : {IdentityKind::kProduct, IdentityKind::kQuartic}) {
    for (HalfChar a : enumerate_half_chars(1)) {
      for (HalfChar h : enumerate_half_chars(1)) {
        if (h.is_zero() || admissible_e(a, h, kind).empty()) continue;
        g1.push_back(generate_identity(a, h, kind));
      }
    }
  }
  for (int s = 0; s < kIdentityTaus; ++s) {
    const RiemannMatrix t = random_period_matrix(1, rng);
    const auto nulls = theta_null_grid(t, 2);
    for (const auto& id : g1) {
      worst1 = std::max(worst1, verify_identity(id, nulls).relative);
    }
  }

  std::vector<Identity> g2;
  std::uniform_int_distribution<std::uint32_t> pick(0, 15);
  std::uniform_int_distribution<int> coin(0, 1);
  while (static_cast<int>(g2.size()) < kIdentityPairsG2) {
    const HalfChar a(2, pick(rng)), h(2, pick(rng));
    const IdentityKind kind = coin(rng) ? IdentityKind::kQuartic : IdentityKind::kProduct;
    if (h.is_zero() || admissible_e(a, h, kind).empty()) continue;
    g2.push_back(generate_identity(a, h, kind));
  }
  for (const auto& id : g2) {
    for (int s = 0; s < kIdentityTaus; ++s) {
      worst2 = std::max(worst2, verify_identity(id, random_period_matrix(2, rng)).relative);
    }
  }

  // Jacobi's identity inside the genus-1 quartic family, at τ = i.
  CMatrix ti(1, 1);
  ti(0, 0) = Complex(0.0, 1.0);
  const RiemannMatrix t = validate_period_matrix(ti);
  const auto nulls = theta_null_grid(t, 2);
  const std::uint32_t c00 = 0, c01 = 1, c10 = 2;
  bool found = false;
  double jacobi = 1.0;
  for (const auto& id : g1) {
    if (id.kind != IdentityKind::kQuartic) continue;
    std::multiset<std::uint32_t> chars;
    for (const auto& side : {id.left, id.right}) {
      for (const auto& term : side) chars.insert({term.first.code(), term.second.code()});
    }
    if (chars.count(c00) && chars.count(c01) && chars.count(c10)) {
      found = true;
      jacobi = std::min(jacobi, verify_identity(id, nulls).relative);
    }
  }
  const double direct = std::abs(std::pow(nulls[c00], 4) - std::pow(nulls[c01], 4) -
                                 std::pow(nulls[c10], 4)) /
                        std::pow(std::abs(nulls[c00]), 4);
  v.require(worst1 < kIdentityTol, "genus-1 identities");
  v.require(worst2 < kIdentityTol, "genus-2 identities");
  v.require(found, "Jacobi identity present");
  v.require(jacobi < kJacobiTol && direct < kJacobiTol, "Jacobi residual");
  v.detail << "g1 (" << g1.size() << " ids x " << kIdentityTaus << ")=" << sci(worst1)
           << " g2 (" << g2.size() << " ids x " << kIdentityTaus << ")=" << sci(worst2)
           << " jacobi=" << sci(std::max(jacobi, direct));
}

void ac6(Verdict& v) {
  std::mt19937_64 rng(0xAC6);
  for (int g = 1; g <= 3; ++g) {
    int mismatches = 0, vanishers = 0;
    for (int c = 0; c < kCurvesPerGenus; ++c) {
      const auto p = support::random_branch_points(2 * g + 1, rng);
      const CurveData cd = period_matrix(real_branch_set(p));
      bool valid = true;
      try {
        validate_period_matrix(cd.tau.tau());
      } catch (const ThetaError&) {
        valid = false;
      }
      v.require(valid, "Siegel validation g=" + std::to_string(g));
      const auto nulls = theta_null_grid(cd.tau, 2);
      double scale = 0.0;
      for (HalfChar m : enumerate_half_chars(g)) {
        if (is_even(m)) scale = std::max(scale, std::abs(nulls[m.code()]));
      }
      for (const auto& row : vanishing_table(g)) {
        const bool zero = std::abs(nulls[row.characteristic.code()]) < kVanishRatio * scale;
        mismatches += zero != row.vanishing;
        vanishers += zero;
      }
    }
    const int expected = g == 3 ? kCurvesPerGenus : 0;
    v.require(mismatches == 0 && vanishers == expected, "pattern g=" + std::to_string(g));
    v.detail << "g=" << g << ": vanishers=" << vanishers << " mismatches=" << mismatches << " ";
  }
}

void ac7(Verdict& v) {
  std::mt19937_64 rng(0xAC7);
  double worst = 0.0, worst_agm = 0.0;
  for (int g = 1; g <= 2; ++g) {
    for (int c = 0; c < kCurvesPerGenus; ++c) {
      const auto p = support::random_branch_points(2 * g + 1, rng);
      const CurveData cd = period_matrix(real_branch_set(p));
      const ThomaeReport r = verify_thomae(cd, kThomaePairs, rng(), kThomaeTol);
      worst = std::max(worst, r.max_rel_err);
      if (g == 1) {
        worst_agm = std::max(worst_agm,
                             std::abs(cd.tau.tau()(0, 0) - oracle::agm_tau(p[0], p[1], p[2])));
      }
    }
  }
  v.require(worst < kThomaeTol, "Thomae ratios");
  v.require(worst_agm < kAgmTol, "AGM period");
  v.detail << "thomae=" << sci(worst) << " agm=" << sci(worst_agm);
}

void ac8(Verdict& v) {
  std::mt19937_64 rng(0xAC8);
  const CurveData cd = period_matrix(real_branch_set(support::random_branch_points(5, rng)));
  std::uniform_int_distribution<std::uint32_t> pick(0, 15);
  double worst = 0.0;
  for (int s = 0; s < kFrobeniusSamples; ++s) {
    std::array<HalfChar, 4> b{HalfChar(2, pick(rng)), HalfChar(2, pick(rng)),
                              HalfChar(2, pick(rng)), HalfChar(2)};
    b[3] = b[0] ^ b[1] ^ b[2];
    std::array<CVector, 4> z{random_argument(2, rng), random_argument(2, rng),
                             random_argument(2, rng), CVector()};
    z[3] = -(z[0] + z[1] + z[2]);
    worst = std::max(worst, std::abs(frobenius_sum(b, z, cd).sum));
  }
  v.require(worst < kFrobeniusTol, "Frobenius sums");
  v.detail << "max |sum|=" << sci(worst);
}

// Integer conditions re-checked on a reported witness.
bool c2_witness_exact(const std::vector<Characteristic>& w) {
  if (w.size() != 2) return false;
  const Characteristic& f1 = w[0];
  const Characteristic& f2 = w[1];
  const Characteristic d = f1.scaled(2).reduced();
  return f1.order() == 4 && f2.order() == 4 && d == f2.scaled(2).reduced() &&
         !add(f1, f2).reduced().is_zero() && period_pairing(d, add(f1, f2).reduced()) == 1;
}

bool v4_witness_exact(const std::vector<Characteristic>& w) {
  if (w.size() != 3) return false;
  const Characteristic d = w[0].scaled(2).reduced();
  for (const auto& c : w) {
    if (c.order() != 4 || c.scaled(2).reduced() != d) return false;
  }
  return true;
}

bool all_theta_nulls(const std::vector<Characteristic>& w, const RiemannMatrix& tau,
                     double scale) {
  for (const auto& c : w) {
    if (std::abs(theta_null(c, tau)) >= kVanishRatio * scale) return false;
  }
  return true;
}

void ac9(Verdict& v) {
  // y² = x(x²−1)(x²−4)(x²−9)
  const CurveData cd = period_matrix(real_branch_set({-3, -2, -1, 0, 1, 2, 3}));
  const DetectionReport rep = detect_all(cd.tau);
  const double scale = even_null_scale(cd.tau);
  const CaseResult& c2 = rep.at(CaseId::kC2);
  const CaseResult& v4 = rep.at(CaseId::kV4Hyperelliptic);
  v.require(c2.detected, "C2 witnesses on the test curve");
  v.require(v4.detected, "V4 (hyperelliptic) witnesses on the test curve");
  bool exact = true, nulls = true;
  for (const auto& w : c2.witnesses) {
    exact = exact && c2_witness_exact(w);
    nulls = nulls && all_theta_nulls(w, cd.tau, scale);
  }
  for (const auto& w : v4.witnesses) {
    exact = exact && v4_witness_exact(w);
    nulls = nulls && all_theta_nulls(w, cd.tau, scale);
  }
  v.require(exact, "witness pairing conditions");
  v.require(nulls, "witness theta-null conditions");
  v.detail << "test curve: quarter vanishers=" << rep.quarter_vanishers
           << " C2=" << c2.witness_count << " V4hyp=" << v4.witness_count << "; ";

  bool agree = rep.c2_criteria_agree;
  {
    // y² = Π_{k=1..4} (x² − k²) under x ↦ 1/(x − 4), which has elliptic involutions.
    std::vector<double> pts;
    for (int k : {-4, -3, -2, -1, 1, 2, 3}) pts.push_back(1.0 / (k - 4.0));
    std::sort(pts.begin(), pts.end());
    agree = agree && detect_all(period_matrix(real_branch_set(pts)).tau).c2_criteria_agree;
  }
  std::mt19937_64 rng(0xAC9);
  int nonempty = 0;
  for (int s = 0; s < kGenericTaus; ++s) {
    const DetectionReport g = detect_all(random_period_matrix(3, rng));
    for (const auto& c : g.cases) nonempty += c.detected;
    agree = agree && g.c2_criteria_agree;
  }
  v.require(nonempty == 0, "generic period matrices report empty");
  v.require(agree, "C2 criteria agree");
  v.detail << "generic nonempty cases=" << nonempty << " criteria agree=" << (agree ? "yes" : "no");
}

struct Criterion {
  const char* id;
  const char* title;
  void (*run)(Verdict&);
};

const Criterion kCriteria[] = {
    {"AC1", "characteristic censuses", ac1},
    {"AC2", "Goepel counting", ac2},
    {"AC3", "theta evaluator soundness", ac3},
    {"AC4", "odd theta-nulls vanish", ac4},
    {"AC5", "identity suite", ac5},
    {"AC6", "period/vanishing convention", ac6},
    {"AC7", "Thomae verification", ac7},
    {"AC8", "Frobenius verification", ac8},
    {"AC9", "genus-3 detection", ac9},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> selected(argv + 1, argv + argc);
  int failures = 0;
  for (const auto& c : kCriteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "[exception: " << e.what() << "]";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s  %s (%.1fs): %s\n", c.id, v.pass ? "PASS" : "FAIL", c.title, secs,
                v.detail.str().c_str());
    failures += !v.pass;
  }
  return failures == 0 ? 0 : 1;
}
