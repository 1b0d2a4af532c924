#include "thetalab/hyperelliptic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <random>

#include "thetalab/error.hpp"
#include "thetalab/quadrature.hpp"

namespace thetalab {

namespace {

void require_even(IndexSet set) {
  if (cardinality(set) % 2 != 0) {
    throw ThetaError(ErrorCode::kOddSubset,
                     "subset " + to_string(set) + " has odd cardinality");
  }
}

void require_within(IndexSet set, int genus) {
  if ((set & ~full_index_set(genus)) != 0) {
    throw ThetaError(ErrorCode::kIndexOutOfRange,
                     "subset " + to_string(set) + " is not contained in S");
  }
}

Eigen::VectorXd bit_vector(std::uint32_t mask, int genus, double value) {
  Eigen::VectorXd v(genus);
  for (int i = 0; i < genus; ++i) v(i) = ((mask >> (genus - 1 - i)) & 1u) ? value : 0.0;
  return v;
}

}  // namespace

BranchSet::BranchSet(std::vector<Complex> points) : points_(std::move(points)) {
  const int n = static_cast<int>(points_.size());
  if (n < 3 || n % 2 == 0) {
    throw ThetaError(ErrorCode::kBranchPoints,
                     "need 2g+1 finite branch points (odd count >= 3), got " +
                         std::to_string(n));
  }
  genus_ = (n - 1) / 2;
  if (genus_ > 15) {
    throw ThetaError(ErrorCode::kGuardExceeded, "genus above 15 is not supported");
  }
  double scale = 1.0;
  for (const auto& p : points_) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) {
      throw ThetaError(ErrorCode::kBranchPoints, "branch points must be finite");
    }
    scale = std::max(scale, std::abs(p));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(points_[i] - points_[j]) <= 1e-9 * scale) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "branch points %d and %d collide (separation %.3g)", i + 1, j + 1,
                      std::abs(points_[i] - points_[j]));
        throw ThetaError(ErrorCode::kBranchPoints, buf);
      }
    }
  }
  real_sorted_ = std::all_of(points_.begin(), points_.end(),
                             [](const Complex& p) { return p.imag() == 0.0; });
  for (int i = 0; real_sorted_ && i + 1 < n; ++i) {
    real_sorted_ = points_[i].real() < points_[i + 1].real();
  }
}

Complex BranchSet::point(int index) const {
  if (index < 1 || index > 2 * genus_ + 1) {
    throw ThetaError(ErrorCode::kIndexOutOfRange,
                     "branch index " + std::to_string(index) + " out of range");
  }
  return points_[index - 1];
}

BranchSet real_branch_set(const std::vector<double>& points) {
  return BranchSet(std::vector<Complex>(points.begin(), points.end()));
}

IndexSet make_index_set(const std::vector<int>& indices) {
  IndexSet s = 0;
  for (int i : indices) {
    if (i < 1 || i > 31) {
      throw ThetaError(ErrorCode::kIndexOutOfRange,
                       "subset index " + std::to_string(i) + " out of range");
    }
    s |= IndexSet{1} << (i - 1);
  }
  return s;
}

std::vector<int> indices_of(IndexSet set) {
  std::vector<int> out;
  for (int i = 1; i <= 32; ++i) {
    if ((set >> (i - 1)) & 1u) out.push_back(i);
  }
  return out;
}

int cardinality(IndexSet set) { return std::popcount(set); }

IndexSet odd_indices(int genus) {
  IndexSet u = 0;
  for (int i = 1; i <= 2 * genus + 1; i += 2) u |= IndexSet{1} << (i - 1);
  return u;
}

IndexSet full_index_set(int genus) { return (IndexSet{1} << (2 * genus + 1)) - 1; }

HalfChar epsilon_map(int index, int genus) {
  if (genus < 1 || genus > 15) {
    throw ThetaError(ErrorCode::kConstraint, "genus out of range");
  }
  if (index == kInfinity) return HalfChar(genus);
  if (index < 1 || index > 2 * genus + 1) {
    throw ThetaError(ErrorCode::kIndexOutOfRange,
                     "ε index " + std::to_string(index) + " outside S ∪ {∞}");
  }
  const int col = (index + 1) / 2;  // 1-based column of the top-row ½
  const int bottom_cols = (index % 2 == 1) ? col - 1 : col;
  std::vector<int> top(genus, 0), bottom(genus, 0);
  if (col <= genus) top[col - 1] = 1;
  for (int i = 0; i < bottom_cols && i < genus; ++i) bottom[i] = 1;
  return HalfChar::from_bits(top, bottom);
}

HalfChar epsilon_t(IndexSet set, int genus) {
  require_within(set, genus);
  HalfChar acc(genus);
  for (int i : indices_of(set)) acc = acc ^ epsilon_map(i, genus);
  return acc;
}

bool is_vanishing(IndexSet set, int genus) {
  require_within(set, genus);
  require_even(set);
  return cardinality(set ^ odd_indices(genus)) != genus + 1;
}

std::vector<VanishingRow> vanishing_table(int genus) {
  if (genus < 1 || genus > 4) {
    throw ThetaError(ErrorCode::kGuardExceeded, "vanishing table requires 1 <= g <= 4");
  }
  std::vector<VanishingRow> rows;
  const IndexSet full = full_index_set(genus);
  for (IndexSet t = 0; t <= full; ++t) {
    if (cardinality(t) % 2 != 0) continue;
    const HalfChar m = epsilon_t(t, genus);
    if (!is_even(m)) continue;
    rows.push_back({m, t, is_vanishing(t, genus)});
  }
  std::sort(rows.begin(), rows.end(),
            [](const VanishingRow& x, const VanishingRow& y) {
              return x.characteristic < y.characteristic;
            });
  return rows;
}

CurveData period_matrix(const BranchSet& branch) {
  if (!branch.real_sorted()) {
    throw ThetaError(ErrorCode::kBranchPoints,
                     "period matrices need real, strictly increasing branch points");
  }
  const int g = branch.genus();
  const int n = 2 * g + 1;
  std::vector<double> e(n);
  for (int i = 0; i < n; ++i) e[i] = branch.points()[i].real();

  // gap(j, m) = ∫_{e_j}^{e_{j+1}} x^m dx / y, with y = sqrt|f| · i^{#points right of the gap}.
  CMatrix gap(2 * g, g);
  for (int j = 0; j < 2 * g; ++j) {
    const double c = 0.5 * (e[j] + e[j + 1]);
    const double h = 0.5 * (e[j + 1] - e[j]);
    Complex phase{1.0, 0.0};
    for (int k = 0; k < n - (j + 1); ++k) phase *= Complex{0.0, 1.0};
    for (int m = 0; m < g; ++m) {
      const auto integrand = [&](double t) -> Complex {
        const double x = c + h * t;
        double prod = 1.0;
        for (int k = 0; k < n; ++k) {
          if (k != j && k != j + 1) prod *= std::abs(x - e[k]);
        }
        return std::pow(x, m) / std::sqrt(prod);
      };
      gap(j, m) = gauss_chebyshev(integrand).value / phase;
    }
  }
  CMatrix A(g, g), B(g, g);
  for (int k = 0; k < g; ++k) {
    for (int m = 0; m < g; ++m) {
      A(m, k) = 2.0 * gap(2 * k, m);
      Complex s{0.0, 0.0};
      for (int l = k; l < g; ++l) s += gap(2 * l + 1, m);
      B(m, k) = 2.0 * s;
    }
  }
  CMatrix tau = A.fullPivLu().solve(B);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      0.5 * (tau.imag() + tau.imag().transpose()), Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().maxCoeff() < 0.0) {
    tau = -tau;
    B = -B;
  }
  const double scale = std::max(1.0, tau.cwiseAbs().maxCoeff());
  const double asym = (tau - tau.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9 * scale) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "computed period matrix is not symmetric (%.3g)", asym);
    throw ThetaError(ErrorCode::kNotSymmetric, buf);
  }
  const CMatrix sym = 0.5 * (tau + tau.transpose());
  return CurveData{branch, validate_period_matrix(sym), A, B, asym};
}

Complex thomae_product(IndexSet set, const BranchSet& branch) {
  const int g = branch.genus();
  require_within(set, g);
  const IndexSet d = set ^ odd_indices(g);
  Complex p{1.0, 0.0};
  for (int i = 1; i <= 2 * g + 1; ++i) {
    for (int j = i + 1; j <= 2 * g + 1; ++j) {
      const bool in_i = (d >> (i - 1)) & 1u;
      const bool in_j = (d >> (j - 1)) & 1u;
      if (in_i == in_j) p *= branch.point(i) - branch.point(j);
    }
  }
  return p;
}

Complex thomae_ratio(IndexSet t1, IndexSet t2, const BranchSet& branch) {
  const int g = branch.genus();
  for (IndexSet t : {t1, t2}) {
    if (is_vanishing(t, g)) {
      throw ThetaError(ErrorCode::kVanishingCharacteristic,
                       "θ[ε_T] vanishes for T = " + to_string(t));
    }
  }
  if (t1 == t2) return {1.0, 0.0};
  return thomae_product(t1, branch) / thomae_product(t2, branch);
}

std::vector<IndexSet> thomae_admissible(int genus) {
  std::vector<IndexSet> out;
  for (IndexSet t = 0; t <= full_index_set(genus); ++t) {
    if (cardinality(t) % 2 == 0 && !is_vanishing(t, genus)) out.push_back(t);
  }
  return out;
}

ThomaeReport verify_thomae(const CurveData& curve, int samples, std::uint64_t seed,
                           double tolerance, const EvalConfig& cfg) {
  if (samples < 1) throw ThetaError(ErrorCode::kConstraint, "samples must be positive");
  const int g = curve.branch.genus();
  const auto admissible = thomae_admissible(g);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, admissible.size() - 1);
  ThomaeReport report;
  report.tolerance = tolerance;
  report.seed = seed;
  report.samples = samples;
  for (int s = 0; s < samples; ++s) {
    const IndexSet t1 = admissible[pick(rng)];
    const IndexSet t2 = admissible[pick(rng)];
    const Complex th1 = theta_null(epsilon_t(t1, g), curve.tau, cfg);
    const Complex th2 = theta_null(epsilon_t(t2, g), curve.tau, cfg);
    const Complex measured = std::pow(th1 / th2, 4);
    const Complex predicted = thomae_ratio(t1, t2, curve.branch);
    const double err = std::abs(measured - predicted) / std::abs(predicted);
    if (s == 0 || err > report.max_rel_err) {
      report.max_rel_err = err;
      report.worst_t1 = t1;
      report.worst_t2 = t2;
    }
  }
  report.pass = report.max_rel_err < tolerance;
  return report;
}

FrobeniusResult frobenius_sum(const std::array<HalfChar, 4>& b,
                              const std::array<CVector, 4>& z, const CurveData& curve,
                              const EvalConfig& cfg) {
  const int g = curve.branch.genus();
  for (int i = 0; i < 4; ++i) {
    if (b[i].genus() != g || z[i].size() != g) {
      throw ThetaError(ErrorCode::kGenusMismatch, "Frobenius inputs must match the curve genus");
    }
  }
  if (!(b[0] ^ b[1] ^ b[2] ^ b[3]).is_zero()) {
    throw ThetaError(ErrorCode::kConstraint, "characteristics b_i must sum to zero");
  }
  const CVector zsum = z[0] + z[1] + z[2] + z[3];
  double zscale = 1.0;
  for (const auto& zi : z) zscale = std::max(zscale, zi.cwiseAbs().maxCoeff());
  if (zsum.cwiseAbs().maxCoeff() > 1e-12 * zscale) {
    throw ThetaError(ErrorCode::kConstraint, "arguments z_i must sum to zero");
  }
  std::array<Eigen::VectorXd, 4> tops, bottoms;
  for (int i = 0; i < 3; ++i) {
    tops[i] = bit_vector(b[i].top_mask(), g, 0.5);
    bottoms[i] = bit_vector(b[i].bottom_mask(), g, 0.5);
  }
  tops[3] = -(tops[0] + tops[1] + tops[2]);
  bottoms[3] = -(bottoms[0] + bottoms[1] + bottoms[2]);

  const IndexSet u = odd_indices(g);
  FrobeniusResult result{{0.0, 0.0}, 0.0};
  for (int j = 0; j <= 2 * g + 1; ++j) {  // j = 0 is ∞
    const HalfChar e = epsilon_map(j, g);
    const Eigen::VectorXd ea = bit_vector(e.top_mask(), g, 0.5);
    const Eigen::VectorXd eb = bit_vector(e.bottom_mask(), g, 0.5);
    Complex term = (j != kInfinity && ((u >> (j - 1)) & 1u)) ? 1.0 : -1.0;
    for (int i = 0; i < 4; ++i) {
      term *= theta_shifted(tops[i] + ea, bottoms[i] + eb, z[i], curve.tau, cfg);
    }
    result.sum += term;
    result.largest_term = std::max(result.largest_term, std::abs(term));
  }
  return result;
}

std::string to_string(IndexSet set) {
  std::string s = "{";
  bool first = true;
  for (int i : indices_of(set)) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

}  // namespace thetalab
