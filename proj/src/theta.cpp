#include "thetalab/theta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "thetalab/error.hpp"
#include "thetalab/parallel.hpp"

namespace thetalab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

void require_genus(int expected, long actual, const char* what) {
  if (actual != expected) {
    throw ThetaError(ErrorCode::kGenusMismatch,
                     std::string(what) + " has length " + std::to_string(actual) +
                         ", expected genus " + std::to_string(expected));
  }
}

void check_config(const EvalConfig& cfg) {
  if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) {
    throw ThetaError(ErrorCode::kConstraint, "tol must be a positive number");
  }
  if (cfg.radius_cap < 1) {
    throw ThetaError(ErrorCode::kConstraint, "radius_cap must be at least 1");
  }
}

// Certified bound on the terms with sup-distance k from the box centre,
// summed over k > R. Shell k holds at most 2g(2k+1)^{g−1} lattice points,
// each at Euclidean distance ≥ k − ½ from the Gaussian centre.
double tail_bound(int g, double lambda, int R, bool gradient, double spread) {
  double total = 0.0;
  for (int k = R + 1;; ++k) {
    const double shell = 2.0 * g * std::pow(2.0 * k + 1.0, g - 1);
    const double decay = std::exp(-kPi * lambda * (k - 0.5) * (k - 0.5));
    double term = shell * decay;
    if (gradient) term *= 2.0 * kPi * (spread + std::sqrt(double(g)) * (k + 1.0));
    total += term;
    if (term <= total * 1e-17 || decay == 0.0) break;
  }
  return total;
}

struct Frame {
  Eigen::VectorXd vstar;      // Gaussian centre in v = u + a coordinates
  Eigen::VectorXi centre;     // rounded centre in u coordinates
};

Frame frame_for(const Eigen::VectorXd& a, const CVector& z, const RiemannMatrix& tau) {
  const Eigen::VectorXd y = z.imag();
  Frame f;
  f.vstar = -tau.imag_inverse() * y;
  const Eigen::VectorXd ustar = f.vstar - a;
  f.centre.resize(a.size());
  for (int i = 0; i < a.size(); ++i) {
    f.centre(i) = static_cast<int>(std::lround(ustar(i)));
  }
  return f;
}

// Visits every u in centre + [−R, R]^g.
template <typename Fn>
void for_each_point(const Eigen::VectorXi& centre, int R, Fn&& fn) {
  const int g = static_cast<int>(centre.size());
  Eigen::VectorXi u = centre.array() - R;
  while (true) {
    fn(u);
    int i = g - 1;
    while (i >= 0 && u(i) == centre(i) + R) {
      u(i) = centre(i) - R;
      --i;
    }
    if (i < 0) return;
    ++u(i);
  }
}

}  // namespace

RiemannMatrix validate_period_matrix(const CMatrix& raw, double sym_tol) {
  if (raw.rows() == 0 || raw.rows() != raw.cols()) {
    throw ThetaError(ErrorCode::kConstraint, "period matrix must be square and nonempty");
  }
  if (!raw.allFinite()) {
    throw ThetaError(ErrorCode::kConstraint, "period matrix has non-finite entries");
  }
  const double scale = std::max(1.0, raw.cwiseAbs().maxCoeff());
  const double asym = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  if (asym > sym_tol * scale) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "period matrix not symmetric: max |τ_ij − τ_ji| = %.3g",
                  asym);
    throw ThetaError(ErrorCode::kNotSymmetric, buf);
  }
  RiemannMatrix m;
  m.tau_ = raw;
  m.imag_ = raw.imag();
  m.imag_ = 0.5 * (m.imag_ + m.imag_.transpose()).eval();
  Eigen::LLT<Eigen::MatrixXd> llt(m.imag_);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m.imag_, Eigen::EigenvaluesOnly);
  if (llt.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
    throw ThetaError(ErrorCode::kNotPositiveDefinite,
                     "imaginary part of the period matrix is not positive definite");
  }
  m.lambda_min_ = eig.eigenvalues().minCoeff();
  m.imag_inv_ = llt.solve(Eigen::MatrixXd::Identity(raw.rows(), raw.cols()));
  return m;
}

int truncation_radius(const RiemannMatrix& tau, double tol, int radius_cap,
                      bool gradient, double spread) {
  const double target = std::max(tol, kTolFloor);
  for (int R = 0; R <= radius_cap; ++R) {
    if (tail_bound(tau.genus(), tau.lambda_min(), R, gradient, spread) <= target) {
      return R;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "lattice radius above cap %d needed (smallest eigenvalue of Im tau = %.3g)",
                radius_cap, tau.lambda_min());
  throw ThetaError(ErrorCode::kRadiusOverflow, buf);
}

ThetaSum theta_sum(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                   const CVector& z, const RiemannMatrix& tau,
                   const EvalConfig& cfg, int radius) {
  check_config(cfg);
  const int g = tau.genus();
  require_genus(g, a.size(), "characteristic top");
  require_genus(g, b.size(), "characteristic bottom");
  require_genus(g, z.size(), "argument z");
  if (!z.allFinite()) {
    throw ThetaError(ErrorCode::kConstraint, "argument z has non-finite entries");
  }
  const Frame f = frame_for(a, z, tau);
  const int R = radius > 0 ? radius
                           : truncation_radius(tau, cfg.tol,
                                               cfg.radius_cap);
  const CMatrix& T = tau.tau();
  const CVector w = z + b.cast<Complex>();
  Complex sum{0.0, 0.0};
  Eigen::VectorXd v(g);
  for_each_point(f.centre, R, [&](const Eigen::VectorXi& u) {
    v = u.cast<double>() + a;
    const Complex quad = v.cast<Complex>().dot(T * v.cast<Complex>());
    const Complex lin = v.cast<Complex>().dot(w);
    sum += std::exp(kI * kPi * (quad + 2.0 * lin));
  });
  return {sum, R};
}

Complex theta_shifted(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                      const CVector& z, const RiemannMatrix& tau,
                      const EvalConfig& cfg) {
  return theta_sum(a, b, z, tau, cfg).value;
}

Complex theta_base(const CVector& z, const RiemannMatrix& tau, const EvalConfig& cfg) {
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(tau.genus());
  return theta_shifted(zero, zero, z, tau, cfg);
}

Complex theta_char(const Characteristic& c, const CVector& z,
                   const RiemannMatrix& tau, const EvalConfig& cfg) {
  require_genus(tau.genus(), c.genus(), "characteristic");
  const auto t = c.top_values();
  const auto b = c.bottom_values();
  return theta_shifted(Eigen::Map<const Eigen::VectorXd>(t.data(), t.size()),
                       Eigen::Map<const Eigen::VectorXd>(b.data(), b.size()), z, tau,
                       cfg);
}

Complex theta_char(const HalfChar& c, const CVector& z, const RiemannMatrix& tau,
                   const EvalConfig& cfg) {
  return theta_char(c.to_char(), z, tau, cfg);
}

Complex theta_null(const Characteristic& c, const RiemannMatrix& tau,
                   const EvalConfig& cfg) {
  return theta_char(c, CVector::Zero(tau.genus()), tau, cfg);
}

Complex theta_null(const HalfChar& c, const RiemannMatrix& tau, const EvalConfig& cfg) {
  return theta_null(c.to_char(), tau, cfg);
}

CVector theta_gradient_shifted(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                               const CVector& z, const RiemannMatrix& tau,
                               const EvalConfig& cfg) {
  check_config(cfg);
  const int g = tau.genus();
  require_genus(g, a.size(), "characteristic top");
  require_genus(g, b.size(), "characteristic bottom");
  require_genus(g, z.size(), "argument z");
  const Frame f = frame_for(a, z, tau);
  const int R = truncation_radius(tau, cfg.tol,
                                  cfg.radius_cap, true, f.vstar.norm());
  const CMatrix& T = tau.tau();
  const CVector w = z + b.cast<Complex>();
  CVector grad = CVector::Zero(g);
  Eigen::VectorXd v(g);
  for_each_point(f.centre, R, [&](const Eigen::VectorXi& u) {
    v = u.cast<double>() + a;
    const Complex quad = v.cast<Complex>().dot(T * v.cast<Complex>());
    const Complex lin = v.cast<Complex>().dot(w);
    const Complex term = std::exp(kI * kPi * (quad + 2.0 * lin));
    grad += (2.0 * kPi * kI * term) * v.cast<Complex>();
  });
  return grad;
}

CVector theta_gradient(const Characteristic& c, const CVector& z,
                       const RiemannMatrix& tau, const EvalConfig& cfg) {
  require_genus(tau.genus(), c.genus(), "characteristic");
  const auto t = c.top_values();
  const auto b = c.bottom_values();
  return theta_gradient_shifted(Eigen::Map<const Eigen::VectorXd>(t.data(), t.size()),
                                Eigen::Map<const Eigen::VectorXd>(b.data(), b.size()),
                                z, tau, cfg);
}

std::vector<Complex> theta_null_grid(const RiemannMatrix& tau, int denom,
                                     const EvalConfig& cfg) {
  check_config(cfg);
  if (!is_supported_denom(denom)) {
    throw ThetaError(ErrorCode::kDenominator,
                     "unsupported denominator " + std::to_string(denom));
  }
  const int g = tau.genus();
  const double count = std::pow(double(denom), 2 * g);
  if (count > 1e7) {
    throw ThetaError(ErrorCode::kGuardExceeded, "theta-null grid exceeds 10^7 points");
  }
  const int R = truncation_radius(tau, cfg.tol, cfg.radius_cap);
  std::size_t per_row = 1;
  for (int i = 0; i < g; ++i) per_row *= static_cast<std::size_t>(denom);
  const CMatrix& T = tau.tau();

  std::vector<Complex> roots(denom);
  for (int k = 0; k < denom; ++k) roots[k] = std::exp(2.0 * kPi * kI * double(k) / double(denom));
  auto digits = [&](std::size_t idx) {
    Eigen::VectorXi d(g);
    for (int i = g - 1; i >= 0; --i) {
      d(i) = static_cast<int>(idx % denom);
      idx /= denom;
    }
    return d;
  };
  std::vector<Eigen::VectorXi> residues(per_row);
  for (std::size_t r = 0; r < per_row; ++r) residues[r] = digits(r);

  std::vector<Complex> out(per_row * per_row);
  parallel_for(per_row, [&](std::size_t top) {
    const Eigen::VectorXi t = digits(top);
    const Eigen::VectorXd a = t.cast<double>() / double(denom);
    Eigen::VectorXi centre(g);
    for (int i = 0; i < g; ++i) centre(i) = static_cast<int>(std::lround(-a(i)));
    // Aggregate the Gaussian weights by residue class of u mod N.
    std::vector<Complex> bucket(per_row, Complex{0.0, 0.0});
    Eigen::VectorXd v(g);
    for_each_point(centre, R, [&](const Eigen::VectorXi& u) {
      v = u.cast<double>() + a;
      const Complex quad = v.cast<Complex>().dot(T * v.cast<Complex>());
      std::size_t r = 0;
      for (int i = 0; i < g; ++i) r = r * denom + static_cast<std::size_t>(((u(i) % denom) + denom) % denom);
      bucket[r] += std::exp(kI * kPi * quad);
    });
    for (std::size_t bottom = 0; bottom < per_row; ++bottom) {
      const Eigen::VectorXi k = residues[bottom];
      const Complex lead = std::exp(2.0 * kPi * kI * double(t.dot(k)) /
                                    double(denom * denom));
      Complex s{0.0, 0.0};
      for (std::size_t r = 0; r < per_row; ++r) {
        s += bucket[r] * roots[residues[r].dot(k) % denom];
      }
      out[top * per_row + bottom] = lead * s;
    }
  });
  return out;
}

double even_null_scale(const RiemannMatrix& tau, const EvalConfig& cfg) {
  const auto grid = theta_null_grid(tau, 2, cfg);
  double best = 0.0;
  for (std::uint32_t code = 0; code < grid.size(); ++code) {
    if (is_even(HalfChar(tau.genus(), code))) best = std::max(best, std::abs(grid[code]));
  }
  return best;
}

int vanishing_order_at(const Characteristic& c, const RiemannMatrix& tau,
                       double scale, const VanishThresholds& thresholds,
                       const EvalConfig& cfg) {
  if (std::abs(theta_null(c, tau, cfg)) >= thresholds.value * scale) return 0;
  const CVector grad = theta_gradient(c, CVector::Zero(tau.genus()), tau, cfg);
  return grad.norm() < thresholds.gradient * scale ? 2 : 1;
}

int vanishing_order_at(const Characteristic& c, const RiemannMatrix& tau,
                       const VanishThresholds& thresholds, const EvalConfig& cfg) {
  return vanishing_order_at(c, tau, even_null_scale(tau, cfg), thresholds, cfg);
}

}  // namespace thetalab
