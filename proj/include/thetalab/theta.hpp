#ifndef THETALAB_THETA_HPP
#define THETALAB_THETA_HPP

// Riemann theta functions with rational characteristics,
//
//   θ[a;b](z, τ) = Σ_{u ∈ Z^g} exp(πi (u+a)ᵗτ(u+a) + 2πi (u+a)ᵗ(z+b)),
//
// evaluated as truncated lattice sums with a certified Gaussian tail bound.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "thetalab/characteristic.hpp"

namespace thetalab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// A validated point of the Siegel upper half space.
class RiemannMatrix {
 public:
  int genus() const noexcept { return static_cast<int>(tau_.rows()); }
  const CMatrix& tau() const noexcept { return tau_; }
  const Eigen::MatrixXd& imag() const noexcept { return imag_; }
  const Eigen::MatrixXd& imag_inverse() const noexcept { return imag_inv_; }
  /// Smallest eigenvalue of Im τ.
  double lambda_min() const noexcept { return lambda_min_; }

 private:
  friend RiemannMatrix validate_period_matrix(const CMatrix&, double);
  CMatrix tau_;
  Eigen::MatrixXd imag_;
  Eigen::MatrixXd imag_inv_;
  double lambda_min_ = 0.0;
};

/// Checks symmetry (entrywise, relative to max(1, max |τ_ij|)) and positive
/// definiteness of Im τ. Never symmetrizes.
RiemannMatrix validate_period_matrix(const CMatrix& raw, double sym_tol = 1e-12);

struct EvalConfig {
  /// Tail-bound target, relative to the Gaussian envelope
  /// exp(π Im(z)ᵗ (Im τ)⁻¹ Im(z)); absolute when z is real.
  double tol = 1e-12;
  int radius_cap = 60;
};

inline constexpr double kTolFloor = 1e-13;

struct ThetaSum {
  Complex value;
  int radius = 0;
};

/// Smallest box half-width R whose certified tail is below tol. `spread` is
/// zero for values; for gradients it is the distance of the summation centre
/// from the origin, which enters the 2π|u+a| weight.
int truncation_radius(const RiemannMatrix& tau, double tol, int radius_cap,
                      bool gradient = false, double spread = 0.0);

/// θ with raw real shift vectors a, b. A positive radius overrides the
/// certified choice (used to check truncation soundness).
ThetaSum theta_sum(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                   const CVector& z, const RiemannMatrix& tau,
                   const EvalConfig& cfg = {}, int radius = 0);

Complex theta_shifted(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                      const CVector& z, const RiemannMatrix& tau,
                      const EvalConfig& cfg = {});
Complex theta_base(const CVector& z, const RiemannMatrix& tau,
                   const EvalConfig& cfg = {});
Complex theta_char(const Characteristic& c, const CVector& z,
                   const RiemannMatrix& tau, const EvalConfig& cfg = {});
Complex theta_char(const HalfChar& c, const CVector& z,
                   const RiemannMatrix& tau, const EvalConfig& cfg = {});
Complex theta_null(const Characteristic& c, const RiemannMatrix& tau,
                   const EvalConfig& cfg = {});
Complex theta_null(const HalfChar& c, const RiemannMatrix& tau,
                   const EvalConfig& cfg = {});

/// ∂θ[a;b]/∂z_j, summed term by term with the same truncation policy.
CVector theta_gradient_shifted(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                               const CVector& z, const RiemannMatrix& tau,
                               const EvalConfig& cfg = {});
CVector theta_gradient(const Characteristic& c, const CVector& z,
                       const RiemannMatrix& tau, const EvalConfig& cfg = {});

/// All theta-nulls of denominator N, indexed like enumerate_chars(g, N).
std::vector<Complex> theta_null_grid(const RiemannMatrix& tau, int denom,
                                     const EvalConfig& cfg = {});

/// max |θ[m](0)| over even half characteristics m.
double even_null_scale(const RiemannMatrix& tau, const EvalConfig& cfg = {});

struct VanishThresholds {
  double value = 1e-6;     // |θ| < value · scale counts as zero
  double gradient = 1e-5;  // ‖∇θ‖ < gradient · scale counts as zero
};

/// 0, 1, or 2 (meaning at least 2) for the theta-null of c at τ.
int vanishing_order_at(const Characteristic& c, const RiemannMatrix& tau,
                       const VanishThresholds& thresholds = {},
                       const EvalConfig& cfg = {});
/// Same, with a precomputed scale.
int vanishing_order_at(const Characteristic& c, const RiemannMatrix& tau,
                       double scale, const VanishThresholds& thresholds,
                       const EvalConfig& cfg = {});

}  // namespace thetalab

#endif
