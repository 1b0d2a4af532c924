#include "thetalab/random_tau.hpp"

#include "thetalab/error.hpp"

namespace thetalab {

RiemannMatrix random_period_matrix(int genus, std::mt19937_64& rng, double spread,
                                   double real_spread) {
  if (genus < 1) throw ThetaError(ErrorCode::kConstraint, "genus must be at least 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd M(genus, genus), X(genus, genus);
  for (int i = 0; i < genus; ++i) {
    for (int j = 0; j < genus; ++j) {
      M(i, j) = spread * normal(rng);
      X(i, j) = real_spread * normal(rng);
    }
  }
  const Eigen::MatrixXd Y = M * M.transpose() + genus * Eigen::MatrixXd::Identity(genus, genus);
  const Eigen::MatrixXd R = 0.5 * (X + X.transpose());
  CMatrix tau(genus, genus);
  for (int i = 0; i < genus; ++i) {
    for (int j = 0; j < genus; ++j) tau(i, j) = Complex(R(i, j), Y(i, j));
  }
  return validate_period_matrix(tau);
}

CVector random_argument(int genus, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  CVector z(genus);
  for (int i = 0; i < genus; ++i) z(i) = Complex(normal(rng), normal(rng));
  return z;
}

}  // namespace thetalab
