#ifndef THETALAB_QUADRATURE_HPP
#define THETALAB_QUADRATURE_HPP

#include <complex>
#include <functional>

namespace thetalab {

struct QuadratureResult {
  std::complex<double> value;
  int nodes = 0;
};

/// ∫_{−1}^{1} f(t) / sqrt(1 − t²) dt by Gauss–Chebyshev rules, doubling the
/// node count from 8 until two successive estimates agree to rel_tol.
/// Throws kQuadrature when max_nodes is reached first.
QuadratureResult gauss_chebyshev(const std::function<std::complex<double>(double)>& f,
                                 double rel_tol = 1e-11, int max_nodes = 1 << 14);

}  // namespace thetalab

#endif
