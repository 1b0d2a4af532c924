#include "thetalab/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "thetalab/error.hpp"

namespace thetalab {

namespace {

struct Estimate {
  std::complex<double> value;
  double magnitude;  // same rule applied to |f|, the scale for cancellation
};

Estimate rule(const std::function<std::complex<double>(double)>& f, int n) {
  std::complex<double> sum{0.0, 0.0};
  double mag = 0.0;
  for (int k = 1; k <= n; ++k) {
    const auto v = f(std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * n)));
    sum += v;
    mag += std::abs(v);
  }
  return {sum * (std::numbers::pi / n), mag * (std::numbers::pi / n)};
}

}  // namespace

QuadratureResult gauss_chebyshev(const std::function<std::complex<double>(double)>& f,
                                 double rel_tol, int max_nodes) {
  int n = 8;
  Estimate prev = rule(f, n);
  while (2 * n <= max_nodes) {
    n *= 2;
    const Estimate next = rule(f, n);
    if (std::abs(next.value - prev.value) <= rel_tol * next.magnitude) {
      return {next.value, n};
    }
    prev = next;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "Gauss-Chebyshev quadrature did not converge with %d nodes", max_nodes);
  throw ThetaError(ErrorCode::kQuadrature, buf);
}

}  // namespace thetalab
