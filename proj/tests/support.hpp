#ifndef THETALAB_TESTS_SUPPORT_HPP
#define THETALAB_TESTS_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "thetalab/characteristic.hpp"
#include "thetalab/theta.hpp"

namespace support {

inline oracle::Half to_half(thetalab::HalfChar m) {
  oracle::Half h = oracle::zero_half(m.genus());
  for (int i = 0; i < m.genus(); ++i) {
    h.top[i] = m.top(i);
    h.bottom[i] = m.bottom(i);
  }
  return h;
}

inline thetalab::HalfChar from_half(const oracle::Half& h) {
  return thetalab::HalfChar::from_bits(h.top, h.bottom);
}

inline Eigen::VectorXd vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// Relative distance |x − y| / max(|x|, |y|, floor).
inline double rel(std::complex<double> x, std::complex<double> y, double floor = 1e-300) {
  return std::abs(x - y) / std::max({std::abs(x), std::abs(y), floor});
}

/// Sorted reals spaced at least `gap` apart in [lo, hi].
inline std::vector<double> random_branch_points(int n, std::mt19937_64& rng, double lo = -4.0,
                                                double hi = 4.0, double gap = 0.3) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (;;) {
    std::vector<double> p(n);
    for (auto& x : p) x = u(rng);
    std::sort(p.begin(), p.end());
    bool ok = true;
    for (int i = 1; i < n; ++i) ok = ok && p[i] - p[i - 1] > gap;
    if (ok) return p;
  }
}

}  // namespace support

#endif
