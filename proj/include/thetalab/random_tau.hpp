#ifndef THETALAB_RANDOM_TAU_HPP
#define THETALAB_RANDOM_TAU_HPP

#include <random>

#include "thetalab/theta.hpp"

namespace thetalab {

/// τ = i(M Mᵗ + g I) + X with M ~ N(0, spread²) and X real symmetric with
/// entries ~ N(0, real_spread²). Always in the Siegel upper half space.
RiemannMatrix random_period_matrix(int genus, std::mt19937_64& rng, double spread = 0.5,
                                   double real_spread = 0.25);

/// Random complex vector with entries ~ N(0, scale²) in both parts.
CVector random_argument(int genus, std::mt19937_64& rng, double scale = 0.3);

}  // namespace thetalab

#endif
