#pragma once

#include "gqms/ccr_algebra.hpp"
#include "gqms/gqms_model.hpp"

#include <cstdint>
#include <random>

namespace gqms {

using Rng = std::mt19937_64;

// Seed from GQMS_SEED when set, otherwise the fallback.
std::uint64_t seed_from_env(std::uint64_t fallback = 20240601);

// Arbitrary parameters; may violate the invariant-state condition.
GaussianModel random_model(Rng& rng);

// Rejection-sampled until the invariant state exists; ζ and κ unconstrained.
GaussianModel random_valid_model(Rng& rng);

// Faithful diagonal invariant state with β > 0.
GaussianModel random_diagonal_model(Rng& rng);

// Random coefficients on every monomial of total degree ≤ max_degree.
WickPoly random_poly(Rng& rng, int max_degree);

} // namespace gqms
