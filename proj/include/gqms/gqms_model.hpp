#pragma once

#include "gqms/ccr_algebra.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <utility>
#include <vector>

namespace gqms {

using Mat2R = Eigen::Matrix2d;
using Mat2C = Eigen::Matrix2cd;
using Vec2R = Eigen::Vector2d;

class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// L = conj(v)·a + u·a†
struct KrausPair {
    cplx v = 0.0;
    cplx u = 0.0;
};

struct GaussianModel {
    double omega = 0.0;
    cplx kappa = 0.0;
    cplx zeta = 0.0;
    std::vector<KrausPair> kraus;

    // H = Ω a†a + κ/2 a†² + κ̄/2 a² + ζ/2 a† + ζ̄/2 a
    WickPoly hamiltonian() const;
    WickPoly noise(std::size_t l) const;
    WickPoly noise_adjoint(std::size_t l) const;
};

struct ModelReport {
    double gamma = 0.0;
    double beta = 0.0; // +inf when every u vanishes
    bool invariant_exists = false;
    bool faithful_thermal = false;
    bool diagonal = false;
    bool stable = false;
};

double model_gamma(const GaussianModel& m);
double model_beta(const GaussianModel& m);

ModelReport validate(const GaussianModel& m);

Mat2R drift_matrix(const GaussianModel& m);
Mat2R diffusion_matrix(const GaussianModel& m);

// Real 2×2 matrix of z ↦ s1·z + s2·z̄ acting on (Re z, Im z).
Mat2R identify_real_linear(cplx s1, cplx s2);
std::pair<cplx, cplx> extract_real_linear(const Mat2R& S);

inline Vec2R to_real(cplx z) { return {z.real(), z.imag()}; }
inline cplx to_complex(const Vec2R& v) { return {v(0), v(1)}; }

GaussianModel dual_model(const GaussianModel& m);

// Throws ModelError unless the invariant state exists.
ModelReport require_valid(const GaussianModel& m);
// Additionally requires a faithful diagonal invariant state.
ModelReport require_diagonal(const GaussianModel& m);

std::string invariant_condition_text();

namespace reference {
GaussianModel m0();
GaussianModel m1();
GaussianModel m2();
} // namespace reference

} // namespace gqms
