#pragma once

#include "gqms/ccr_algebra.hpp"
#include "gqms/gqms_model.hpp"

#include <utility>

namespace gqms {

struct StationaryGaussian {
    cplx omega = 0.0; // mean
    Mat2R S = Mat2R::Identity();
    double nu = 1.0;
    Mat2R M = Mat2R::Identity();
    Mat2R G = Mat2R::Identity(); // M⁻¹
    cplx m1 = 1.0, m2 = 0.0;
    double beta = 0.0; // from ν = coth(β/2); +inf when ν ≤ 1
};

struct WilliamsonForm {
    double nu = 1.0;
    Mat2R M = Mat2R::Identity();
    Mat2R G = Mat2R::Identity();
};

// Solves Zᵀ S + S Z + C = 0 for symmetric S.
Mat2R solve_lyapunov(const Mat2R& Z, const Mat2R& C);

StationaryGaussian stationary_gaussian(const GaussianModel& m);
WilliamsonForm williamson(const Mat2R& S);
std::pair<cplx, cplx> bogoliubov_params(const Mat2R& M);
std::pair<FirstOrderPoly, FirstOrderPoly> conjugated_ladder(const StationaryGaussian& sg);
std::pair<Mat2R, Mat2R> standardized_drifts(const GaussianModel& m);

double beta_from_nu(double nu);

} // namespace gqms
