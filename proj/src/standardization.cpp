#include "gqms/standardization.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gqms {

Mat2R solve_lyapunov(const Mat2R& Z, const Mat2R& C)
{
    // unknowns (S00, S01, S11); equations from entries (0,0), (0,1), (1,1)
    Eigen::Matrix3d A;
    A << 2 * Z(0, 0), 2 * Z(1, 0), 0.0,
        Z(0, 1), Z(0, 0) + Z(1, 1), Z(1, 0),
        0.0, 2 * Z(0, 1), 2 * Z(1, 1);
    const Eigen::Vector3d b(-C(0, 0), -C(0, 1), -C(1, 1));
    Eigen::FullPivLU<Eigen::Matrix3d> lu(A);
    const double rc = lu.rcond();
    if (!(rc > 1e-13))
        throw std::runtime_error("Lyapunov system is numerically singular");
    const Eigen::Vector3d x = lu.solve(b);
    Mat2R S;
    S << x(0), x(1), x(1), x(2);
    return S;
}

WilliamsonForm williamson(const Mat2R& S)
{
    if (std::abs(S(0, 1) - S(1, 0)) > 1e-12 * (1.0 + S.norm()))
        throw std::invalid_argument("williamson: matrix is not symmetric");
    if (!(S(0, 0) > 0.0 && S.determinant() > 0.0))
        throw std::invalid_argument("williamson: matrix is not positive definite");
    WilliamsonForm w;
    w.nu = std::sqrt(S.determinant());
    const Mat2R P = S / w.nu; // det P = 1
    // lower-triangular G with Gᵀ G = P, so S = Gᵀ diag(ν, ν) G
    const double g22 = std::sqrt(P(1, 1));
    const double g21 = P(0, 1) / g22;
    const double g11 = std::sqrt(P(0, 0) - g21 * g21);
    w.G << g11, 0.0, g21, g22;
    w.M << 1.0 / g11, 0.0, -g21 / (g11 * g22), 1.0 / g22;
    return w;
}

std::pair<cplx, cplx> bogoliubov_params(const Mat2R& M)
{
    if (std::abs(M.determinant() - 1.0) > 1e-10)
        throw std::invalid_argument("bogoliubov_params: matrix is not symplectic");
    return extract_real_linear(M);
}

double beta_from_nu(double nu)
{
    if (!(nu > 1.0))
        return std::numeric_limits<double>::infinity();
    return std::log((nu + 1.0) / (nu - 1.0));
}

StationaryGaussian stationary_gaussian(const GaussianModel& m)
{
    require_valid(m);
    const Mat2R Z = drift_matrix(m), C = diffusion_matrix(m);
    StationaryGaussian sg;
    const Vec2R w = Z.transpose().fullPivLu().solve(to_real(m.zeta));
    sg.omega = to_complex(w);
    sg.S = solve_lyapunov(Z, C);
    const WilliamsonForm wf = williamson(sg.S);
    sg.nu = wf.nu;
    sg.M = wf.M;
    sg.G = wf.G;
    std::tie(sg.m1, sg.m2) = bogoliubov_params(sg.M);
    sg.beta = beta_from_nu(sg.nu);
    return sg;
}

std::pair<FirstOrderPoly, FirstOrderPoly> conjugated_ladder(const StationaryGaussian& sg)
{
    const cplx m1 = sg.m1, m2 = sg.m2, w = sg.omega;
    FirstOrderPoly at{std::conj(m1), -m2, m2 * std::conj(w) - std::conj(m1) * w};
    FirstOrderPoly adt{-std::conj(m2), m1, -m1 * std::conj(w) + std::conj(m2) * w};
    return {at, adt};
}

std::pair<Mat2R, Mat2R> standardized_drifts(const GaussianModel& m)
{
    const StationaryGaussian sg = stationary_gaussian(m);
    const Mat2R Z = drift_matrix(m);
    const Mat2R Zs = sg.G * Z * sg.M;
    const Mat2R MMt = sg.M * sg.M.transpose();
    const Mat2R Zd = MMt * Z.transpose() * MMt.inverse();
    return {Zs, Zd};
}

} // namespace gqms
