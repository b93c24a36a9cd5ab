#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gqms/random_models.hpp"
#include "gqms/standardization.hpp"
#include "../oracles.hpp"

using namespace gqms;

namespace {

double mat_diff(const Mat2R& A, const Mat2R& B)
{
    return (A - B).cwiseAbs().maxCoeff();
}

Mat2R rotation(double th)
{
    Mat2R R;
    R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    return R;
}

} // namespace

TEST_CASE("stationary state of M0")
{
    const StationaryGaussian sg = stationary_gaussian(reference::m0());
    CHECK(std::abs(sg.omega) < 1e-15);
    CHECK(mat_diff(sg.S, 3.0 * Mat2R::Identity()) < 1e-14);
    CHECK(sg.nu == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(mat_diff(sg.M, Mat2R::Identity()) < 1e-14);
    CHECK(std::abs(sg.beta - std::log(2.0)) < 1e-12);
}

TEST_CASE("displaced M0 has mean one")
{
    GaussianModel m = reference::m0();
    m.zeta = cplx(-0.5, -1.0);
    const StationaryGaussian sg = stationary_gaussian(m);
    CHECK(std::abs(sg.omega - 1.0) < 1e-14);
}

TEST_CASE("Lyapunov residual on random valid models")
{
    Rng rng(seed_from_env());
    for (int trial = 0; trial < 300; ++trial) {
        const GaussianModel m = random_valid_model(rng);
        const StationaryGaussian sg = stationary_gaussian(m);
        const Mat2R Z = drift_matrix(m), C = diffusion_matrix(m);
        const double scale = 1.0 + C.norm() + Z.norm() * sg.S.norm();
        CHECK((Z.transpose() * sg.S + sg.S * Z + C).norm() <= 1e-12 * scale);
        CHECK((Z.transpose() * to_real(sg.omega) - to_real(m.zeta)).norm() < 1e-10 * scale);
        // S must be the positive definite solution
        CHECK(sg.S(0, 0) > 0.0);
        CHECK(sg.S.determinant() > 0.0);
        CHECK(sg.nu >= 1.0 - 1e-12);
    }
}

TEST_CASE("Williamson examples")
{
    WilliamsonForm w = williamson(3.0 * Mat2R::Identity());
    CHECK(w.nu == doctest::Approx(3.0));
    CHECK(mat_diff(w.M, Mat2R::Identity()) < 1e-15);

    Mat2R S;
    S << 4.0, 0.0, 0.0, 1.0;
    w = williamson(S);
    CHECK(w.nu == doctest::Approx(2.0));
    CHECK(mat_diff(w.G.transpose() * (w.nu * w.G) , S) < 1e-14);
    CHECK(w.M.determinant() == doctest::Approx(1.0));
    // lower-triangular with positive diagonal
    CHECK(w.M(0, 1) == 0.0);
    CHECK(w.M(0, 0) > 0.0);
    CHECK(w.M(1, 1) > 0.0);

    Rng rng(seed_from_env());
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 50; ++trial) {
        const Mat2R R = rotation(u(rng) * 3.0);
        Mat2R D = Mat2R::Zero();
        const double r = u(rng);
        D(0, 0) = std::exp(r);
        D(1, 1) = std::exp(-r);
        const Mat2R P = R.transpose() * D * R;
        CHECK(williamson(P).nu == doctest::Approx(1.0).epsilon(1e-12));
    }

    Mat2R bad;
    bad << 1.0, 2.0, 2.0, 1.0;
    CHECK_THROWS_AS(williamson(bad), std::invalid_argument);
}

TEST_CASE("Bogoliubov parameters")
{
    auto [a1, a2] = bogoliubov_params(Mat2R::Identity());
    CHECK(std::abs(a1 - 1.0) == 0.0);
    CHECK(std::abs(a2) == 0.0);

    const double r = 0.7;
    Mat2R D = Mat2R::Zero();
    D(0, 0) = std::exp(r);
    D(1, 1) = std::exp(-r);
    auto [b1, b2] = bogoliubov_params(D);
    CHECK(std::abs(b1 - std::cosh(r)) < 1e-15);
    CHECK(std::abs(b2 - std::sinh(r)) < 1e-15);

    const double th = 0.4;
    auto [c1, c2] = bogoliubov_params(rotation(th));
    CHECK(std::abs(c1 - std::polar(1.0, th)) < 1e-15);
    CHECK(std::abs(c2) < 1e-16);
    // identification round trip
    CHECK(mat_diff(identify_real_linear(c1, c2), rotation(th)) < 1e-15);

    CHECK_THROWS_AS(bogoliubov_params(2.0 * Mat2R::Identity()), std::invalid_argument);
}

TEST_CASE("conjugated ladder")
{
    StationaryGaussian sg;
    sg.omega = 1.0;
    auto [at, adt] = conjugated_ladder(sg);
    CHECK(max_abs_diff(at.to_wick(), WickPoly::lower() - WickPoly::identity()) < 1e-15);
    CHECK(max_abs_diff(adt.to_wick(), WickPoly::raise() - WickPoly::identity()) < 1e-15);

    const double r = 0.3;
    sg.omega = 0.0;
    sg.m1 = std::cosh(r);
    sg.m2 = std::sinh(r);
    std::tie(at, adt) = conjugated_ladder(sg);
    CHECK(max_abs_diff(at.to_wick(),
                       std::cosh(r) * WickPoly::lower() - std::sinh(r) * WickPoly::raise()) <
          1e-15);

    Rng rng(seed_from_env());
    for (int trial = 0; trial < 50; ++trial) {
        const StationaryGaussian g = stationary_gaussian(random_valid_model(rng));
        auto [x, y] = conjugated_ladder(g);
        CHECK(max_abs_diff(commutator(x.to_wick(), y.to_wick()), WickPoly::identity()) < 1e-12);
        CHECK(max_abs_diff(adjoint(x.to_wick()), y.to_wick()) < 1e-12);
    }
}

TEST_CASE("standardized drifts")
{
    auto [zs, zd] = standardized_drifts(reference::m0());
    const Mat2R Z = drift_matrix(reference::m0());
    CHECK(mat_diff(zs, Z) < 1e-14);
    CHECK(mat_diff(zd, Z.transpose()) < 1e-14);

    Rng rng(seed_from_env());
    for (int trial = 0; trial < 200; ++trial) {
        const GaussianModel m = random_valid_model(rng);
        const Mat2R Zm = drift_matrix(m);
        auto [s, d] = standardized_drifts(m);
        const auto ez = oracle::eig2(Zm), es = oracle::eig2(s), ed = oracle::eig2(d);
        CHECK(oracle::pair_distance(ez[0], ez[1], es[0], es[1]) < 1e-10);
        CHECK(oracle::pair_distance(std::conj(ez[0]), std::conj(ez[1]), ed[0], ed[1]) < 1e-10);

        // the standardized covariance is ν·I
        const StationaryGaussian sg = stationary_gaussian(m);
        const Mat2R Cs = sg.M.transpose() * diffusion_matrix(m) * sg.M;
        CHECK((s.transpose() * sg.nu + sg.nu * s + Cs).norm() < 1e-10 * (1 + Cs.norm()));
    }
}

TEST_CASE("diagonal models round-trip")
{
    Rng rng(seed_from_env());
    for (int trial = 0; trial < 200; ++trial) {
        const GaussianModel m = random_diagonal_model(rng);
        const StationaryGaussian sg = stationary_gaussian(m);
        CHECK(std::abs(sg.omega) < 1e-12);
        CHECK(mat_diff(sg.M, Mat2R::Identity()) < 1e-12);
        CHECK(std::abs(sg.beta - validate(m).beta) < 1e-12 * (1 + validate(m).beta));
    }
}

TEST_CASE("non-diagonal standardization example")
{
    // squeezed single-pair model: S anisotropic, M non-trivial
    GaussianModel m{0.0, cplx(0.0, 0.2), 0.0, {{1.5, 0.5}}};
    REQUIRE(validate(m).invariant_exists);
    REQUIRE_FALSE(validate(m).diagonal);
    const StationaryGaussian sg = stationary_gaussian(m);
    CHECK(mat_diff(sg.M, Mat2R::Identity()) > 1e-3);
    CHECK(std::abs(std::norm(sg.m1) - std::norm(sg.m2) - 1.0) < 1e-12);
    CHECK(mat_diff(sg.nu * sg.G.transpose() * sg.G, sg.S) < 1e-12);
}
