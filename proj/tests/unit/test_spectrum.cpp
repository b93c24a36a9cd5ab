#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gqms/random_models.hpp"
#include "gqms/spectrum.hpp"
#include "../oracles.hpp"

using namespace gqms;

namespace {

const double r2 = std::sqrt(2.0);

int multiplicity_of(const SpectrumPrediction& p, cplx v)
{
    for (const auto& pt : p.points)
        if (std::abs(pt.value - v) < 1e-12)
            return pt.multiplicity;
    return 0;
}

} // namespace

TEST_CASE("base eigenvalues of the reference models")
{
    BaseEigenvalues b = base_eigenvalues(reference::m0());
    CHECK(std::abs(b.lambda - cplx(-0.5, -1.0)) < 1e-15);
    CHECK(std::abs(b.mu - cplx(-0.5, 1.0)) < 1e-15);
    CHECK_FALSE(b.defective);

    b = base_eigenvalues(reference::m1());
    CHECK(std::abs(b.lambda - (-0.5 - r2 / 3.0)) < 1e-15);
    CHECK(std::abs(b.mu - (-0.5 + r2 / 3.0)) < 1e-15);
    CHECK_FALSE(b.defective);

    b = base_eigenvalues(reference::m2());
    CHECK(std::abs(b.lambda + 0.5) < 1e-15);
    CHECK(std::abs(b.mu + 0.5) < 1e-15);
    CHECK(b.defective);
}

TEST_CASE("base eigenvalues agree with dense eigensolver")
{
    Rng rng(seed_from_env());
    for (int trial = 0; trial < 1000; ++trial) {
        const GaussianModel m = random_valid_model(rng);
        const BaseEigenvalues b = base_eigenvalues(m);
        const auto ev = oracle::eig2(drift_matrix(m));
        CHECK(oracle::pair_distance(b.lambda, b.mu, ev[0], ev[1]) < 1e-12);
    }
}

TEST_CASE("base eigenvalues reject invalid models")
{
    GaussianModel bad{0.0, 0.0, 0.0, {{0.0, 1.0}}};
    CHECK_THROWS_AS(base_eigenvalues(bad), ModelError);
}

TEST_CASE("predicted lattice examples")
{
    const SpectrumPrediction p0 = predicted_lattice({-0.5, -1.0}, {-0.5, 1.0}, false, 2);
    CHECK(p0.points.size() == 6);
    for (const auto& pt : p0.points)
        CHECK(pt.multiplicity == 1);
    for (cplx v : {cplx(0), cplx(-0.5, -1), cplx(-0.5, 1), cplx(-1, -2), cplx(-1, 0), cplx(-1, 2)})
        CHECK(multiplicity_of(p0, v) == 1);

    const SpectrumPrediction pc = predicted_lattice(-1.0, -2.0, false, 2);
    CHECK(multiplicity_of(pc, -2.0) == 2);

    const SpectrumPrediction pd = predicted_lattice(-0.5, -0.5, true, 2);
    CHECK(pd.points.size() == 3);
    CHECK(multiplicity_of(pd, 0.0) == 1);
    CHECK(multiplicity_of(pd, -0.5) == 2);
    CHECK(multiplicity_of(pd, -1.0) == 3);

    CHECK_THROWS(predicted_lattice(0.1, -1.0, false, 2));
}

TEST_CASE("lattice points are combinations of the base pair")
{
    Rng rng(seed_from_env());
    for (int trial = 0; trial < 100; ++trial) {
        const GaussianModel m = random_valid_model(rng);
        const BaseEigenvalues b = base_eigenvalues(m);
        const SpectrumPrediction p = predicted_lattice(b.lambda, b.mu, b.defective, 6);
        int total = 0;
        for (const auto& pt : p.points) {
            CHECK(std::abs(pt.value - (double(pt.n) * b.lambda + double(pt.m) * b.mu)) < 1e-12);
            if (pt.n + pt.m >= 1)
                CHECK(pt.value.real() < 0.0);
            total += pt.multiplicity;
        }
        CHECK(total == 28);
    }
}

TEST_CASE("adjoint lattice")
{
    const SpectrumPrediction p0 = predicted_lattice({-0.5, -1.0}, {-0.5, 1.0}, false, 3);
    const SpectrumPrediction q0 = adjoint_lattice(p0);
    for (const auto& pt : q0.points)
        CHECK(multiplicity_of(p0, pt.value) == pt.multiplicity);

    SpectrumPrediction single{{-1.0, 2.0}, {-1.0, 2.0}, false, {{{-1.0, 2.0}, 1, 0, 1}}};
    CHECK(std::abs(adjoint_lattice(single).points[0].value - cplx(-1, -2)) == 0.0);

    const BaseEigenvalues b = base_eigenvalues(reference::m1());
    const SpectrumPrediction p1 = predicted_lattice(b.lambda, b.mu, false, 4);
    const SpectrumPrediction twice = adjoint_lattice(adjoint_lattice(p1));
    for (std::size_t i = 0; i < p1.points.size(); ++i) {
        CHECK(p1.points[i].value == twice.points[i].value);
        CHECK(std::abs(adjoint_lattice(p1).points[i].value - p1.points[i].value) == 0.0);
    }
}

TEST_CASE("sum lattices")
{
    const SpectrumPrediction k0 = sum_lattice(reference::m0(), Embedding::KMS, 2);
    CHECK(multiplicity_of(k0, 0.0) == 1);
    CHECK(multiplicity_of(k0, -1.0) == 2);
    CHECK(multiplicity_of(k0, -2.0) == 3);

    const SpectrumPrediction g1 = sum_lattice(reference::m1(), Embedding::GNS, 3);
    CHECK(multiplicity_of(g1, 0.0) == 4);
    CHECK(multiplicity_of(g1, -2.0) == 3);

    const SpectrumPrediction k1 = sum_lattice(reference::m1(), Embedding::KMS, 3);
    CHECK(multiplicity_of(k1, 0.0) == 1);
    CHECK(std::abs(k1.lambda.real() - (-1.0 + 2.0 * r2 / 3.0)) < 1e-12);
    CHECK(std::abs(k1.mu.real() - (-1.0 - 2.0 * r2 / 3.0)) < 1e-12);
    for (const auto& pt : k1.points)
        if (pt.n + pt.m > 0)
            CHECK(pt.value.real() < 0.0);
}

TEST_CASE("spectral gaps")
{
    CHECK(spectral_gap(reference::m0(), Embedding::KMS) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(spectral_gap(reference::m1(), Embedding::KMS) ==
          doctest::Approx((1.0 - 2.0 * r2 / 3.0) / 2.0).epsilon(1e-12));
    CHECK(spectral_gap(reference::m1(), Embedding::GNS) == 0.0);
    CHECK((1.0 - 2.0 * r2 / 3.0) / 2.0 == doctest::Approx(0.0285955).epsilon(1e-6));
}

TEST_CASE("gap reports")
{
    GapReport g = gap_report(reference::m0());
    CHECK(g.gap_kms == doctest::Approx(0.5));
    CHECK(g.gap_gns == doctest::Approx(0.5));
    CHECK(g.zero_simple_kms);
    CHECK(g.zero_simple_gns);

    g = gap_report(reference::m1());
    CHECK(g.gap_kms > g.gap_gns);
    CHECK_FALSE(g.zero_simple_gns);
    CHECK_FALSE(g.compact_resolvent_gns);
    CHECK(g.note_gns == kNoGapNote);

    GaussianModel doubled = reference::m0();
    doubled.kraus = {{2.0, 0.0}, {0.0, r2}};
    CHECK(gap_report(doubled).gap_kms == doctest::Approx(1.0));
}

TEST_CASE("KMS gap dominates GNS gap")
{
    Rng rng(seed_from_env());
    for (int trial = 0; trial < 100; ++trial) {
        const GaussianModel m = random_diagonal_model(rng);
        const GapReport g = gap_report(m);
        CHECK(g.gap_kms >= g.gap_gns);
        CHECK((g.gap_kms > 0.0) == g.zero_simple_kms);
        CHECK((g.gap_gns > 0.0) == g.zero_simple_gns);
    }
}
