#include "gqms/spectrum.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gqms {

namespace {

constexpr double kZeroTol = 1e-10;

SpectrumPrediction enumerate(cplx lambda, cplx mu, bool defective, int cutoff)
{
    if (cutoff < 0)
        throw std::invalid_argument("lattice cutoff must be non-negative");
    SpectrumPrediction p{lambda, mu, defective, {}};
    auto merge = [&](cplx v, int n, int m, int mult) {
        for (auto& q : p.points)
            if (std::abs(q.value - v) <= kLatticeMergeTol) {
                q.multiplicity += mult;
                return;
            }
        p.points.push_back({v, n, m, mult});
    };
    for (int d = 0; d <= cutoff; ++d) {
        if (defective) {
            merge(double(d) * lambda, d, 0, d + 1);
            continue;
        }
        for (int n = d; n >= 0; --n)
            merge(double(n) * lambda + double(d - n) * mu, n, d - n, 1);
    }
    return p;
}

void require_both_nonzero(double hi, double lo)
{
    if (std::abs(hi) <= kZeroTol && std::abs(lo) <= kZeroTol)
        throw ModelError("both symmetrized base eigenvalues vanish");
}

} // namespace

BaseEigenvalues base_eigenvalues(const GaussianModel& m)
{
    require_valid(m);
    const double g = model_gamma(m);
    const double k2 = std::norm(m.kappa), o2 = m.omega * m.omega;
    double r2 = k2 - o2;
    if (std::abs(r2) <= 4.0 * std::numeric_limits<double>::epsilon() * (k2 + o2))
        r2 = 0.0;
    const cplx r = std::sqrt(cplx(r2, 0.0));
    BaseEigenvalues b;
    b.lambda = -g - r;
    b.mu = -g + r;
    b.defective = r2 == 0.0 && m.omega != 0.0;
    return b;
}

SpectrumPrediction predicted_lattice(cplx lambda, cplx mu, bool defective,
                                     int max_total_degree)
{
    if (!(lambda.real() < 0.0 && mu.real() < 0.0))
        throw std::invalid_argument("base eigenvalues must have negative real part");
    return enumerate(lambda, mu, defective, max_total_degree);
}

SpectrumPrediction adjoint_lattice(const SpectrumPrediction& p)
{
    SpectrumPrediction q = p;
    q.lambda = std::conj(p.lambda);
    q.mu = std::conj(p.mu);
    for (auto& pt : q.points)
        pt.value = std::conj(pt.value);
    return q;
}

std::pair<double, double> sum_base_eigenvalues(const GaussianModel& m, Embedding e)
{
    const BaseMatrices b = base_matrices(m, embedding_s(e));
    const Mat2C& A = e == Embedding::KMS ? b.sum_base_kms : b.sum_base_gns;
    const cplx half_tr = A.trace() / 2.0;
    const cplx r = std::sqrt(half_tr * half_tr - A.determinant());
    double x = (half_tr + r).real(), y = (half_tr - r).real();
    if (x < y)
        std::swap(x, y);
    return {x, y};
}

SpectrumPrediction sum_lattice(const GaussianModel& m, Embedding e, int max_total_degree)
{
    auto [hi, lo] = sum_base_eigenvalues(m, e);
    require_both_nonzero(hi, lo);
    if (std::abs(hi) <= kZeroTol)
        hi = 0.0;
    return enumerate(hi, lo, false, max_total_degree);
}

double spectral_gap(const GaussianModel& m, Embedding e)
{
    const auto [hi, lo] = sum_base_eigenvalues(m, e);
    require_both_nonzero(hi, lo);
    if (std::abs(hi) <= kZeroTol)
        return 0.0;
    return std::max(0.0, -hi / 2.0);
}

GapReport gap_report(const GaussianModel& m)
{
    GapReport g;
    g.gap_kms = spectral_gap(m, Embedding::KMS);
    g.gap_gns = spectral_gap(m, Embedding::GNS);
    g.zero_simple_kms = sum_base_eigenvalues(m, Embedding::KMS).first < -kZeroTol;
    g.zero_simple_gns = sum_base_eigenvalues(m, Embedding::GNS).first < -kZeroTol;
    g.compact_resolvent_kms = g.zero_simple_kms;
    g.compact_resolvent_gns = g.zero_simple_gns;
    g.note_kms = g.gap_kms > 0.0 ? "lattice is the full spectrum" : kNoGapNote;
    g.note_gns = g.gap_gns > 0.0 ? "lattice is the full spectrum" : kNoGapNote;
    if ((g.gap_kms > 0.0) != g.zero_simple_kms || (g.gap_gns > 0.0) != g.zero_simple_gns)
        throw std::logic_error("gap and zero-simplicity disagree");
    return g;
}

} // namespace gqms
