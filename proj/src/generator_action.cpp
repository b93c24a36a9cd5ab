#include "gqms/generator_action.hpp"
#include "gqms/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace gqms {

namespace {

const cplx I(0.0, 1.0);

FirstOrderPoly normalized(cplx c_a, cplx c_ad)
{
    // unit coefficient on the dominant ladder component, ties go to a†
    if (std::abs(c_ad) >= std::abs(c_a) * (1.0 - 1e-12))
        return {c_a / c_ad, 1.0, 0.0};
    return {1.0, c_ad / c_a, 0.0};
}

Eigen::Vector2cd kernel_vector(const Mat2C& N)
{
    const int r = N.row(0).norm() >= N.row(1).norm() ? 0 : 1;
    return {-N(r, 1), N(r, 0)};
}

} // namespace

const char* embedding_name(Embedding e)
{
    return e == Embedding::KMS ? "kms" : "gns";
}

cplx embedded_inner(const WickPoly& p, const WickPoly& q, double s, double beta)
{
    return thermal_expectation(multiply(adjoint(p), modular_transform(q, s, beta)),
                               beta);
}

WickPoly apply_generator(const GaussianModel& m, const WickPoly& p)
{
    // i[H,p] - ½ Σ ([p,L*] L - L* [p,L])
    WickPoly out = I * commutator(m.hamiltonian(), p);
    for (std::size_t l = 0; l < m.kraus.size(); ++l) {
        const WickPoly L = m.noise(l), Ls = m.noise_adjoint(l);
        WickPoly d = multiply(commutator(p, Ls), L) - multiply(Ls, commutator(p, L));
        out -= 0.5 * d;
    }
    return out;
}

WickPoly apply_dual_generator(const GaussianModel& m, const WickPoly& p)
{
    return apply_generator(dual_model(m), p);
}

WickPoly quasi_derivation_residual(const GaussianModel& m, const WickPoly& p,
                                   const WickPoly& q)
{
    return apply_generator(m, multiply(p, q)) - multiply(p, apply_generator(m, q)) -
           multiply(apply_generator(m, p), q);
}

WickPoly sum_action(const GaussianModel& m, Embedding e, const WickPoly& p)
{
    const ModelReport r = require_diagonal(m);
    if (e == Embedding::KMS)
        return apply_dual_generator(m, p) + apply_generator(m, p);

    // Σ (L* [p, L] + [L, p] σ₁(L*))
    WickPoly out;
    for (std::size_t l = 0; l < m.kraus.size(); ++l) {
        const WickPoly L = m.noise(l), Ls = m.noise_adjoint(l);
        out += multiply(Ls, commutator(p, L));
        out += multiply(commutator(L, p), modular_transform(Ls, 1.0, r.beta));
    }
    return out;
}

Mat2C generator_on_first_order(const GaussianModel& m)
{
    const WickPoly la = apply_generator(m, WickPoly::lower());
    const WickPoly lad = apply_generator(m, WickPoly::raise());
    Mat2C A;
    A << la.coeff(0, 1), lad.coeff(0, 1), la.coeff(1, 0), lad.coeff(1, 0);
    return A;
}

BaseMatrices base_matrices(const GaussianModel& m, double s)
{
    if (!(s >= 0.0 && s <= 1.0))
        throw std::invalid_argument("embedding parameter s must lie in [0, 1]");
    const ModelReport r = require_diagonal(m);
    BaseMatrices b;
    b.l_base = generator_on_first_order(m);

    const WickPoly basis[2] = {WickPoly::lower(), WickPoly::raise()};
    auto restricted = [&](Embedding e) {
        Mat2C A;
        for (int j = 0; j < 2; ++j) {
            const WickPoly img = sum_action(m, e, basis[j]);
            A(0, j) = img.coeff(0, 1);
            A(1, j) = img.coeff(1, 0);
        }
        // rescale into the orthonormal basis of embedded a, a†
        const double se = embedding_s(e);
        double nrm[2];
        for (int j = 0; j < 2; ++j)
            nrm[j] = std::sqrt(embedded_inner(basis[j], basis[j], se, r.beta).real());
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                A(i, j) *= nrm[i] / nrm[j];
        return A;
    };
    b.sum_base_kms = restricted(Embedding::KMS);
    b.sum_base_gns = restricted(Embedding::GNS);
    return b;
}

EigenBasis first_order_eigenbasis(const GaussianModel& m)
{
    const Mat2C A = generator_on_first_order(m);
    // same branch as the drift eigenvalues, so λ labels the same root everywhere
    const BaseEigenvalues be = base_eigenvalues(m);
    EigenBasis eb;
    eb.lambda = be.lambda;
    eb.mu = be.mu;

    const bool coincident =
        std::abs(eb.lambda - eb.mu) <= 1e-9 * (1.0 + std::abs(eb.lambda));
    const Mat2C N = A - eb.lambda * Mat2C::Identity();
    const bool rank_one = N.norm() > 1e-9 * (1.0 + A.norm());

    if (coincident && !rank_one) {
        // scalar restriction: any basis diagonalizes it
        eb.X = {0.0, 1.0, 0.0};
        eb.Y = {1.0, 0.0, 0.0};
        eb.mu = eb.lambda;
        return eb;
    }

    if (coincident) {
        eb.defective = true;
        eb.mu = eb.lambda;
        const Eigen::Vector2cd x0 = kernel_vector(N);
        eb.X = normalized(x0(0), x0(1));
        const Eigen::Vector2cd x(eb.X.c_a, eb.X.c_ad);
        // minimum-norm y with N y = -x, so that 𝓛(Y) = λY - X
        const Eigen::Vector2cd y = N.completeOrthogonalDecomposition().solve(-x);
        eb.Y = {y(0), y(1), 0.0};
        return eb;
    }

    const Eigen::Vector2cd xv = kernel_vector(N);
    const Eigen::Vector2cd yv = kernel_vector(A - eb.mu * Mat2C::Identity());
    eb.X = normalized(xv(0), xv(1));
    eb.Y = normalized(yv(0), yv(1));

    Mat2C V;
    V << eb.X.c_a, eb.Y.c_a, eb.X.c_ad, eb.Y.c_ad;
    Eigen::JacobiSVD<Mat2C> svd(V);
    const double smin = svd.singularValues()(1);
    if (!(smin > 0.0) || svd.singularValues()(0) / smin > 1e8)
        throw std::runtime_error(
            "first-order eigenvectors are numerically degenerate (condition > 1e8)");
    return eb;
}

std::vector<Key> xy_labels(int max_total_degree)
{
    std::vector<Key> out;
    for (int d = 0; d <= max_total_degree; ++d)
        for (int n = d; n >= 0; --n)
            out.push_back({n, d - n});
    return out;
}

TriangularRep triangular_representation(const GaussianModel& m, double s,
                                        int max_total_degree)
{
    if (!(s >= 0.0 && s <= 1.0))
        throw std::invalid_argument("embedding parameter s must lie in [0, 1]");
    if (max_total_degree < 0)
        throw std::invalid_argument("max_total_degree must be non-negative");
    require_diagonal(m);

    // The induced generator acts on ρ^{s/2} p ρ^{(1-s)/2} exactly as 𝓛 acts on p,
    // so the matrix does not depend on s.
    const EigenBasis eb = first_order_eigenbasis(m);
    TriangularRep tr;
    tr.X = eb.X;
    tr.Y = eb.Y;
    tr.lambda = eb.lambda;
    tr.mu = eb.mu;
    tr.defective = eb.defective;
    tr.s = s;
    tr.labels = xy_labels(max_total_degree);

    const WickPoly x = eb.X.to_wick(), y = eb.Y.to_wick();
    std::vector<WickPoly> xp{WickPoly::identity()}, yp{WickPoly::identity()};
    for (int k = 1; k <= max_total_degree; ++k) {
        xp.push_back(multiply(xp.back(), x));
        yp.push_back(multiply(yp.back(), y));
    }

    std::map<Key, int> index;
    for (int i = 0; i < int(tr.labels.size()); ++i)
        index[tr.labels[i]] = i;

    const int dim = int(tr.labels.size());
    tr.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        auto [n, mm] = tr.labels[j];
        const WickPoly img = apply_generator(m, multiply(xp[n], yp[mm]));
        for (const auto& [k, c] : rebase_to_xy(img, eb.X, eb.Y)) {
            auto it = index.find(k);
            if (it == index.end())
                throw std::logic_error("generator raised the total degree");
            tr.matrix(it->second, j) = c;
        }
    }
    return tr;
}

} // namespace gqms
