#include "gqms/fock_numerics.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace gqms {

namespace {

const cplx I(0.0, 1.0);

struct Noise {
    MatrixXcd L, Ld;
};

MatrixXcd hamiltonian_mat(const TruncatedRep& rep, const GaussianModel& m)
{
    return rep.materialize(m.hamiltonian());
}

std::vector<Noise> noise_mats(const TruncatedRep& rep, const GaussianModel& m)
{
    std::vector<Noise> out;
    for (std::size_t l = 0; l < m.kraus.size(); ++l) {
        MatrixXcd L = rep.materialize(m.noise(l));
        MatrixXcd Ld = L.adjoint();
        out.push_back({std::move(L), std::move(Ld)});
    }
    return out;
}

// Dense eigensolvers (LAPACK).

void eig_general(MatrixXcd& A, VectorXcd& w, MatrixXcd& vr, bool vectors)
{
    const int n = int(A.rows());
    w.resize(n);
    if (vectors)
        vr.resize(n, n);
    const lapack_int info = LAPACKE_zgeev(
        LAPACK_COL_MAJOR, 'N', vectors ? 'V' : 'N', n, A.data(), n, w.data(), nullptr,
        1, vectors ? vr.data() : nullptr, vectors ? n : 1);
    if (info != 0)
        throw std::runtime_error("zgeev failed with info = " + std::to_string(info));
}

void eig_hermitian(MatrixXcd& A, Eigen::VectorXd& w)
{
    const int n = int(A.rows());
    w.resize(n);
    const lapack_int info =
        LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, A.data(), n, w.data());
    if (info != 0)
        throw std::runtime_error("zheevd failed with info = " + std::to_string(info));
}

// Connected components of the sparsity graph; the operator is block diagonal
// after permuting each component together.
std::vector<std::vector<int>> blocks_of(const MatrixXcd& S)
{
    const int dim = int(S.rows());
    std::vector<int> parent(dim);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i)
            if (S(i, j) != 0.0) {
                int a = find(i), b = find(j);
                if (a != b)
                    parent[std::max(a, b)] = std::min(a, b);
            }
    std::vector<std::vector<int>> out;
    std::vector<int> slot(dim, -1);
    for (int i = 0; i < dim; ++i) {
        int r = find(i);
        if (slot[r] < 0) {
            slot[r] = int(out.size());
            out.emplace_back();
        }
        out[slot[r]].push_back(i);
    }
    return out;
}

struct Pair {
    cplx value;
    int block;
    int column;
    double edge;
};

bool before(EigOrder order, cplx x, cplx y)
{
    if (order == EigOrder::SmallestMagnitude) {
        return std::make_tuple(std::abs(x), std::arg(x)) <
               std::make_tuple(std::abs(y), std::arg(y));
    }
    const double rx = std::round(x.real() * 1e9), ry = std::round(y.real() * 1e9);
    return std::make_tuple(-rx, std::abs(x.imag()), x.imag()) <
           std::make_tuple(-ry, std::abs(y.imag()), y.imag());
}

} // namespace

TruncatedRep::TruncatedRep(int n_max, double beta) : n_(n_max), beta_(beta)
{
    if (n_max < 4)
        throw std::invalid_argument("n_max must be at least 4");
    a_ = MatrixXcd::Zero(n_, n_);
    for (int j = 1; j < n_; ++j)
        a_(j - 1, j) = std::sqrt(double(j));
    ad_ = a_.adjoint();
}

Eigen::VectorXd TruncatedRep::rho_pow_diag(double s) const
{
    if (!(std::isfinite(beta_) && beta_ > 0.0))
        throw std::invalid_argument("thermal weights need a finite positive beta");
    Eigen::VectorXd d(n_);
    const double norm = std::pow(-std::expm1(-beta_), s);
    for (int j = 0; j < n_; ++j)
        d(j) = norm * std::exp(-beta_ * s * j);
    return d;
}

MatrixXcd TruncatedRep::rho_pow(double s) const
{
    return rho_pow_diag(s).cast<cplx>().asDiagonal();
}

MatrixXcd TruncatedRep::materialize(const WickPoly& p) const
{
    int nmax = 0, mmax = 0;
    for (const auto& [k, c] : p.terms()) {
        nmax = std::max(nmax, k.first);
        mmax = std::max(mmax, k.second);
    }
    std::vector<MatrixXcd> adp{MatrixXcd::Identity(n_, n_)}, ap{MatrixXcd::Identity(n_, n_)};
    for (int k = 1; k <= nmax; ++k)
        adp.push_back(adp.back() * ad_);
    for (int k = 1; k <= mmax; ++k)
        ap.push_back(ap.back() * a_);
    MatrixXcd out = MatrixXcd::Zero(n_, n_);
    for (const auto& [k, c] : p.terms())
        out += c * adp[k.first] * ap[k.second];
    return out;
}

TruncatedRep build_rep(const GaussianModel& m, int n_max)
{
    const ModelReport r = require_diagonal(m);
    return TruncatedRep(n_max, r.beta);
}

VectorXcd vectorize(const MatrixXcd& V)
{
    return Eigen::Map<const VectorXcd>(V.data(), V.size());
}

MatrixXcd unvectorize(const VectorXcd& v, int n)
{
    return Eigen::Map<const MatrixXcd>(v.data(), n, n);
}

MatrixXcd SuperOp::apply(const MatrixXcd& V) const
{
    return unvectorize(matrix * vectorize(V), n);
}

MatrixXcd apply_gksl(const TruncatedRep& rep, const GaussianModel& m, const MatrixXcd& V)
{
    const MatrixXcd H = hamiltonian_mat(rep, m);
    MatrixXcd out = I * (H * V - V * H);
    for (const auto& [L, Ld] : noise_mats(rep, m))
        out -= 0.5 * (Ld * L * V - 2.0 * Ld * V * L + V * Ld * L);
    return out;
}

MatrixXcd apply_predual(const TruncatedRep& rep, const GaussianModel& m,
                        const MatrixXcd& V)
{
    const MatrixXcd H = hamiltonian_mat(rep, m);
    MatrixXcd out = -I * (H * V - V * H);
    for (const auto& [L, Ld] : noise_mats(rep, m))
        out -= 0.5 * (Ld * L * V - 2.0 * L * V * Ld + V * Ld * L);
    return out;
}

SuperOp gksl_superop(const TruncatedRep& rep, const GaussianModel& m)
{
    using Eigen::kroneckerProduct;
    const int n = rep.n_max();
    const MatrixXcd Id = MatrixXcd::Identity(n, n);
    const MatrixXcd H = hamiltonian_mat(rep, m);
    // vec(A X B) = (Bᵀ ⊗ A) vec(X)
    MatrixXcd S = I * (kroneckerProduct(Id, H) - kroneckerProduct(H.transpose(), Id)).eval();
    for (const auto& [L, Ld] : noise_mats(rep, m)) {
        const MatrixXcd K = Ld * L;
        S -= 0.5 * (kroneckerProduct(Id, K) - 2.0 * kroneckerProduct(L.transpose(), Ld) +
                    kroneckerProduct(K.transpose(), Id))
                       .eval();
    }
    return {n, std::move(S)};
}

SuperOp predual_superop(const TruncatedRep& rep, const GaussianModel& m)
{
    using Eigen::kroneckerProduct;
    const int n = rep.n_max();
    const MatrixXcd Id = MatrixXcd::Identity(n, n);
    const MatrixXcd H = hamiltonian_mat(rep, m);
    MatrixXcd S = -I * (kroneckerProduct(Id, H) - kroneckerProduct(H.transpose(), Id)).eval();
    for (const auto& [L, Ld] : noise_mats(rep, m)) {
        const MatrixXcd K = Ld * L;
        S -= 0.5 * (kroneckerProduct(Id, K) - 2.0 * kroneckerProduct(Ld.transpose(), L) +
                    kroneckerProduct(K.transpose(), Id))
                       .eval();
    }
    return {n, std::move(S)};
}

SuperOp induced_superop(const TruncatedRep& rep, const GaussianModel& m, double s)
{
    if (!(s >= 0.0 && s <= 1.0))
        throw std::invalid_argument("embedding parameter s must lie in [0, 1]");
    SuperOp G = gksl_superop(rep, m);
    const int n = rep.n_max();
    const Eigen::VectorXd left = rep.rho_pow_diag(s / 2.0);
    const Eigen::VectorXd right = rep.rho_pow_diag((1.0 - s) / 2.0);
    Eigen::VectorXd d(n * n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            d(k * n + j) = left(j) * right(k);
    for (int c = 0; c < n * n; ++c)
        for (int r = 0; r < n * n; ++r)
            G.matrix(r, c) *= d(r) / d(c);
    return G;
}

SuperOp adjoint_superop(const TruncatedRep& rep, const GaussianModel& m, double s)
{
    return induced_superop(rep, dual_model(m), 1.0 - s);
}

SuperOp sum_superop(const TruncatedRep& rep, const GaussianModel& m, Embedding e)
{
    const double s = embedding_s(e);
    SuperOp S = induced_superop(rep, m, s);
    S.matrix += adjoint_superop(rep, m, s).matrix;
    return S;
}

std::vector<cplx> all_eigenvalues(const SuperOp& sop)
{
    std::vector<cplx> out;
    for (const auto& blk : blocks_of(sop.matrix)) {
        const int b = int(blk.size());
        MatrixXcd A(b, b);
        for (int j = 0; j < b; ++j)
            for (int i = 0; i < b; ++i)
                A(i, j) = sop.matrix(blk[i], blk[j]);
        VectorXcd w;
        MatrixXcd vr;
        eig_general(A, w, vr, false);
        out.insert(out.end(), w.data(), w.data() + b);
    }
    return out;
}

std::vector<EigenEstimate> numeric_eigs(const SuperOp& sop, int k, const EigOptions& opt)
{
    const int n = sop.n, dim = n * n;
    if (k <= 0)
        throw std::invalid_argument("k must be positive");
    if (sop.matrix.rows() != dim || sop.matrix.cols() != dim)
        throw std::invalid_argument("superoperator has inconsistent dimension");
    if (dim > 4096)
        throw std::invalid_argument("dense path limited to n_max <= 64");

    std::vector<char> edge(dim, 0);
    for (int kk = 0; kk < n; ++kk)
        for (int j = 0; j < n; ++j)
            edge[kk * n + j] = (j >= n - opt.edge_width || kk >= n - opt.edge_width);

    MatrixXcd S = sop.matrix;
    if (opt.hermitian) {
        const double skew = (S - S.adjoint()).norm();
        if (skew > 1e-8 * (1.0 + S.norm()))
            throw std::runtime_error("superoperator is not Hermitian");
        S = (0.5 * (S + S.adjoint())).eval();
    }

    const auto blocks = blocks_of(S);
    std::vector<MatrixXcd> vecs(blocks.size());
    std::vector<Pair> pairs;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const auto& blk = blocks[bi];
        const int b = int(blk.size());
        MatrixXcd A(b, b);
        for (int j = 0; j < b; ++j)
            for (int i = 0; i < b; ++i)
                A(i, j) = S(blk[i], blk[j]);
        VectorXcd w;
        if (opt.hermitian) {
            Eigen::VectorXd wr;
            eig_hermitian(A, wr);
            w = wr.cast<cplx>();
            vecs[bi] = std::move(A);
        } else {
            eig_general(A, w, vecs[bi], true);
        }
        for (int c = 0; c < b; ++c) {
            const auto v = vecs[bi].col(c);
            double tot = v.squaredNorm(), e = 0.0;
            for (int i = 0; i < b; ++i)
                if (edge[blk[i]])
                    e += std::norm(v(i));
            pairs.push_back({w(c), int(bi), c, tot > 0.0 ? e / tot : 1.0});
        }
    }

    // Degenerate clusters: an arbitrary eigenbasis of a multiple eigenvalue can
    // mix interior and boundary modes, so count the interior directions of the
    // whole eigenspace instead of testing individual vectors.
    const int np = int(pairs.size());
    std::vector<int> cluster(np, -1);
    int ncl = 0;
    for (int i = 0; i < np; ++i) {
        if (cluster[i] >= 0)
            continue;
        cluster[i] = ncl;
        const double tol = 1e-8 * (1.0 + std::abs(pairs[i].value));
        for (int j = i + 1; j < np; ++j)
            if (cluster[j] < 0 && std::abs(pairs[j].value - pairs[i].value) <= tol)
                cluster[j] = ncl;
        ++ncl;
    }
    std::vector<std::vector<int>> members(ncl);
    for (int i = 0; i < np; ++i)
        members[cluster[i]].push_back(i);

    std::vector<EigenEstimate> est(np);
    for (int i = 0; i < np; ++i)
        est[i] = {pairs[i].value, pairs[i].edge, pairs[i].edge < opt.edge_tol};

    for (const auto& mem : members) {
        if (mem.size() < 2)
            continue;
        MatrixXcd V = MatrixXcd::Zero(dim, Eigen::Index(mem.size()));
        for (std::size_t c = 0; c < mem.size(); ++c) {
            const Pair& p = pairs[mem[c]];
            const auto& blk = blocks[p.block];
            for (std::size_t i = 0; i < blk.size(); ++i)
                V(blk[i], Eigen::Index(c)) = vecs[p.block](Eigen::Index(i), p.column);
            V.col(Eigen::Index(c)).normalize();
        }
        Eigen::ColPivHouseholderQR<MatrixXcd> qr(V);
        qr.setThreshold(1e-10);
        const Eigen::Index rank = qr.rank();
        const MatrixXcd Q = qr.householderQ() * MatrixXcd::Identity(dim, rank);
        MatrixXcd EQ = Q;
        for (int i = 0; i < dim; ++i)
            if (!edge[i])
                EQ.row(i).setZero();
        Eigen::JacobiSVD<MatrixXcd> svd(EQ);
        Eigen::VectorXd sig = svd.singularValues();
        std::vector<double> masses(sig.data(), sig.data() + sig.size());
        for (auto& x : masses)
            x *= x;
        std::sort(masses.begin(), masses.end());

        std::vector<int> order = mem;
        std::stable_sort(order.begin(), order.end(),
                         [&](int x, int y) { return pairs[x].edge < pairs[y].edge; });
        for (std::size_t c = 0; c < order.size(); ++c) {
            auto& e = est[order[c]];
            if (c < masses.size()) {
                e.edge_mass = masses[c];
                e.interior = masses[c] < opt.edge_tol;
            } else {
                e.interior = false; // dependent direction of a defective cluster
            }
        }
    }

    std::vector<int> idx(np);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int x, int y) { return before(opt.order, est[x].value, est[y].value); });

    std::vector<EigenEstimate> out;
    for (int i : idx)
        if (est[i].interior && int(out.size()) < k)
            out.push_back(est[i]);
    if (int(out.size()) < k) {
        std::vector<int> rest;
        for (int i : idx)
            if (!est[i].interior)
                rest.push_back(i);
        std::stable_sort(rest.begin(), rest.end(),
                         [&](int x, int y) { return est[x].edge_mass < est[y].edge_mass; });
        for (int i : rest) {
            if (int(out.size()) >= k)
                break;
            out.push_back(est[i]);
        }
        std::stable_sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
            return before(opt.order, x.value, y.value);
        });
    }
    return out;
}

double set_distance(const std::vector<cplx>& targets, const std::vector<EigenEstimate>& got)
{
    if (targets.empty() || got.empty())
        return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (const cplx& t : targets) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& g : got)
            best = std::min(best, std::abs(g.value - t));
        d = std::max(d, best);
    }
    for (const auto& g : got) {
        double best = std::numeric_limits<double>::infinity();
        for (const cplx& t : targets)
            best = std::min(best, std::abs(g.value - t));
        d = std::max(d, best);
    }
    return d;
}

MatrixXcd weyl_matrix(const TruncatedRep& rep, cplx z)
{
    if (std::abs(z) > 1.0)
        throw std::invalid_argument("Weyl argument limited to |z| <= 1");
    const MatrixXcd X = z * rep.ad_mat() - std::conj(z) * rep.a_mat();
    return X.exp();
}

Mat2R expm2(const Mat2R& Z, double t)
{
    const double half_tr = Z.trace() / 2.0;
    const cplx delta = std::sqrt(cplx(half_tr * half_tr - Z.determinant(), 0.0));
    const cplx x = t * delta;
    cplx ch, sh_over; // cosh(tΔ), sinh(tΔ)/Δ
    if (std::abs(x) < 1e-4) {
        const cplx x2 = x * x;
        ch = 1.0 + x2 / 2.0 + x2 * x2 / 24.0;
        sh_over = t * (1.0 + x2 / 6.0 + x2 * x2 / 120.0);
    } else {
        ch = std::cosh(x);
        sh_over = std::sinh(x) / delta;
    }
    const Mat2R N = Z - half_tr * Mat2R::Identity();
    return std::exp(t * half_tr) * (ch.real() * Mat2R::Identity() + sh_over.real() * N);
}

cplx phi_t(const GaussianModel& m, cplx z, double t)
{
    if (!(t >= 0.0))
        throw std::invalid_argument("phi_t requires t >= 0");
    if (t == 0.0)
        return 1.0;
    const Mat2R Z = drift_matrix(m), C = diffusion_matrix(m);
    const Vec2R z0 = to_real(z), zeta = to_real(m.zeta);
    using boost::math::quadrature::gauss_kronrod;
    double err1 = 0.0, err2 = 0.0;
    const double q1 = gauss_kronrod<double, 31>::integrate(
        [&](double s) {
            const Vec2R w = expm2(Z, s) * z0;
            return w.dot(C * w);
        },
        0.0, t, 15, 1e-14, &err1);
    const double q2 = gauss_kronrod<double, 31>::integrate(
        [&](double s) { return zeta.dot(expm2(Z, s) * z0); }, 0.0, t, 15, 1e-14, &err2);
    if (err1 > 1e-10 * (1.0 + std::abs(q1)) || err2 > 1e-10 * (1.0 + std::abs(q2)))
        throw std::runtime_error("phi_t quadrature did not converge");
    return std::exp(cplx(-0.5 * q1, q2));
}

MatrixXcd evolve_gksl(const TruncatedRep& rep, const GaussianModel& m,
                      const MatrixXcd& V, double t)
{
    if (!(t >= 0.0))
        throw std::invalid_argument("evolution time must be non-negative");
    const MatrixXcd H = hamiltonian_mat(rep, m);
    const auto noise = noise_mats(rep, m);
    // 𝓛(V) = A V + V A* + Σ L* V L with A = iH - ½ Σ L*L
    MatrixXcd A = I * H;
    double bound = 0.0;
    for (const auto& [L, Ld] : noise) {
        A -= 0.5 * Ld * L;
        const double nl = Eigen::JacobiSVD<MatrixXcd>(L).singularValues()(0);
        bound += nl * nl;
    }
    bound += 2.0 * Eigen::JacobiSVD<MatrixXcd>(A).singularValues()(0);
    const MatrixXcd Ad = A.adjoint();
    auto gen = [&](const MatrixXcd& X) {
        MatrixXcd out = A * X + X * Ad;
        for (const auto& [L, Ld] : noise)
            out += Ld * X * L;
        return out;
    };

    const double theta = 4.0;
    const int steps = std::max(1, int(std::ceil(t * bound / theta)));
    const double h = t / steps;
    MatrixXcd cur = V;
    for (int s = 0; s < steps; ++s) {
        MatrixXcd acc = cur, term = cur;
        for (int j = 1; j <= 80; ++j) {
            term = (h / j) * gen(term);
            acc += term;
            if (term.norm() <= 1e-17 * acc.norm())
                break;
        }
        cur = std::move(acc);
    }
    return cur;
}

double block_norm(const MatrixXcd& A, int rows, int cols)
{
    return Eigen::JacobiSVD<MatrixXcd>(A.topLeftCorner(rows, cols)).singularValues()(0);
}

double verify_weyl_action(const TruncatedRep& rep, const GaussianModel& m, cplx z, double t)
{
    if (std::abs(z) > 0.5)
        throw std::invalid_argument("Weyl check limited to |z| <= 0.5");
    if (!(t >= 0.0 && t <= 2.0))
        throw std::invalid_argument("Weyl check limited to 0 <= t <= 2");
    const MatrixXcd lhs = evolve_gksl(rep, m, weyl_matrix(rep, z), t);
    const cplx zt = to_complex(expm2(drift_matrix(m), t) * to_real(z));
    const MatrixXcd rhs = phi_t(m, z, t) * weyl_matrix(rep, zt);
    const int k = rep.n_max() / 2;
    return block_norm(lhs - rhs, k, k);
}

CharacteristicPair characteristic_invariance(const TruncatedRep& rep,
                                             const GaussianModel& m, cplx z)
{
    if (std::abs(z) > 0.5)
        throw std::invalid_argument("characteristic check limited to |z| <= 0.5");
    const ModelReport r = require_diagonal(m);
    CharacteristicPair p;
    p.lhs = (rep.rho_pow_diag(1.0).cast<cplx>().asDiagonal() * weyl_matrix(rep, z)).trace();
    p.rhs = std::exp(-std::norm(z) / (2.0 * std::tanh(r.beta / 2.0)));
    return p;
}

} // namespace gqms
