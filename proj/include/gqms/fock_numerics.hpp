#pragma once

#include "gqms/generator_action.hpp"
#include "gqms/gqms_model.hpp"

#include <Eigen/Dense>

#include <vector>

namespace gqms {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Fock cutoff e_0 … e_{n_max-1} with a thermal weight of inverse temperature β.
class TruncatedRep {
public:
    TruncatedRep(int n_max, double beta);

    int n_max() const { return n_; }
    double beta() const { return beta_; }
    const MatrixXcd& a_mat() const { return a_; }
    const MatrixXcd& ad_mat() const { return ad_; }

    // diag((1 - e^{-β})^s e^{-βsn}); not renormalized
    Eigen::VectorXd rho_pow_diag(double s) const;
    MatrixXcd rho_pow(double s) const;

    // Σ c · ad_mat^n · a_mat^m
    MatrixXcd materialize(const WickPoly& p) const;

private:
    int n_;
    double beta_;
    MatrixXcd a_, ad_;
};

TruncatedRep build_rep(const GaussianModel& m, int n_max);

// Column-stacked: entry (j, k) of V sits at index k·n + j.
VectorXcd vectorize(const MatrixXcd& V);
MatrixXcd unvectorize(const VectorXcd& v, int n);

struct SuperOp {
    int n = 0;
    MatrixXcd matrix;

    MatrixXcd apply(const MatrixXcd& V) const;
};

// V ↦ i[H,V] - ½ Σ (L*L V - 2 L* V L + V L*L) on truncated operators
MatrixXcd apply_gksl(const TruncatedRep& rep, const GaussianModel& m, const MatrixXcd& V);
MatrixXcd apply_predual(const TruncatedRep& rep, const GaussianModel& m,
                        const MatrixXcd& V);

SuperOp gksl_superop(const TruncatedRep& rep, const GaussianModel& m);
SuperOp predual_superop(const TruncatedRep& rep, const GaussianModel& m);

// E_s ∘ 𝓛 ∘ E_s⁻¹ with E_s(V) = ρ^{s/2} V ρ^{(1-s)/2}
SuperOp induced_superop(const TruncatedRep& rep, const GaussianModel& m, double s);

// Induced superoperator of the dual model at 1 - s.
SuperOp adjoint_superop(const TruncatedRep& rep, const GaussianModel& m, double s);

// L^{(s)*} + L^{(s)} for the GNS (s = 0) or KMS (s = ½) embedding.
SuperOp sum_superop(const TruncatedRep& rep, const GaussianModel& m, Embedding e);

enum class EigOrder { SlowestDecay, SmallestMagnitude };

struct EigOptions {
    EigOrder order = EigOrder::SlowestDecay;
    double edge_tol = 1e-6;
    int edge_width = 2;
    bool hermitian = false;
};

struct EigenEstimate {
    cplx value = 0.0;
    double edge_mass = 0.0;
    bool interior = false;
};

// The k leading interior eigenvalues. Falls back to the least edge-contaminated
// eigenpairs (interior = false) when fewer than k interior ones exist.
std::vector<EigenEstimate> numeric_eigs(const SuperOp& sop, int k,
                                        const EigOptions& opt = {});

std::vector<cplx> all_eigenvalues(const SuperOp& sop);

// Largest distance from a target point to the nearest estimate, and vice versa.
double set_distance(const std::vector<cplx>& targets, const std::vector<EigenEstimate>& got);

MatrixXcd weyl_matrix(const TruncatedRep& rep, cplx z);

// e^{tZ} for a real 2×2 matrix via the trace/determinant formula.
Mat2R expm2(const Mat2R& Z, double t);

cplx phi_t(const GaussianModel& m, cplx z, double t);

// exp(t·𝓛) applied to a matrix by scaled Taylor steps of the GKSL map.
MatrixXcd evolve_gksl(const TruncatedRep& rep, const GaussianModel& m,
                      const MatrixXcd& V, double t);

double verify_weyl_action(const TruncatedRep& rep, const GaussianModel& m, cplx z,
                          double t);

struct CharacteristicPair {
    cplx lhs = 0.0;
    cplx rhs = 0.0;
};

CharacteristicPair characteristic_invariance(const TruncatedRep& rep,
                                             const GaussianModel& m, cplx z);

// Operator norm of the leading rows × cols block.
double block_norm(const MatrixXcd& A, int rows, int cols);

} // namespace gqms
