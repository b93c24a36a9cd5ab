#pragma once

#include "gqms/ccr_algebra.hpp"
#include "gqms/gqms_model.hpp"

#include <Eigen/Dense>

#include <vector>

namespace gqms {

enum class Embedding { GNS, KMS };

inline double embedding_s(Embedding e) { return e == Embedding::KMS ? 0.5 : 0.0; }
const char* embedding_name(Embedding e);

// ρ^{s/2} p ρ^{(1-s)/2}
struct EmbeddedPoly {
    WickPoly poly;
    double s = 0.5;
};

// ⟨emb_s p, emb_s q⟩ = Tr(ρ p* σ_s(q))
cplx embedded_inner(const WickPoly& p, const WickPoly& q, double s, double beta);

struct BaseMatrices {
    Mat2C l_base;
    Mat2C sum_base_kms;
    Mat2C sum_base_gns;
};

WickPoly apply_generator(const GaussianModel& m, const WickPoly& p);
WickPoly apply_dual_generator(const GaussianModel& m, const WickPoly& p);
WickPoly quasi_derivation_residual(const GaussianModel& m, const WickPoly& p,
                                   const WickPoly& q);
WickPoly sum_action(const GaussianModel& m, Embedding e, const WickPoly& p);

// Columns hold the (a, a†) coordinates of the image of a and a† respectively.
Mat2C generator_on_first_order(const GaussianModel& m);

BaseMatrices base_matrices(const GaussianModel& m, double s);

struct TriangularRep {
    Eigen::MatrixXcd matrix;
    std::vector<Key> labels; // (n, m) for XⁿYᵐ
    FirstOrderPoly X, Y;
    cplx lambda = 0.0, mu = 0.0;
    bool defective = false;
    double s = 0.5;
};

struct EigenBasis {
    FirstOrderPoly X, Y;
    cplx lambda = 0.0, mu = 0.0;
    bool defective = false;
};

// X, Y diagonalize (or Jordan-reduce) the generator on first-order polynomials.
EigenBasis first_order_eigenbasis(const GaussianModel& m);

// Degree-major, n descending: (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
std::vector<Key> xy_labels(int max_total_degree);

TriangularRep triangular_representation(const GaussianModel& m, double s,
                                        int max_total_degree);

} // namespace gqms
