#pragma once

#include "gqms/generator_action.hpp"
#include "gqms/gqms_model.hpp"

#include <string>
#include <vector>

namespace gqms {

inline constexpr double kLatticeMergeTol = 1e-9;
inline constexpr const char* kNoGapNote = "eigenvalues only, spectrum completeness unknown";

struct BaseEigenvalues {
    cplx lambda = 0.0;
    cplx mu = 0.0;
    bool defective = false;
};

struct LatticePoint {
    cplx value = 0.0;
    int n = 0;
    int m = 0;
    int multiplicity = 1;
};

struct SpectrumPrediction {
    cplx lambda = 0.0;
    cplx mu = 0.0;
    bool defective = false;
    std::vector<LatticePoint> points;
};

struct GapReport {
    double gap_kms = 0.0;
    double gap_gns = 0.0;
    bool zero_simple_kms = false;
    bool zero_simple_gns = false;
    bool compact_resolvent_kms = false;
    bool compact_resolvent_gns = false;
    std::string note_kms;
    std::string note_gns;
};

// −γ ∓ sqrt(|κ|² − Ω²), principal branch
BaseEigenvalues base_eigenvalues(const GaussianModel& m);

SpectrumPrediction predicted_lattice(cplx lambda, cplx mu, bool defective,
                                     int max_total_degree);
SpectrumPrediction adjoint_lattice(const SpectrumPrediction& p);

// Real eigenvalues (larger first) of the symmetrized base matrix.
std::pair<double, double> sum_base_eigenvalues(const GaussianModel& m, Embedding e);

SpectrumPrediction sum_lattice(const GaussianModel& m, Embedding e,
                               int max_total_degree);
double spectral_gap(const GaussianModel& m, Embedding e);
GapReport gap_report(const GaussianModel& m);

} // namespace gqms
