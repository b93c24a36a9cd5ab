#include "gqms/gqms_model.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace gqms {

namespace {

const cplx I(0.0, 1.0);

double sum_v2(const GaussianModel& m)
{
    double s = 0.0;
    for (const auto& k : m.kraus)
        s += std::norm(k.v);
    return s;
}

double sum_u2(const GaussianModel& m)
{
    double s = 0.0;
    for (const auto& k : m.kraus)
        s += std::norm(k.u);
    return s;
}

cplx sum_uv(const GaussianModel& m)
{
    cplx s = 0.0;
    for (const auto& k : m.kraus)
        s += k.u * k.v;
    return s;
}

} // namespace

WickPoly GaussianModel::hamiltonian() const
{
    WickPoly h;
    h.add_term(1, 1, omega);
    h.add_term(2, 0, kappa / 2.0);
    h.add_term(0, 2, std::conj(kappa) / 2.0);
    h.add_term(1, 0, zeta / 2.0);
    h.add_term(0, 1, std::conj(zeta) / 2.0);
    return h;
}

WickPoly GaussianModel::noise(std::size_t l) const
{
    return FirstOrderPoly{std::conj(kraus.at(l).v), kraus.at(l).u, 0.0}.to_wick();
}

WickPoly GaussianModel::noise_adjoint(std::size_t l) const
{
    return FirstOrderPoly{std::conj(kraus.at(l).u), kraus.at(l).v, 0.0}.to_wick();
}

double model_gamma(const GaussianModel& m)
{
    return 0.5 * (sum_v2(m) - sum_u2(m));
}

double model_beta(const GaussianModel& m)
{
    const double u2 = sum_u2(m), v2 = sum_v2(m);
    if (v2 == 0.0)
        return u2 == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                         : -std::numeric_limits<double>::infinity();
    if (u2 == 0.0)
        return std::numeric_limits<double>::infinity();
    return -std::log(u2 / v2);
}

ModelReport validate(const GaussianModel& m)
{
    ModelReport r;
    r.gamma = model_gamma(m);
    r.beta = model_beta(m);
    const double g = r.gamma;
    r.invariant_exists = !m.kraus.empty() && g > 0.0 &&
                         g * g + m.omega * m.omega - std::norm(m.kappa) > 0.0;
    r.faithful_thermal = std::isfinite(r.beta) && r.beta > 0.0;

    // Routh-Hurwitz on the real drift: both eigenvalues in the open left half plane.
    const Mat2R Z = drift_matrix(m);
    r.stable = !m.kraus.empty() && Z.trace() < 0.0 && Z.determinant() > 0.0;

    if (!std::isnan(r.beta) && r.beta > 0.0) {
        const cplx target = I * std::tanh(r.beta / 2.0) * sum_uv(m);
        r.diagonal = m.zeta == 0.0 &&
                     std::abs(m.kappa - target) <= 1e-10 * (1.0 + std::abs(m.kappa));
    }
    return r;
}

Mat2R identify_real_linear(cplx s1, cplx s2)
{
    Mat2R S;
    S << s1.real() + s2.real(), s2.imag() - s1.imag(),
        s1.imag() + s2.imag(), s1.real() - s2.real();
    return S;
}

std::pair<cplx, cplx> extract_real_linear(const Mat2R& S)
{
    const cplx s_one(S(0, 0), S(1, 0));
    const cplx s_i(S(0, 1), S(1, 1));
    return {(s_one - I * s_i) / 2.0, (s_one + I * s_i) / 2.0};
}

Mat2R drift_matrix(const GaussianModel& m)
{
    const double g = model_gamma(m);
    Mat2R Z;
    Z << -g - m.kappa.imag(), m.kappa.real() - m.omega,
        m.kappa.real() + m.omega, -g + m.kappa.imag();
    return Z;
}

Mat2R diffusion_matrix(const GaussianModel& m)
{
    cplx two_vu = 0.0;
    for (const auto& k : m.kraus)
        two_vu += 2.0 * k.v * k.u;
    return identify_real_linear(sum_u2(m) + sum_v2(m), two_vu);
}

std::string invariant_condition_text()
{
    return "a normal invariant state requires gamma > 0 and "
           "gamma^2 + omega^2 - |kappa|^2 > 0";
}

ModelReport require_valid(const GaussianModel& m)
{
    if (m.kraus.empty())
        throw ModelError("model has no Kraus pairs");
    ModelReport r = validate(m);
    if (!r.invariant_exists) {
        char buf[160];
        std::snprintf(buf, sizeof buf, " (gamma = %.6g, gamma^2 + omega^2 - |kappa|^2 = %.6g)",
                      r.gamma,
                      r.gamma * r.gamma + m.omega * m.omega - std::norm(m.kappa));
        throw ModelError("invalid model: " + invariant_condition_text() + buf);
    }
    return r;
}

ModelReport require_diagonal(const GaussianModel& m)
{
    ModelReport r = require_valid(m);
    if (!r.faithful_thermal)
        throw ModelError("invariant state is not faithful (beta must be finite and positive)");
    if (!r.diagonal)
        throw ModelError("invariant state is not diagonal: need zeta = 0 and "
                         "kappa = i tanh(beta/2) sum(u v); standardize first");
    return r;
}

GaussianModel dual_model(const GaussianModel& m)
{
    const ModelReport r = require_diagonal(m);
    GaussianModel d;
    d.omega = -m.omega;
    d.kappa = m.kappa;
    d.zeta = 0.0;
    const double up = std::exp(r.beta / 2.0), down = std::exp(-r.beta / 2.0);
    for (const auto& k : m.kraus)
        d.kraus.push_back({up * k.u, down * k.v});
    return d;
}

namespace reference {

GaussianModel m0()
{
    return {1.0, 0.0, 0.0, {{std::sqrt(2.0), 0.0}, {0.0, 1.0}}};
}

GaussianModel m1()
{
    return {0.0, cplx(0.0, std::sqrt(2.0) / 3.0), 0.0, {{std::sqrt(2.0), 1.0}}};
}

GaussianModel m2()
{
    GaussianModel m = m1();
    m.omega = std::sqrt(2.0) / 3.0;
    return m;
}

} // namespace reference

} // namespace gqms
