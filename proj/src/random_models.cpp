#include "gqms/random_models.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace gqms {

namespace {

double uniform(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

cplx ucomplex(Rng& rng, double r)
{
    return {uniform(rng, -r, r), uniform(rng, -r, r)};
}

std::vector<KrausPair> random_kraus(Rng& rng)
{
    const int count = std::uniform_int_distribution<int>(1, 3)(rng);
    std::vector<KrausPair> k;
    for (int i = 0; i < count; ++i)
        k.push_back({ucomplex(rng, 1.5), ucomplex(rng, 1.0)});
    return k;
}

} // namespace

std::uint64_t seed_from_env(std::uint64_t fallback)
{
    if (const char* s = std::getenv("GQMS_SEED"))
        return std::stoull(s);
    return fallback;
}

GaussianModel random_model(Rng& rng)
{
    GaussianModel m;
    m.omega = uniform(rng, -2.0, 2.0);
    m.kappa = ucomplex(rng, 1.5);
    m.zeta = ucomplex(rng, 1.0);
    m.kraus = random_kraus(rng);
    return m;
}

GaussianModel random_valid_model(Rng& rng)
{
    for (;;) {
        GaussianModel m = random_model(rng);
        if (validate(m).invariant_exists)
            return m;
    }
}

GaussianModel random_diagonal_model(Rng& rng)
{
    for (;;) {
        GaussianModel m;
        m.kraus = random_kraus(rng);
        double v2 = 0.0, u2 = 0.0;
        for (const auto& k : m.kraus) {
            v2 += std::norm(k.v);
            u2 += std::norm(k.u);
        }
        if (u2 < 1e-3 || std::abs(v2 - u2) < 1e-2 * (v2 + u2))
            continue;
        if (u2 > v2)
            for (auto& k : m.kraus)
                std::swap(k.v, k.u);
        const double beta = model_beta(m);
        cplx uv = 0.0;
        for (const auto& k : m.kraus)
            uv += k.u * k.v;
        m.kappa = cplx(0.0, 1.0) * std::tanh(beta / 2.0) * uv;
        m.omega = uniform(rng, -2.0, 2.0);
        if (validate(m).diagonal && validate(m).invariant_exists)
            return m;
    }
}

WickPoly random_poly(Rng& rng, int max_degree)
{
    WickPoly p;
    for (int d = 0; d <= max_degree; ++d)
        for (int n = 0; n <= d; ++n)
            p.add_term(n, d - n, ucomplex(rng, 1.0));
    return p;
}

} // namespace gqms
