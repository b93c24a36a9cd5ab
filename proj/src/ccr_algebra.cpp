#include "gqms/ccr_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace gqms {

namespace {

double binom(int n, int k)
{
    if (k < 0 || k > n)
        return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

double factorial(int n)
{
    double r = 1.0;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

using XYPoly = std::map<Key, cplx>;

void add_xy(XYPoly& p, int n, int m, cplx c)
{
    if (c == 0.0)
        return;
    auto [it, fresh] = p.try_emplace({n, m}, c);
    if (!fresh) {
        it->second += c;
        if (std::abs(it->second) < kPruneEps)
            p.erase(it);
    }
}

// XⁿYᵐ·Y = XⁿY^{m+1};  XⁿYᵐ·X = X^{n+1}Yᵐ + m[Y,X] XⁿY^{m-1}
XYPoly times_linear(const XYPoly& p, cplx cx, cplx cy, cplx yx)
{
    XYPoly out;
    for (const auto& [k, c] : p) {
        auto [n, m] = k;
        add_xy(out, n, m + 1, c * cy);
        add_xy(out, n + 1, m, c * cx);
        if (m > 0)
            add_xy(out, n, m - 1, c * cx * yx * double(m));
    }
    return out;
}

} // namespace

WickPoly WickPoly::identity(cplx c)
{
    return monomial(0, 0, c);
}

WickPoly WickPoly::monomial(int n, int m, cplx c)
{
    if (n < 0 || m < 0)
        throw std::invalid_argument("monomial exponents must be non-negative");
    WickPoly p;
    p.add_term(n, m, c);
    return p;
}

cplx WickPoly::coeff(int n, int m) const
{
    auto it = terms_.find({n, m});
    return it == terms_.end() ? cplx(0.0) : it->second;
}

int WickPoly::degree() const
{
    int d = 0;
    for (const auto& [k, c] : terms_)
        d = std::max(d, k.first + k.second);
    return d;
}

void WickPoly::add_term(int n, int m, cplx c)
{
    if (c == 0.0)
        return;
    auto [it, fresh] = terms_.try_emplace({n, m}, c);
    if (!fresh)
        it->second += c;
    if (std::abs(it->second) < kPruneEps)
        terms_.erase(it);
}

WickPoly& WickPoly::operator+=(const WickPoly& o)
{
    for (const auto& [k, c] : o.terms_)
        add_term(k.first, k.second, c);
    return *this;
}

WickPoly& WickPoly::operator-=(const WickPoly& o)
{
    for (const auto& [k, c] : o.terms_)
        add_term(k.first, k.second, -c);
    return *this;
}

WickPoly& WickPoly::operator*=(cplx c)
{
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= c;
        if (std::abs(it->second) < kPruneEps)
            it = terms_.erase(it);
        else
            ++it;
    }
    return *this;
}

std::string WickPoly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s(%.6g%+.6gi)*ad^%d*a^%d",
                      first ? "" : " + ", c.real(), c.imag(), k.first,
                      k.second);
        os << buf;
        first = false;
    }
    return os.str();
}

WickPoly operator+(WickPoly p, const WickPoly& q)
{
    return p += q;
}

WickPoly operator-(WickPoly p, const WickPoly& q)
{
    return p -= q;
}

WickPoly operator-(WickPoly p)
{
    return p *= -1.0;
}

WickPoly operator*(WickPoly p, cplx c)
{
    return p *= c;
}

WickPoly operator*(cplx c, WickPoly p)
{
    return p *= c;
}

WickPoly operator*(const WickPoly& p, const WickPoly& q)
{
    return multiply(p, q);
}

double max_abs_diff(const WickPoly& p, const WickPoly& q)
{
    double d = 0.0;
    for (const auto& [k, c] : p.terms())
        d = std::max(d, std::abs(c - q.coeff(k.first, k.second)));
    for (const auto& [k, c] : q.terms())
        if (!p.terms().count(k))
            d = std::max(d, std::abs(c));
    return d;
}

WickPoly FirstOrderPoly::to_wick() const
{
    WickPoly p;
    p.add_term(0, 1, c_a);
    p.add_term(1, 0, c_ad);
    p.add_term(0, 0, c_id);
    return p;
}

WickPoly wick_normal_order(const LadderWord& w)
{
    // Appending a symbol to an ordered product:
    //   a†ⁿaᵐ · a  = a†ⁿa^{m+1}
    //   a†ⁿaᵐ · a† = a†^{n+1}aᵐ + m a†ⁿa^{m-1}
    WickPoly acc = WickPoly::identity();
    for (const auto& sym : w) {
        WickPoly next;
        for (const auto& [k, c] : acc.terms()) {
            auto [n, m] = k;
            cplx cs = c * sym.scale;
            if (!sym.raise) {
                next.add_term(n, m + 1, cs);
            } else {
                next.add_term(n + 1, m, cs);
                if (m > 0)
                    next.add_term(n, m - 1, cs * double(m));
            }
        }
        acc = std::move(next);
    }
    return acc;
}

WickPoly multiply(const WickPoly& p, const WickPoly& q)
{
    // a†ⁿaᵐ · a†ᵖa^r = Σ_k k! C(m,k) C(p,k) a†^{n+p-k} a^{m+r-k}
    WickPoly out;
    for (const auto& [kp, cp] : p.terms()) {
        auto [n, m] = kp;
        for (const auto& [kq, cq] : q.terms()) {
            auto [pp, r] = kq;
            int kmax = std::min(m, pp);
            for (int k = 0; k <= kmax; ++k) {
                double w = factorial(k) * binom(m, k) * binom(pp, k);
                out.add_term(n + pp - k, m + r - k, cp * cq * w);
            }
        }
    }
    return out;
}

WickPoly commutator(const WickPoly& p, const WickPoly& q)
{
    return multiply(p, q) - multiply(q, p);
}

WickPoly adjoint(const WickPoly& p)
{
    WickPoly out;
    for (const auto& [k, c] : p.terms())
        out.add_term(k.second, k.first, std::conj(c));
    return out;
}

WickPoly modular_transform(const WickPoly& p, double s, double beta)
{
    if (!(beta > 0.0))
        throw std::invalid_argument("modular_transform requires beta > 0");
    WickPoly out;
    for (const auto& [k, c] : p.terms())
        out.add_term(k.first, k.second,
                     c * std::exp(s * beta * double(k.second - k.first)));
    return out;
}

cplx thermal_expectation(const WickPoly& p, double beta)
{
    if (!(beta > 0.0))
        throw std::invalid_argument("thermal_expectation requires beta > 0");
    const double nbar = 1.0 / std::expm1(beta);
    cplx acc = 0.0;
    for (const auto& [k, c] : p.terms())
        if (k.first == k.second)
            acc += c * factorial(k.first) * std::pow(nbar, k.first);
    return acc;
}

std::map<Key, cplx> rebase_to_xy(const WickPoly& p, const FirstOrderPoly& X,
                                 const FirstOrderPoly& Y)
{
    if (std::abs(X.c_id) > kPruneEps || std::abs(Y.c_id) > kPruneEps)
        throw DependencyError("rebase_to_xy: X and Y must have no constant term");
    const cplx det = X.c_a * Y.c_ad - X.c_ad * Y.c_a;
    const double scale = std::hypot(std::abs(X.c_a), std::abs(X.c_ad)) *
                         std::hypot(std::abs(Y.c_a), std::abs(Y.c_ad));
    if (!(std::abs(det) > 1e-12 * scale))
        throw DependencyError("rebase_to_xy: X and Y are linearly dependent");

    // a = (Y_ad X - X_ad Y)/det,  a† = (X_a Y - Y_a X)/det
    const cplx ax = Y.c_ad / det, ay = -X.c_ad / det;
    const cplx dx = -Y.c_a / det, dy = X.c_a / det;
    // [Y, X] = Y_a X_ad - Y_ad X_a
    const cplx yx = Y.c_a * X.c_ad - Y.c_ad * X.c_a;

    int nmax = 0;
    for (const auto& [k, c] : p.terms())
        nmax = std::max(nmax, k.first);
    std::vector<XYPoly> ad_pow{XYPoly{{{0, 0}, 1.0}}};
    for (int n = 1; n <= nmax; ++n)
        ad_pow.push_back(times_linear(ad_pow.back(), dx, dy, yx));

    XYPoly out;
    for (const auto& [k, c] : p.terms()) {
        XYPoly mono = ad_pow[k.first];
        for (int j = 0; j < k.second; ++j)
            mono = times_linear(mono, ax, ay, yx);
        for (const auto& [kk, cc] : mono)
            add_xy(out, kk.first, kk.second, c * cc);
    }
    return out;
}

WickPoly power(const WickPoly& p, int k)
{
    WickPoly r = WickPoly::identity();
    for (int i = 0; i < k; ++i)
        r = multiply(r, p);
    return r;
}

WickPoly expand_xy(const std::map<Key, cplx>& coeffs, const FirstOrderPoly& X,
                   const FirstOrderPoly& Y)
{
    const WickPoly x = X.to_wick(), y = Y.to_wick();
    WickPoly out;
    for (const auto& [k, c] : coeffs)
        out += c * multiply(power(x, k.first), power(y, k.second));
    return out;
}

} // namespace gqms
