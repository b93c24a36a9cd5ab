#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gqms {

using cplx = std::complex<double>;

// (n, m) indexes the normal-ordered monomial a†ⁿ aᵐ.
using Key = std::pair<int, int>;

inline constexpr double kPruneEps = 1e-12;

class DependencyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class WickPoly {
public:
    WickPoly() = default;

    static WickPoly identity(cplx c = 1.0);
    static WickPoly monomial(int n, int m, cplx c = 1.0);
    static WickPoly lower() { return monomial(0, 1); }
    static WickPoly raise() { return monomial(1, 0); }
    static WickPoly number() { return monomial(1, 1); }

    const std::map<Key, cplx>& terms() const { return terms_; }
    cplx coeff(int n, int m) const;
    bool is_zero() const { return terms_.empty(); }

    // Largest n+m over stored keys; 0 for the zero polynomial.
    int degree() const;

    void add_term(int n, int m, cplx c);

    WickPoly& operator+=(const WickPoly& o);
    WickPoly& operator-=(const WickPoly& o);
    WickPoly& operator*=(cplx c);

    std::string to_string() const;

private:
    std::map<Key, cplx> terms_;
};

WickPoly operator+(WickPoly p, const WickPoly& q);
WickPoly operator-(WickPoly p, const WickPoly& q);
WickPoly operator-(WickPoly p);
WickPoly operator*(WickPoly p, cplx c);
WickPoly operator*(cplx c, WickPoly p);
WickPoly operator*(const WickPoly& p, const WickPoly& q);

// Largest coefficient-wise absolute difference.
double max_abs_diff(const WickPoly& p, const WickPoly& q);

struct LadderSymbol {
    bool raise = false;
    cplx scale = 1.0;
};

using LadderWord = std::vector<LadderSymbol>;

// c_a·a + c_ad·a† + c_id·𝟙
struct FirstOrderPoly {
    cplx c_a = 0.0;
    cplx c_ad = 0.0;
    cplx c_id = 0.0;

    WickPoly to_wick() const;
};

WickPoly wick_normal_order(const LadderWord& w);
WickPoly multiply(const WickPoly& p, const WickPoly& q);
WickPoly commutator(const WickPoly& p, const WickPoly& q);
WickPoly adjoint(const WickPoly& p);

// ρˢ p ρ⁻ˢ for ρ ∝ e^{-βN}
WickPoly modular_transform(const WickPoly& p, double s, double beta);

// Tr(ρ p) for ρ = (1 - e^{-β}) e^{-βN}
cplx thermal_expectation(const WickPoly& p, double beta);

// Coefficients c with p = Σ c_{n,m} XⁿYᵐ.
std::map<Key, cplx> rebase_to_xy(const WickPoly& p, const FirstOrderPoly& X,
                                 const FirstOrderPoly& Y);

// Inverse of rebase_to_xy, expanded through multiply.
WickPoly expand_xy(const std::map<Key, cplx>& coeffs, const FirstOrderPoly& X,
                   const FirstOrderPoly& Y);

WickPoly power(const WickPoly& p, int k);

} // namespace gqms
