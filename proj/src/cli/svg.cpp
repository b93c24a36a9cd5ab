#include "gqms/cli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gqms::cli {

namespace {

// round an axis extent up to 1, 2 or 5 × 10^k
double nice_ceil(double x)
{
    if (x <= 0.0)
        return 1.0;
    const double p = std::pow(10.0, std::floor(std::log10(x)));
    for (double f : {1.0, 2.0, 5.0, 10.0})
        if (f * p >= x)
            return f * p;
    return 10.0 * p;
}

} // namespace

std::string lattice_svg(const SpectrumPrediction& p, double s)
{
    const double W = 640, H = 480, pad = 60;
    double re_min = 0.0, im_max = 0.0;
    for (const auto& pt : p.points) {
        re_min = std::min(re_min, pt.value.real());
        im_max = std::max(im_max, std::abs(pt.value.imag()));
    }
    const double x_lo = -nice_ceil(-re_min * 1.05), x_hi = 0.1 * -x_lo;
    const double y_ext = im_max > 0.0 ? nice_ceil(im_max * 1.1) : 1.0;
    auto X = [&](double re) { return pad + (re - x_lo) / (x_hi - x_lo) * (W - 2 * pad); };
    auto Y = [&](double im) { return H / 2 - im / y_ext * (H / 2 - pad); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
       << "Eigenvalue lattice n&#955; + m&#956;, s = " << format_number(s) << "</text>\n";
    // axes
    os << "<line x1=\"" << pad << "\" y1=\"" << Y(0) << "\" x2=\"" << W - pad << "\" y2=\"" << Y(0)
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << X(0) << "\" y1=\"" << pad << "\" x2=\"" << X(0) << "\" y2=\"" << H - pad
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << W - pad + 6 << "\" y=\"" << Y(0) + 4 << "\">Re</text>\n";
    os << "<text x=\"" << X(0) + 6 << "\" y=\"" << pad - 6 << "\">Im</text>\n";
    for (int k = 0; k <= 4; ++k) {
        const double re = x_lo * (1.0 - k / 4.0);
        os << "<text x=\"" << X(re) << "\" y=\"" << H - pad + 18 << "\" text-anchor=\"middle\">"
           << format_number(re) << "</text>\n";
    }
    for (double im : {-y_ext, y_ext})
        os << "<text x=\"" << X(0) - 6 << "\" y=\"" << Y(im) + 4 << "\" text-anchor=\"end\">"
           << format_number(im) << "</text>\n";

    for (const auto& pt : p.points) {
        const double r = 3.0 + 1.5 * (pt.multiplicity - 1);
        os << "<circle cx=\"" << format_number(X(pt.value.real())) << "\" cy=\""
           << format_number(Y(pt.value.imag())) << "\" r=\"" << r << "\" fill=\""
           << (pt.n + pt.m == 1 ? "crimson" : "steelblue") << "\"><title>(" << pt.n << ", "
           << pt.m << ") x" << pt.multiplicity << "</title></circle>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace gqms::cli
