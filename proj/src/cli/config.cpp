#include "gqms/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace gqms::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& key,
                       const std::string& what)
{
    std::ostringstream os;
    os << source << ":" << line << ": ";
    if (!key.empty())
        os << "key '" << key << "': ";
    os << what;
    throw ConfigError(os.str());
}

std::vector<double> parse_reals(const std::string& text)
{
    std::istringstream is(text);
    std::vector<double> out;
    std::string tok;
    while (is >> tok) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || !std::isfinite(v))
            throw std::invalid_argument("'" + tok + "' is not a finite number");
        out.push_back(v);
    }
    return out;
}

} // namespace

const std::map<std::string, double>& default_tolerances()
{
    static const std::map<std::string, double> tol{
        {"base", 1e-12},        {"lattice", 1e-4},    {"oracle", 1e-10},
        {"quasi", 1e-10},       {"invariance", 1e-10}, {"duality", 1e-10},
        {"weyl", 1e-6},         {"phi", 1e-10},       {"characteristic", 1e-8},
        {"gap", 1e-4},          {"adjoint", 1e-8},    {"lyapunov", 1e-12},
        {"williamson", 1e-12},  {"symplectic", 1e-12},
    };
    return tol;
}

RunConfig parse_config(std::istream& in, const std::string& source)
{
    RunConfig cfg;
    cfg.model.kraus.clear();
    cfg.tolerances = default_tolerances();
    std::set<std::string> seen;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos)
            raw.erase(h);
        const std::string text = trim(raw);
        if (text.empty())
            continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            fail(source, line, "", "expected 'key = value'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty())
            fail(source, line, "", "missing key");
        if (key != "kraus" && !seen.insert(key).second)
            fail(source, line, key, "duplicate key");

        if (key == "csv_out" || key == "svg_out") {
            if (value.empty())
                fail(source, line, key, "empty path");
            (key == "csv_out" ? cfg.csv_out : cfg.svg_out) = value;
            continue;
        }

        std::vector<double> v;
        try {
            v = parse_reals(value);
        } catch (const std::invalid_argument& e) {
            fail(source, line, key, e.what());
        }
        const std::size_t want = key == "kraus" ? 4 : 1;
        if (v.size() != want)
            fail(source, line, key,
                 "expected " + std::to_string(want) + " number(s), got " + std::to_string(v.size()));

        auto as_int = [&](double x) {
            if (x != std::floor(x) || std::abs(x) > 1e6)
                fail(source, line, key, "expected an integer");
            return int(x);
        };

        if (key == "omega")
            cfg.model.omega = v[0];
        else if (key == "kappa_re")
            cfg.model.kappa.real(v[0]);
        else if (key == "kappa_im")
            cfg.model.kappa.imag(v[0]);
        else if (key == "zeta_re")
            cfg.model.zeta.real(v[0]);
        else if (key == "zeta_im")
            cfg.model.zeta.imag(v[0]);
        else if (key == "kraus")
            cfg.model.kraus.push_back({cplx(v[0], v[1]), cplx(v[2], v[3])});
        else if (key == "s")
            cfg.s = v[0];
        else if (key == "max_degree")
            cfg.max_degree = as_int(v[0]);
        else if (key == "n_max")
            cfg.n_max = as_int(v[0]);
        else if (key.rfind("tol_", 0) == 0 && default_tolerances().count(key.substr(4))) {
            if (!(v[0] > 0.0))
                fail(source, line, key, "tolerance must be positive");
            cfg.tolerances[key.substr(4)] = v[0];
        } else
            fail(source, line, key, "unknown key");
    }
    if (cfg.model.kraus.empty())
        fail(source, line, "kraus", "at least one 'kraus = v_re v_im u_re u_im' line is required");
    check_ranges(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError(path + ": cannot open config file");
    return parse_config(f, path);
}

void check_ranges(const RunConfig& cfg)
{
    if (!(cfg.s >= 0.0 && cfg.s <= 1.0))
        throw ConfigError("s must lie in [0, 1], got " + format_number(cfg.s));
    if (cfg.max_degree < 0 || cfg.max_degree > 12)
        throw ConfigError("max_degree must lie in [0, 12], got " + std::to_string(cfg.max_degree));
    if (cfg.n_max < 8 || cfg.n_max > 64)
        throw ConfigError("n_max must lie in [8, 64], got " + std::to_string(cfg.n_max));
}

std::string format_number(double x)
{
    if (x == 0.0)
        x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace gqms::cli
