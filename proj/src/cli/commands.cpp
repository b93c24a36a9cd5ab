#include "gqms/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <ostream>

#include <Eigen/Eigenvalues>

#include "gqms/fock_numerics.hpp"
#include "gqms/random_models.hpp"
#include "gqms/standardization.hpp"

namespace gqms::cli {

namespace {

using Checks = std::vector<CheckResult>;

CheckResult le(const std::string& name, double value, double tol)
{
    return {name, value, tol, std::isfinite(value) && value <= tol};
}

Checks check_base(const RunConfig& c, Rng&)
{
    const BaseEigenvalues b = base_eigenvalues(c.model);
    Eigen::EigenSolver<Mat2R> es(drift_matrix(c.model));
    const cplx x = es.eigenvalues()(0), y = es.eigenvalues()(1);
    const double err = std::min(std::max(std::abs(b.lambda - x), std::abs(b.mu - y)),
                                std::max(std::abs(b.lambda - y), std::abs(b.mu - x)));
    return {le("base_eigenvalues", err, c.tolerances.at("base"))};
}

Checks check_oracle(const RunConfig& c, Rng&)
{
    const TruncatedRep rep = build_rep(c.model, c.n_max);
    const SuperOp G = gksl_superop(rep, c.model);
    const int block = c.n_max - 6;
    double worst = 0.0;
    for (int d = 0; d <= 3; ++d)
        for (int j = 0; j <= d; ++j) {
            const WickPoly p = WickPoly::monomial(j, d - j);
            const MatrixXcd diff =
                rep.materialize(apply_generator(c.model, p)) - G.apply(rep.materialize(p));
            worst = std::max(worst, diff.topLeftCorner(block, block).cwiseAbs().maxCoeff());
        }
    return {le("oracle_equivalence", worst, c.tolerances.at("oracle"))};
}

// Every resolved interior eigenvalue among the leading six must sit on the lattice,
// and the kernel must be found.
Checks check_lattice(const RunConfig& c, Rng&)
{
    const BaseEigenvalues b = base_eigenvalues(c.model);
    const SpectrumPrediction p = predicted_lattice(b.lambda, b.mu, b.defective, 12);
    const TruncatedRep rep = build_rep(c.model, c.n_max);
    const auto got = numeric_eigs(induced_superop(rep, c.model, c.s), 6);
    double worst = INFINITY;
    for (const auto& x : got)
        worst = std::min(worst, std::abs(x.value));
    int resolved = 0;
    for (const auto& x : got) {
        if (!x.interior)
            continue;
        ++resolved;
        double best = INFINITY;
        for (const auto& pt : p.points)
            best = std::min(best, std::abs(pt.value - x.value));
        worst = std::max(worst, best);
    }
    if (resolved == 0)
        worst = NAN;
    return {le("lattice_containment", worst, c.tolerances.at("lattice"))};
}

Checks check_random_algebra(const RunConfig& c, Rng& rng)
{
    const GaussianModel& m = c.model;
    const double beta = validate(m).beta;
    double quasi = 0.0, inv = 0.0, dual = 0.0;
    for (int i = 0; i < 100; ++i) {
        const WickPoly p = random_poly(rng, 3), q = random_poly(rng, 3);
        WickPoly expect;
        for (std::size_t l = 0; l < m.kraus.size(); ++l)
            expect += multiply(commutator(p, m.noise_adjoint(l)), commutator(m.noise(l), q));
        quasi = std::max(quasi, max_abs_diff(quasi_derivation_residual(m, p, q), expect));
        inv = std::max(inv, std::abs(thermal_expectation(apply_generator(m, p), beta)));
        const cplx lhs = thermal_expectation(
            multiply(modular_transform(apply_dual_generator(m, p), -0.5, beta), q), beta);
        const cplx rhs = thermal_expectation(
            multiply(modular_transform(p, -0.5, beta), apply_generator(m, q)), beta);
        dual = std::max(dual, std::abs(lhs - rhs));
    }
    return {le("quasi_derivation", quasi, c.tolerances.at("quasi")),
            le("invariance", inv, c.tolerances.at("invariance")),
            le("duality", dual, c.tolerances.at("duality"))};
}

Checks check_weyl(const RunConfig& c, Rng&)
{
    const TruncatedRep rep = build_rep(c.model, c.n_max);
    double worst = 0.0, phi = 0.0;
    for (double z : {0.2, 0.3})
        for (double t : {0.5, 1.0}) {
            worst = std::max(worst, verify_weyl_action(rep, c.model, z, t));
            // φ_t(z) · χ(e^{tZ} z) = χ(z) for the invariant characteristic function χ
            const cplx zt = to_complex(expm2(drift_matrix(c.model), t) * to_real(z));
            const cplx lhs = phi_t(c.model, z, t) * characteristic_invariance(rep, c.model, zt).rhs;
            phi = std::max(phi, std::abs(lhs - characteristic_invariance(rep, c.model, z).rhs));
        }
    const CharacteristicPair ch = characteristic_invariance(rep, c.model, 0.3);
    return {le("weyl_action", worst, c.tolerances.at("weyl")),
            le("phi_consistency", phi, c.tolerances.at("phi")),
            le("characteristic_invariance", std::abs(ch.lhs - ch.rhs),
               c.tolerances.at("characteristic"))};
}

Checks check_gap(const RunConfig& c, Rng&)
{
    const GapReport g = gap_report(c.model);
    const TruncatedRep rep = build_rep(c.model, c.n_max);
    EigOptions herm;
    herm.hermitian = true;
    Checks out;
    for (Embedding e : {Embedding::KMS, Embedding::GNS}) {
        const auto ev = numeric_eigs(sum_superop(rep, c.model, e), 2, herm);
        const double numeric = -ev.at(1).value.real() / 2.0;
        const double exact = e == Embedding::KMS ? g.gap_kms : g.gap_gns;
        out.push_back(le(std::string("gap_") + embedding_name(e) + "_numeric",
                         std::abs(numeric - exact), c.tolerances.at("gap")));
    }
    return out;
}

Checks check_adjoint(const RunConfig& c, Rng&)
{
    const int n = std::min(c.n_max, 30);
    const TruncatedRep rep = build_rep(c.model, n);
    const auto e = numeric_eigs(induced_superop(rep, c.model, c.s), n * n);
    const auto f = numeric_eigs(adjoint_superop(rep, c.model, c.s), n * n);
    double worst = 0.0;
    int count = 0;
    for (const auto* pair : {&e, &f}) {
        const auto& from = *pair;
        const auto& to = pair == &e ? f : e;
        for (const auto& x : from) {
            if (!x.interior)
                continue;
            ++count;
            double best = INFINITY;
            for (const auto& y : to)
                best = std::min(best, std::abs(std::conj(y.value) - x.value));
            worst = std::max(worst, best);
        }
    }
    if (count == 0)
        worst = NAN;
    return {le("adjoint_conjugate", worst, c.tolerances.at("adjoint"))};
}

Checks check_standardization(const RunConfig& c, Rng&)
{
    const StationaryGaussian sg = stationary_gaussian(c.model);
    const Mat2R Z = drift_matrix(c.model);
    const double lyap = (Z.transpose() * sg.S + sg.S * Z + diffusion_matrix(c.model)).norm();
    const double recon = (sg.G.transpose() * (sg.nu * sg.G) - sg.S).norm();
    const double symp = std::max(std::abs(sg.M.determinant() - 1.0),
                                 std::abs(std::norm(sg.m1) - std::norm(sg.m2) - 1.0));
    return {le("lyapunov_residual", lyap, c.tolerances.at("lyapunov")),
            le("williamson_reconstruction", recon, c.tolerances.at("williamson")),
            le("symplectic_invariants", symp, c.tolerances.at("symplectic"))};
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path);
    if (!f || !(f << text))
        throw std::runtime_error(path + ": cannot write");
}

template <class F>
void emit(const std::string& path, std::ostream& out, F&& writer)
{
    std::ostringstream os;
    writer(os);
    out << os.str();
    if (!path.empty())
        write_file(path, os.str());
}

} // namespace

void write_lattice_csv(std::ostream& out, const SpectrumPrediction& p)
{
    out << "re,im,n,m,multiplicity\n";
    for (const auto& pt : p.points)
        out << format_number(pt.value.real()) << ',' << format_number(pt.value.imag()) << ','
            << pt.n << ',' << pt.m << ',' << pt.multiplicity << '\n';
}

void write_checks_csv(std::ostream& out, const std::vector<CheckResult>& checks)
{
    out << "quantity,value,tolerance,status\n";
    for (const auto& r : checks)
        out << r.quantity << ',' << format_number(r.value) << ',' << format_number(r.tolerance)
            << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
}

std::vector<CheckResult> run_verification(const RunConfig& cfg, unsigned long long seed)
{
    require_diagonal(cfg.model);
    using Fn = std::function<Checks(const RunConfig&, Rng&)>;
    const std::vector<std::pair<std::string, Fn>> jobs{
        {"base", check_base},          {"oracle", check_oracle},
        {"lattice", check_lattice},    {"algebra", check_random_algebra},
        {"weyl", check_weyl},          {"gap", check_gap},
        {"adjoint", check_adjoint},    {"standardization", check_standardization},
    };
    std::vector<std::future<Checks>> pending;
    for (std::size_t i = 0; i < jobs.size(); ++i)
        pending.push_back(std::async(std::launch::async, [&cfg, &jobs, i, seed] {
            Rng rng(seed + i);
            try {
                return jobs[i].second(cfg, rng);
            } catch (const std::exception&) {
                return Checks{{jobs[i].first + "_exception", NAN, 0.0, false}};
            }
        }));
    std::vector<CheckResult> out;
    for (auto& f : pending)
        for (auto& r : f.get())
            out.push_back(std::move(r));
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spectra of Gaussian quantum Markov semigroups"};
    app.require_subcommand(1);

    std::string config_path, csv_flag, svg_flag;
    double s_flag = NAN;
    int degree_flag = -1, n_flag = -1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "model config file")->required();
        sub->add_option("--csv", csv_flag, "also write the CSV output here");
    };
    CLI::App* spectrum = app.add_subcommand("spectrum", "base eigenvalues and lattice CSV");
    add_common(spectrum);
    spectrum->add_option("--s", s_flag, "embedding parameter in [0, 1]");
    spectrum->add_option("--max-degree", degree_flag, "largest n + m in the lattice");
    spectrum->add_option("--svg", svg_flag, "write a lattice scatter plot");
    CLI::App* gap = app.add_subcommand("gap", "KMS and GNS spectral gaps");
    add_common(gap);
    CLI::App* verify = app.add_subcommand("verify", "numerical verification campaign");
    add_common(verify);
    verify->add_option("--s", s_flag, "embedding parameter in [0, 1]");
    verify->add_option("--n-max", n_flag, "Fock cutoff");
    CLI::App* standardize = app.add_subcommand("standardize", "stationary Gaussian state");
    add_common(standardize);
    CLI::App* dual = app.add_subcommand("dual", "dual model as a config file");
    add_common(dual);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kInvalidInput;
    }

    RunConfig cfg;
    try {
        cfg = load_config(config_path);
        if (!std::isnan(s_flag))
            cfg.s = s_flag;
        if (degree_flag >= 0 || spectrum->count("--max-degree"))
            cfg.max_degree = degree_flag;
        if (n_flag >= 0 || verify->count("--n-max"))
            cfg.n_max = n_flag;
        if (!csv_flag.empty())
            cfg.csv_out = csv_flag;
        if (!svg_flag.empty())
            cfg.svg_out = svg_flag;
        check_ranges(cfg);
        require_valid(cfg.model);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }

    try {
        if (*spectrum) {
            const BaseEigenvalues b = base_eigenvalues(cfg.model);
            const SpectrumPrediction p =
                predicted_lattice(b.lambda, b.mu, b.defective, cfg.max_degree);
            err << "lambda = " << format_number(b.lambda.real()) << " + "
                << format_number(b.lambda.imag()) << "i, mu = " << format_number(b.mu.real())
                << " + " << format_number(b.mu.imag()) << "i"
                << (b.defective ? " (defective drift)" : "") << '\n';
            emit(cfg.csv_out, out, [&](std::ostream& os) { write_lattice_csv(os, p); });
            if (!cfg.svg_out.empty())
                write_file(cfg.svg_out, lattice_svg(p, cfg.s));
            return kPass;
        }
        if (*gap) {
            const GapReport g = gap_report(cfg.model);
            emit(cfg.csv_out, out, [&](std::ostream& os) {
                os << "quantity,value\n"
                   << "gap_kms," << format_number(g.gap_kms) << '\n'
                   << "gap_gns," << format_number(g.gap_gns) << '\n'
                   << "zero_simple_kms," << g.zero_simple_kms << '\n'
                   << "zero_simple_gns," << g.zero_simple_gns << '\n'
                   << "compact_resolvent_kms," << g.compact_resolvent_kms << '\n'
                   << "compact_resolvent_gns," << g.compact_resolvent_gns << '\n';
                if (!g.note_kms.empty())
                    os << "note_kms," << g.note_kms << '\n';
                if (!g.note_gns.empty())
                    os << "note_gns," << g.note_gns << '\n';
            });
            return kPass;
        }
        if (*verify) {
            require_diagonal(cfg.model);
            const auto checks = run_verification(cfg, seed_from_env());
            emit(cfg.csv_out, out, [&](std::ostream& os) { write_checks_csv(os, checks); });
            const auto failed = std::count_if(checks.begin(), checks.end(),
                                              [](const CheckResult& r) { return !r.pass; });
            err << checks.size() - failed << "/" << checks.size() << " checks passed\n";
            return failed == 0 ? kPass : kCheckFailed;
        }
        if (*standardize) {
            const StationaryGaussian sg = stationary_gaussian(cfg.model);
            auto [zs, zd] = standardized_drifts(cfg.model);
            emit(cfg.csv_out, out, [&](std::ostream& os) {
                os << "quantity,value\n";
                auto row = [&](const std::string& k, double v) {
                    os << k << ',' << format_number(v) << '\n';
                };
                row("omega_re", sg.omega.real());
                row("omega_im", sg.omega.imag());
                row("S11", sg.S(0, 0));
                row("S12", sg.S(0, 1));
                row("S22", sg.S(1, 1));
                row("nu", sg.nu);
                row("beta", sg.beta);
                row("M11", sg.M(0, 0));
                row("M12", sg.M(0, 1));
                row("M21", sg.M(1, 0));
                row("M22", sg.M(1, 1));
                row("m1_re", sg.m1.real());
                row("m1_im", sg.m1.imag());
                row("m2_re", sg.m2.real());
                row("m2_im", sg.m2.imag());
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        row("Zstd" + std::to_string(i + 1) + std::to_string(j + 1), zs(i, j));
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        row("Zdual" + std::to_string(i + 1) + std::to_string(j + 1), zd(i, j));
            });
            return kPass;
        }
        if (*dual) {
            const GaussianModel d = dual_model(cfg.model);
            // round-trip precision so the output can be fed back as a config
            auto format_number = [](double x) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
                return std::string(buf);
            };
            emit(cfg.csv_out, out, [&](std::ostream& os) {
                os << "omega = " << format_number(d.omega) << '\n'
                   << "kappa_re = " << format_number(d.kappa.real()) << '\n'
                   << "kappa_im = " << format_number(d.kappa.imag()) << '\n'
                   << "zeta_re = " << format_number(d.zeta.real()) << '\n'
                   << "zeta_im = " << format_number(d.zeta.imag()) << '\n';
                for (const auto& k : d.kraus)
                    os << "kraus = " << format_number(k.v.real()) << ' '
                       << format_number(k.v.imag()) << ' ' << format_number(k.u.real()) << ' '
                       << format_number(k.u.imag()) << '\n';
            });
            return kPass;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kCheckFailed;
    }
    return kInvalidInput;
}

} // namespace gqms::cli
