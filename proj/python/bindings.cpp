#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gqms/fock_numerics.hpp"
#include "gqms/spectrum.hpp"
#include "gqms/standardization.hpp"
#ifdef GQMS_WITH_CLI
#include "gqms/cli.hpp"
#include <sstream>
#endif

namespace py = pybind11;
using namespace gqms;

namespace {

py::list lattice_rows(const SpectrumPrediction& p)
{
    py::list rows;
    for (const auto& pt : p.points)
        rows.append(py::make_tuple(pt.value, pt.n, pt.m, pt.multiplicity));
    return rows;
}

Embedding embedding_from(const std::string& name)
{
    if (name == "kms" || name == "KMS")
        return Embedding::KMS;
    if (name == "gns" || name == "GNS")
        return Embedding::GNS;
    throw std::invalid_argument("embedding must be 'kms' or 'gns'");
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);

    py::class_<WickPoly>(m, "WickPoly")
        .def(py::init<>())
        .def_static("identity", &WickPoly::identity, py::arg("c") = cplx(1.0))
        .def_static("monomial", &WickPoly::monomial, py::arg("n"), py::arg("m"),
                    py::arg("c") = cplx(1.0))
        .def_static("lower", &WickPoly::lower)
        .def_static("raise_", &WickPoly::raise)
        .def_static("number", &WickPoly::number)
        .def("coeff", &WickPoly::coeff)
        .def("degree", &WickPoly::degree)
        .def("is_zero", &WickPoly::is_zero)
        .def("terms",
             [](const WickPoly& p) {
                 py::dict d;
                 for (const auto& [k, c] : p.terms())
                     d[py::make_tuple(k.first, k.second)] = c;
                 return d;
             })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(-py::self)
        .def(py::self * py::self)
        .def("__mul__", [](const WickPoly& p, cplx c) { return p * c; })
        .def("__rmul__", [](const WickPoly& p, cplx c) { return c * p; })
        .def("__repr__", &WickPoly::to_string);

    m.def("commutator", &commutator);
    m.def("adjoint", &adjoint);
    m.def("modular_transform", &modular_transform, py::arg("p"), py::arg("s"), py::arg("beta"));
    m.def("thermal_expectation", &thermal_expectation, py::arg("p"), py::arg("beta"));
    m.def("max_abs_diff", &max_abs_diff);

    py::class_<GaussianModel>(m, "GaussianModel")
        .def(py::init([](double omega, cplx kappa, cplx zeta,
                         const std::vector<std::pair<cplx, cplx>>& kraus) {
                 GaussianModel g{omega, kappa, zeta, {}};
                 for (const auto& [v, u] : kraus)
                     g.kraus.push_back({v, u});
                 return g;
             }),
             py::arg("omega"), py::arg("kappa") = cplx(0.0), py::arg("zeta") = cplx(0.0),
             py::arg("kraus"))
        .def_readwrite("omega", &GaussianModel::omega)
        .def_readwrite("kappa", &GaussianModel::kappa)
        .def_readwrite("zeta", &GaussianModel::zeta)
        .def_property_readonly("kraus",
                               [](const GaussianModel& g) {
                                   std::vector<std::pair<cplx, cplx>> out;
                                   for (const auto& k : g.kraus)
                                       out.emplace_back(k.v, k.u);
                                   return out;
                               })
        .def("hamiltonian", &GaussianModel::hamiltonian)
        .def("noise", &GaussianModel::noise);

    m.def("m0", &reference::m0);
    m.def("m1", &reference::m1);
    m.def("m2", &reference::m2);

    m.def("validate", [](const GaussianModel& g) {
        const ModelReport r = validate(g);
        py::dict d;
        d["gamma"] = r.gamma;
        d["beta"] = r.beta;
        d["invariant_exists"] = r.invariant_exists;
        d["faithful_thermal"] = r.faithful_thermal;
        d["diagonal"] = r.diagonal;
        d["stable"] = r.stable;
        return d;
    });
    m.def("drift_matrix", &drift_matrix);
    m.def("diffusion_matrix", &diffusion_matrix);
    m.def("dual_model", &dual_model);

    m.def("apply_generator", &apply_generator);
    m.def("apply_dual_generator", &apply_dual_generator);
    m.def("quasi_derivation_residual", &quasi_derivation_residual);
    m.def("triangular_representation", [](const GaussianModel& g, double s, int degree) {
        const TriangularRep t = triangular_representation(g, s, degree);
        return py::make_tuple(t.matrix, t.labels);
    });

    m.def("base_eigenvalues", [](const GaussianModel& g) {
        const BaseEigenvalues b = base_eigenvalues(g);
        return py::make_tuple(b.lambda, b.mu, b.defective);
    });
    m.def("predicted_lattice",
          [](cplx lambda, cplx mu, bool defective, int degree) {
              return lattice_rows(predicted_lattice(lambda, mu, defective, degree));
          },
          py::arg("lambda_"), py::arg("mu"), py::arg("defective") = false, py::arg("max_degree") = 5);
    m.def("spectral_gap", [](const GaussianModel& g, const std::string& e) {
        return spectral_gap(g, embedding_from(e));
    });
    m.def("gap_report", [](const GaussianModel& g) {
        const GapReport r = gap_report(g);
        py::dict d;
        d["gap_kms"] = r.gap_kms;
        d["gap_gns"] = r.gap_gns;
        d["zero_simple_kms"] = r.zero_simple_kms;
        d["zero_simple_gns"] = r.zero_simple_gns;
        d["note_kms"] = r.note_kms;
        d["note_gns"] = r.note_gns;
        return d;
    });

    m.def("induced_eigenvalues",
          [](const GaussianModel& g, int n_max, double s, int k) {
              const TruncatedRep rep = build_rep(g, n_max);
              py::list out;
              for (const auto& e : numeric_eigs(induced_superop(rep, g, s), k))
                  out.append(py::make_tuple(e.value, e.interior));
              return out;
          },
          py::arg("model"), py::arg("n_max") = 30, py::arg("s") = 0.5, py::arg("k") = 6);
    m.def("phi_t", &phi_t, py::arg("model"), py::arg("z"), py::arg("t"));
    m.def("verify_weyl_action",
          [](const GaussianModel& g, int n_max, cplx z, double t) {
              return verify_weyl_action(build_rep(g, n_max), g, z, t);
          },
          py::arg("model"), py::arg("n_max"), py::arg("z"), py::arg("t"));

    m.def("stationary_gaussian", [](const GaussianModel& g) {
        const StationaryGaussian sg = stationary_gaussian(g);
        py::dict d;
        d["omega"] = sg.omega;
        d["S"] = sg.S;
        d["nu"] = sg.nu;
        d["M"] = sg.M;
        d["m1"] = sg.m1;
        d["m2"] = sg.m2;
        d["beta"] = sg.beta;
        return d;
    });
    m.def("standardized_drifts", &standardized_drifts);

#ifdef GQMS_WITH_CLI
    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
#endif
}
