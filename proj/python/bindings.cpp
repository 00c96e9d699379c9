#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "config.hpp"
#include "reports.hpp"
#include "sovxxz/errors.hpp"
#include "sovxxz/observables.hpp"

namespace py = pybind11;
using namespace sovxxz;

namespace {

FFForm parse_form(const std::string& s) {
    if (s == "roots") return FFForm::Roots;
    if (s == "tau") return FFForm::Tau;
    throw ParameterError("form must be 'roots' or 'tau'");
}

LocalOp parse_op(const std::string& s) {
    if (s == "z") return LocalOp::Z;
    if (s == "+") return LocalOp::Plus;
    if (s == "-") return LocalOp::Minus;
    throw ParameterError("operator must be 'z', '+' or '-'");
}

std::string run_report(const std::string& command, const std::string& config_json,
                       std::optional<std::uint64_t> seed, const std::vector<std::string>& tol) {
    app::RunConfig c = app::parse_config(app::json::parse(config_json.empty() ? "{}" : config_json));
    if (seed) c.seed = *seed;
    for (const auto& t : tol) app::apply_tolerance_override(c, t);
    app::Report r;
    if (command == "validate")
        r = app::run_validate(c);
    else if (command == "spectrum")
        r = app::run_spectrum(c);
    else if (command == "observables")
        r = app::run_observables(c);
    else
        throw ConfigError("unknown command '" + command + "'");
    return r.body.dump(2);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Separation-of-variables toolkit for the antiperiodic XXZ chain";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DimensionError>(m, "DimensionError", base);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base);
    py::register_exception<ParameterError>(m, "ParameterError", base);
    py::register_exception<SizeError>(m, "SizeError", base);
    py::register_exception<SingularError>(m, "SingularError", base);
    py::register_exception<DegeneracyError>(m, "DegeneracyError", base);
    py::register_exception<PreconditionError>(m, "PreconditionError", base);
    py::register_exception<CertificationError>(m, "CertificationError", base);
    py::register_exception<ConfigError>(m, "ConfigError", base);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def(py::init([](int N, cplx eta, std::vector<cplx> xi, cplx kappa, cplx kappa2) {
                 ModelParams p;
                 p.N = N;
                 p.eta = eta;
                 p.xi = std::move(xi);
                 p.kappa = kappa;
                 p.kappa2 = kappa2;
                 p.validate();
                 return p;
             }),
             py::arg("N"), py::arg("eta"), py::arg("xi"), py::arg("kappa") = cplx(1.0),
             py::arg("kappa2") = cplx(1.3, 0.2))
        .def_readwrite("N", &ModelParams::N)
        .def_readwrite("eta", &ModelParams::eta)
        .def_readwrite("xi", &ModelParams::xi)
        .def_readwrite("kappa", &ModelParams::kappa)
        .def_readwrite("kappa2", &ModelParams::kappa2)
        .def_readwrite("delta_min", &ModelParams::delta_min)
        .def("validate", &ModelParams::validate);

    m.def("generate_xi", &generate_xi, py::arg("N"), py::arg("eta"), py::arg("seed"), py::arg("re_lo") = -1.0,
          py::arg("re_hi") = 1.0, py::arg("im_lo") = -0.4, py::arg("im_hi") = 0.4, py::arg("min_sep") = 0.1,
          py::arg("max_tries") = 100);

    py::class_<HalfPeriodTrigPoly>(m, "Poly")
        .def(py::init<std::vector<cplx>>(), py::arg("roots"))
        .def("__call__", &HalfPeriodTrigPoly::operator(), py::arg("l"))
        .def_property_readonly("roots", &HalfPeriodTrigPoly::roots)
        .def_property_readonly("degree", &HalfPeriodTrigPoly::degree);

    py::class_<EigenRecord>(m, "EigenRecord")
        .def_readonly("tau_at_xi", &EigenRecord::tau_at_xi)
        .def_readonly("Q", &EigenRecord::Q)
        .def_readonly("Qhat", &EigenRecord::Qhat)
        .def_readonly("eps", &EigenRecord::eps)
        .def_readonly("vector", &EigenRecord::vector)
        .def_readonly("tq_residual", &EigenRecord::tq_residual)
        .def_readonly("bethe_residual", &EigenRecord::bethe_residual)
        .def_readonly("discrete_residual", &EigenRecord::discrete_residual)
        .def_readonly("eigenstate_residual", &EigenRecord::eigenstate_residual)
        .def_readonly("wronskian_residual", &EigenRecord::wronskian_residual)
        .def_readonly("wronskian_sign", &EigenRecord::wronskian_sign)
        .def_readonly("sum_rule_defect", &EigenRecord::sum_rule_defect)
        .def_readonly("sum_rule_k", &EigenRecord::sum_rule_k)
        .def_readonly("certified", &EigenRecord::certified)
        .def("tau", [](const EigenRecord& r, cplx l) { return r.tau(l); }, py::arg("l"));

    m.def("transfer_matrix", py::overload_cast<const ModelParams&, cplx, cplx>(&transfer_k), py::arg("params"),
          py::arg("l"), py::arg("kappa"));
    m.def("solve_spectrum",
          [](const ModelParams& p, cplx kappa, std::uint64_t seed) { return solve_spectrum(p, kappa, seed); },
          py::arg("params"), py::arg("kappa"), py::arg("seed") = 11);

    m.def("sp_direct", &sp_direct, py::arg("params"), py::arg("P"), py::arg("Q"), py::arg("alpha"));
    m.def("sp_izergin", &sp_izergin, py::arg("params"), py::arg("P"), py::arg("Q"), py::arg("alpha"));
    m.def("sp_slavnov", &sp_slavnov, py::arg("params"), py::arg("P"), py::arg("Q"), py::arg("alpha"),
          py::arg("gamma") = std::nullopt, py::arg("cond_tol") = 1e-7);
    m.def(
        "sp_tau",
        [](const ModelParams& p, const EigenRecord& a, const EigenRecord& b, cplx k, cplx k2) {
            const TauForms t = sp_tau(p, a, b, k, k2);
            return std::make_pair(t.izergin, t.slavnov);
        },
        py::arg("params"), py::arg("recP"), py::arg("recQ"), py::arg("kappa"), py::arg("kappa2"));
    m.def(
        "form_factor",
        [](const ModelParams& p, const EigenRecord& a, const EigenRecord& b, cplx k, int n, const std::string& op,
           const std::string& form) {
            const FFForm f = parse_form(form);
            if (parse_op(op) == LocalOp::Z) return ff_sigma_z(p, a, b, k, 1, n, f);
            return ff_sigma_pm(p, a, b, k, 1, n, f);
        },
        py::arg("params"), py::arg("recP"), py::arg("recQ"), py::arg("kappa"), py::arg("site"), py::arg("op"),
        py::arg("form") = "roots");
    m.def(
        "dense_form_factor",
        [](const ModelParams& p, const EigenRecord& a, const EigenRecord& b, cplx k, int n, const std::string& op) {
            const SovBasis basis(p);
            return brute_local(dense_pair(basis, a.Q, k, 1, b.Q, k, 1), parse_op(op), n, p.N);
        },
        py::arg("params"), py::arg("recP"), py::arg("recQ"), py::arg("kappa"), py::arg("site"), py::arg("op"));

    m.def("run_report", &run_report, py::arg("command"), py::arg("config_json") = "",
          py::arg("seed") = std::nullopt, py::arg("tol") = std::vector<std::string>{});
}
