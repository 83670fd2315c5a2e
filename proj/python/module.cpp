#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <sstream>

#include "wcop/cli.hpp"
#include "wcop/errors.hpp"
#include "wcop/report.hpp"
#include "wcop/rootcheck.hpp"

namespace py = pybind11;
using namespace wcop;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Polynomial as_poly(const std::string& text) {
    auto p = parse_expr(text, 1).as_polynomial();
    if (!p) throw NotApplicable("'" + text + "' is not a polynomial");
    return *p;
}

ClassifierConfig make_config(unsigned alpha_max, const std::string& q_max, unsigned n_max, int grid_J, bool evidence,
                             const std::vector<std::string>& disabled) {
    ClassifierConfig cfg;
    cfg.probe.alpha_max = alpha_max;
    cfg.probe.q_max = parse_rational(q_max);
    cfg.probe.n_max = n_max;
    cfg.probe.grid.J = grid_J;
    cfg.evidence = evidence;
    cfg.disabled_rules.insert(disabled.begin(), disabled.end());
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_wcop, m) {
    m.doc() = "Weighted composition operators on the Schwartz space";
    m.attr("__version__") = kToolVersion;

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<SyntaxError>(m, "ParseError", base.ptr());
    py::register_exception<PositivityError>(m, "PositivityError", base.ptr());
    py::register_exception<GrammarClosureError>(m, "GrammarClosureError", base.ptr());
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
    py::register_exception<InvalidRange>(m, "InvalidRange", base.ptr());
    py::register_exception<ZeroPolynomial>(m, "ZeroPolynomial", base.ptr());
    py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
    py::register_exception<PreconditionViolated>(m, "PreconditionViolated", base.ptr());
    py::register_exception<NotApplicable>(m, "NotApplicable", base.ptr());
    py::register_exception<InternalInconsistency>(m, "InternalInconsistency", base.ptr());

    py::class_<Expr>(m, "Expr")
        .def(py::init([](const std::string& text, std::size_t dim) { return parse_expr(text, dim); }), py::arg("text"),
             py::arg("dim") = 1)
        .def_property_readonly("dim", &Expr::dim)
        .def("is_polynomial", &Expr::is_polynomial)
        .def("is_exp_free", &Expr::is_exp_free)
        .def("differentiate", &Expr::differentiate, py::arg("axis") = 0)
        .def(
            "derivative", [](const Expr& e, std::vector<unsigned> alpha) { return e.derivative(MultiIndex(alpha)); },
            py::arg("alpha"))
        .def("compose", &Expr::compose, py::arg("inner"))
        .def("evaluate", &Expr::evaluate, py::arg("x"))
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self == py::self)
        .def("__str__", &Expr::to_string)
        .def("__repr__", [](const Expr& e) { return "Expr('" + e.to_string() + "')"; });

    m.def(
        "classify",
        [](const std::string& psi, const std::string& phi, std::size_t dim, bool phase, unsigned alpha_max,
           const std::string& q_max, unsigned n_max, int grid_J, bool evidence,
           const std::vector<std::string>& disabled_rules) {
            ClassifierConfig cfg = make_config(alpha_max, q_max, n_max, grid_J, evidence, disabled_rules);
            SymbolPair sp = SymbolPair::parse(psi, phi, dim, phase);
            ClassificationReport r;
            {
                py::gil_scoped_release release;
                r = full_report(sp, cfg);
            }
            return to_python(report_json(sp, cfg, r));
        },
        "Classify C_{psi,phi}; returns the report document as a dict.", py::arg("psi"), py::arg("phi"),
        py::arg("dim") = 1, py::arg("phase") = false, py::arg("alpha_max") = 4, py::arg("q_max") = "16",
        py::arg("n_max") = 8, py::arg("grid_J") = 512, py::arg("evidence") = true,
        py::arg("disabled_rules") = std::vector<std::string>{});

    m.def(
        "exists_q",
        [](const std::string& g, const std::string& phi, const std::string& p) -> std::optional<std::string> {
            auto q = exists_q(as_poly(g), as_poly(phi), parse_rational(p));
            if (!q) return std::nullopt;
            return to_string(*q);
        },
        "Smallest q with sup (1+|x|)^p |g| / (1+|phi|)^q finite, as a string.", py::arg("g"), py::arg("phi"),
        py::arg("p"));

    m.def(
        "has_fixed_point", [](const std::string& phi) { return has_fixed_point(as_poly(phi)).first; },
        py::arg("phi"));

    m.def(
        "check_exp_inequality",
        [](std::vector<unsigned> alphas, unsigned n_min, unsigned n_max) {
            ExpIneqOptions opts;
            opts.alphas = alphas;
            opts.n_min = n_min;
            opts.n_max = n_max;
            return to_python(exp_ineq_json(check_exp_inequality(opts)));
        },
        py::arg("alphas") = std::vector<unsigned>{0, 1, 2}, py::arg("n_min") = 1, py::arg("n_max") = 8);

    m.def("corpus", []() { return to_python(corpus_json(builtin_corpus())); });

    m.def(
        "run_corpus",
        [](const std::vector<std::string>& disabled_rules) {
            ClassifierConfig cfg;
            cfg.disabled_rules.insert(disabled_rules.begin(), disabled_rules.end());
            CorpusOutcome out = run_corpus(builtin_corpus(), cfg);
            py::list mismatches;
            for (const auto& mm : out.mismatches) mismatches.append(py::make_tuple(mm.id, mm.property));
            return py::make_tuple(out.passed, out.entries, mismatches);
        },
        "(passed, entries, [(id, property), ...]) over the built-in corpus.",
        py::arg("disabled_rules") = std::vector<std::string>{});

    m.def(
        "cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        "Run the command-line tool in process; returns (exit code, stdout, stderr).", py::arg("args"));
}
