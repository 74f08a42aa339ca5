#include "fixpoint/cli.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fixpoint;

namespace {

Eigen::MatrixXd as_rows(const Points& pts) {
    if (pts.empty()) return {};
    Eigen::MatrixXd m(static_cast<Eigen::Index>(pts.size()), pts.front().size());
    for (std::size_t i = 0; i < pts.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = pts[i].transpose();
    return m;
}

Points from_rows(const Eigen::MatrixXd& m) {
    Points pts;
    for (Eigen::Index i = 0; i < m.rows(); ++i) pts.push_back(m.row(i).transpose());
    return pts;
}

py::dict trace_dict(const Trace& t) {
    py::dict d;
    d["x"] = as_rows(t.x);
    d["b"] = as_rows(t.b);
    d["residual"] = t.residual;
    d["dist_target"] = t.dist_target;
    d["stop_reason"] = std::string(to_string(t.stop_reason));
    return d;
}

} // namespace

PYBIND11_MODULE(_fixpoint, m) {
    m.doc() = "Alternating projections, sequence diagnostics and regularity estimates";

    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);

    py::class_<SetSpec>(m, "Set")
        .def_static("halfspace", &SetSpec::halfspace, py::arg("normal"), py::arg("offset"))
        .def_static("affine", &SetSpec::affine_span, py::arg("point"), py::arg("directions"))
        .def_static("ball", &SetSpec::ball, py::arg("center"), py::arg("radius"))
        .def_static("box", &SetSpec::box, py::arg("lo"), py::arg("hi"))
        .def_static("sphere", &SetSpec::sphere, py::arg("center"), py::arg("radius"))
        .def_static("points", [](const Eigen::MatrixXd& rows) { return SetSpec::points(from_rows(rows)); })
        .def_static("union", &SetSpec::set_union)
        .def_static("whole", &SetSpec::whole)
        .def_static("from_json", [](const std::string& s) { return set_from_json(Json::parse(s)); })
        .def("to_json", [](const SetSpec& s) { return set_json(s).dump(); })
        .def_property_readonly("dim", &SetSpec::dim)
        .def_property_readonly("name", [](const SetSpec& s) { return std::string(s.name()); })
        .def_property_readonly("is_convex", &SetSpec::is_convex)
        .def("distance", [](const SetSpec& s, const Vector& x) { return distance(s, x); })
        .def("project", [](const SetSpec& s, const Vector& x) { return as_rows(project_all(s, x).points); },
             "All nearest points, one per row, lexicographically sorted")
        .def("project_one", [](const SetSpec& s, const Vector& x) { return project_one(s, x); })
        .def("contains", [](const SetSpec& s, const Vector& x) { return contains(s, x); })
        .def("__repr__", [](const SetSpec& s) { return "<Set " + std::string(s.name()) + ">"; });

    m.def("sawtooth", &sawtooth_graph, py::arg("depth") = 20);

    m.def(
        "run_ap",
        [](const SetSpec& A, const SetSpec& B, const Vector& start, int max_iter, double residual_tol,
           std::optional<SetSpec> target) {
            IterationConfig cfg;
            cfg.start = start;
            cfg.max_iter = max_iter;
            cfg.residual_tol = residual_tol;
            if (target) cfg.target = Target::exact(*target);
            return trace_dict(run(OperatorSpec::ap(A, B), cfg));
        },
        py::arg("A"), py::arg("B"), py::arg("start"), py::arg("max_iter") = 100000, py::arg("residual_tol") = 1e-12,
        py::arg("target") = py::none());

    m.def(
        "q_rate",
        [](const Eigen::MatrixXd& xs, const Vector& limit) { return estimate_q_rate(from_rows(xs), limit).c; },
        py::arg("xs"), py::arg("limit"));
    m.def(
        "r_rate",
        [](const Eigen::MatrixXd& xs, const Vector& limit) {
            const auto r = estimate_r_rate(from_rows(xs), limit);
            return py::make_tuple(r.c, r.gamma);
        },
        py::arg("xs"), py::arg("limit"));

    m.def(
        "sr_prime",
        [](const SetSpec& A, const SetSpec& B, const SetSpec& C, const Vector& base, double delta, std::size_t samples,
           std::uint64_t seed) {
            return estimate_sr_prime(A, B, Target::exact(C), base, delta, Lambda::whole(), samples, seed).value;
        },
        py::arg("A"), py::arg("B"), py::arg("intersection"), py::arg("base_point"), py::arg("delta"),
        py::arg("samples") = 20000, py::arg("seed") = 0);
    m.def(
        "sr",
        [](const SetSpec& A, const SetSpec& B, const SetSpec& C, const Vector& base, double delta, std::size_t samples,
           std::uint64_t seed) {
            return estimate_sr(A, B, Target::exact(C), base, delta, Lambda::whole(), samples, seed).value;
        },
        py::arg("A"), py::arg("B"), py::arg("intersection"), py::arg("base_point"), py::arg("delta"),
        py::arg("samples") = 20000, py::arg("seed") = 0);
    m.def("predicted_rate_msr", &predicted_rate_msr, py::arg("eps"), py::arg("alpha"), py::arg("kappa"));

    m.def("scenario_names", &builtin_names);
    m.def(
        "scenario_json", [](const std::string& name) { return scenario_json(load_scenario(name)).dump(); },
        py::arg("name"));
    m.def(
        "_run_scenario",
        [](const std::string& config_json_text) {
            const auto out = run_scenario(config_from_json(Json::parse(config_json_text)));
            py::dict d;
            d["trace_csv"] = out.trace_csv;
            d["trace_json"] = out.trace_json;
            d["report_json"] = out.report_json;
            d["plot_svg"] = out.plot_svg;
            d["mismatches"] = out.mismatches;
            return d;
        },
        py::arg("config_json"));
    m.def(
        "_estimate",
        [](const std::string& constant, const std::string& scenario, std::optional<double> delta, std::size_t samples,
           std::uint64_t seed) {
            std::ostringstream out, err;
            if (cmd_estimate(constant, scenario, delta, samples, seed, out, err) != 0) throw DomainError(err.str());
            return out.str();
        },
        py::arg("constant"), py::arg("scenario"), py::arg("delta") = py::none(), py::arg("samples") = 20000,
        py::arg("seed") = 0);
    m.def(
        "_criterion",
        [](int id, std::uint64_t seed) {
            const auto r = run_criterion(id, seed);
            return py::make_tuple(r.pass, r.title, r.summary, r.report.dump());
        },
        py::arg("id"), py::arg("seed") = 0);
    m.def("suite_criteria", &suite_criteria, py::arg("suite"));
}
