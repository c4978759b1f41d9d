#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "alg/commands.hpp"
#include "alg/document.hpp"

namespace py = pybind11;
using namespace alg;

namespace {

// Reports cross the boundary as JSON text; the Python side parses them.
std::string run(const std::string& command, const std::string& target, std::uint64_t seed, int samples, double tol,
                bool complex_frame, const std::string& direction, const std::vector<int>& orders,
                const std::string& source, const std::string& other, const std::string& projector) {
    RunOptions opt;
    opt.zero.seed = seed;
    opt.zero.samples = samples;
    opt.zero.tol = tol;
    opt.complex_frame = complex_frame;
    opt.direction = direction;
    opt.orders = orders;
    opt.source = source;
    opt.other = other;
    opt.projector = projector;
    CommandResult r = run_command(command, target, opt);
    return r.report.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Lie algebroid geometry checks";
    m.attr("SCHEMA_VERSION") = kSchemaVersion;

    py::register_exception<DocumentError>(m, "DocumentError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

    m.def("commands", &command_names);
    m.def("fixtures", &fixture_names);
    m.def("run", &run, py::arg("command"), py::arg("target") = "", py::arg("seed") = 42, py::arg("samples") = 8,
          py::arg("tol") = 1e-9, py::arg("complex_frame") = false, py::arg("direction") = "",
          py::arg("orders") = std::vector<int>{1}, py::arg("source") = "both", py::arg("other") = "",
          py::arg("projector") = "", py::call_guard<py::gil_scoped_release>());
    m.def("schema_errors", [](const std::string& report) { return schema_errors(nlohmann::ordered_json::parse(report)); });

    py::class_<Geometry>(m, "Geometry")
        .def_static("fixture", &fixture, py::arg("expr"))
        .def_static("parse", &parse_document, py::arg("text"), py::arg("file") = "<input>")
        .def_static("load", [](const std::string& path) { return load_document(path); }, py::arg("path"))
        .def_readonly("name", &Geometry::name)
        .def_property_readonly("rank", [](const Geometry& G) { return G.A->rank(); })
        .def_property_readonly("dim", [](const Geometry& G) { return G.A->dim(); })
        .def_property_readonly("coords", [](const Geometry& G) { return G.A->chart().coords(); })
        .def_property_readonly("has_J", [](const Geometry& G) { return G.J.has_value(); })
        .def_property_readonly("has_metric", [](const Geometry& G) { return G.g.has_value(); })
        .def("is_valid", [](const Geometry& G) { return G.A->validation().valid(); })
        .def("emit", &emit_document)
        .def("__eq__", &structurally_equal)
        .def("__repr__", [](const Geometry& G) {
            return "<Geometry " + G.name + " rank=" + std::to_string(G.A->rank()) +
                   " dim=" + std::to_string(G.A->dim()) + ">";
        });
}
