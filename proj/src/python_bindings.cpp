// pybind11 module exposing the schedule compiler to Python. Reports come back
// as plain dicts so callers need no C++ types beyond Code and Schedule.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "louvre/absent.hpp"
#include "louvre/circuit.hpp"
#include "louvre/code.hpp"
#include "louvre/metrics.hpp"
#include "louvre/optimize.hpp"
#include "louvre/router.hpp"
#include "louvre/schedule.hpp"
#include "louvre/verify.hpp"

namespace py = pybind11;
using namespace louvre;

namespace {

Scheme parse_scheme(const std::string& name) {
    std::optional<Scheme> sc = scheme_from_name(name);
    if (!sc) throw std::invalid_argument("unknown scheme '" + name + "'");
    return *sc;
}

Schedule build_scheme(const CodeSpec& c, const std::string& name, std::int64_t budget_ms) {
    Scheme sc = parse_scheme(name);
    switch (sc) {
        case Scheme::Regular: return build_regular(c);
        case Scheme::L7: return build_louvre7(c);
        case Scheme::L8: return build_louvre8(c);
        case Scheme::L7R: return optimize_ordering(c, Scheme::L7R, {budget_ms, false});
        case Scheme::L8R: return optimize_ordering(c, Scheme::L8R, {budget_ms, false});
        case Scheme::CxswapOnly: return optimize_ordering(c, Scheme::L8R, {budget_ms, true});
        default: throw std::invalid_argument("scheme '" + name + "' cannot be built directly");
    }
}

py::dict stage_dict(const StageResult& st) {
    py::dict d;
    d["ran"] = st.ran;
    d["passed"] = st.passed;
    d["detail"] = st.detail;
    return d;
}

py::dict verify_dict(const CodeSpec& c, const Schedule& s) {
    VerificationReport rep = verify_schedule(c, s);
    py::dict d;
    d["code"] = rep.code_name;
    d["scheme"] = rep.scheme;
    d["reversed_rounds"] = rep.reversed_rounds;
    d["commutation"] = rep.commutation.commutes;
    d["determinism"] = stage_dict(rep.determinism);
    d["dictionary"] = stage_dict(rep.dictionary);
    d["logicals"] = stage_dict(rep.logicals);
    d["restoration"] = stage_dict(rep.restoration);
    d["verified"] = rep.verified;
    return d;
}

py::dict metrics_dict(const CodeSpec& c, const Schedule& s) {
    MetricsReport m = metrics_report(c, s);
    static const char* roles[4] = {"L", "R", "X", "Z"};
    py::dict by_role;
    for (int r = 0; r < 4; ++r) {
        py::dict entry;
        entry["degree"] = to_string(m.by_role[r].degree);
        entry["distance"] = to_string(m.by_role[r].total_distance);
        by_role[roles[r]] = entry;
    }
    py::dict d;
    d["degree"] = to_string(m.avg_degree);
    d["distance"] = to_string(m.avg_total_distance);
    d["degree_float"] = m.avg_degree.to_double();
    d["distance_float"] = m.avg_total_distance.to_double();
    d["couplers"] = m.coupler_count;
    d["long_couplers"] = m.long_count;
    d["by_role"] = by_role;
    return d;
}

py::dict route_dict(const CodeSpec& c, const Schedule& s, std::uint64_t seed) {
    CouplerGraph g = extract_coupler_graph(c, s);
    RoutingResult r = route_multitier(g, seed);
    py::list paths;
    for (const RoutedPath& p : r.paths) {
        const CouplerInfo& ci = g.couplers[std::size_t(p.coupler)];
        py::list cells;
        for (const GridCell& cell : p.cells)
            cells.append(py::make_tuple(cell.col, cell.row, cell.layer));
        py::dict e;
        e["sites"] = py::make_tuple(ci.site_a, ci.site_b);
        e["tier"] = p.tier;
        e["bumps"] = p.bumps;
        e["cells"] = cells;
        paths.append(e);
    }
    py::dict d;
    d["valid"] = validate_routing(g, r.paths);
    d["tiers"] = r.report.tiers;
    d["length"] = r.report.avg_length;
    d["bumps"] = r.report.bumps_per_coupler;
    d["tsvs"] = r.report.tsvs_per_coupler;
    d["paths"] = paths;
    return d;
}

py::dict emit_dict(const CodeSpec& c, const Schedule& s, int rounds, double p,
                   double swap_factor) {
    CircuitDocument doc = emit_circuit(c, s, rounds, {p, swap_factor});
    py::dict d;
    d["text"] = doc.text;
    d["qubits"] = doc.n_qubits;
    d["rounds"] = doc.rounds;
    d["detectors"] = doc.detectors;
    d["observables"] = doc.observables;
    d["measurements"] = doc.measurements;
    return d;
}

}  // namespace

PYBIND11_MODULE(_louvre, mod) {
    mod.doc() = "syndrome-extraction schedule compiler and layout toolkit";

    py::register_exception<ParseError>(mod, "CodeParseError", PyExc_ValueError);
    py::register_exception<TrackError>(mod, "ScheduleError", PyExc_RuntimeError);

    py::class_<CodeSpec>(mod, "Code")
        .def_readonly("name", &CodeSpec::name)
        .def_readonly("l", &CodeSpec::l)
        .def_readonly("m", &CodeSpec::m)
        .def_property_readonly("n", &CodeSpec::n_data)
        .def_property_readonly("qubits", &CodeSpec::n_total)
        .def_property_readonly("k", [](const CodeSpec& c) { return compute_k(c); })
        .def("__repr__", [](const CodeSpec& c) {
            return "<Code " + c.name + " [[" + std::to_string(c.n_data()) + ", " +
                   std::to_string(compute_k(c)) + "]]>";
        });

    py::class_<Schedule>(mod, "Schedule")
        .def_property_readonly("scheme",
                               [](const Schedule& s) { return std::string(scheme_name(s.scheme)); })
        .def_property_readonly("depth", &Schedule::depth)
        .def("table", &to_instruction_table)
        .def("__repr__", [](const Schedule& s) {
            return "<Schedule " + std::string(scheme_name(s.scheme)) + " depth " +
                   std::to_string(s.depth()) + ">";
        });

    mod.def("parse_code", &parse_code_text, py::arg("text"), py::arg("origin") = "<string>",
            "Parse a code definition from text.");
    mod.def("load_code", &parse_code_file, py::arg("path"),
            "Parse a code definition file.");
    mod.def("build_schedule", &build_scheme, py::arg("code"), py::arg("scheme"),
            py::arg("budget_ms") = std::int64_t(60'000),
            "Build a fixed-layout schedule or search for an ordered one.");
    mod.def("parse_table", &from_instruction_table, py::arg("text"), py::arg("code"),
            "Parse an instruction table against a code.");
    mod.def("verify", &verify_dict, py::arg("code"), py::arg("schedule"),
            "Run the full verification suite; returns a report dict.");
    mod.def("metrics", &metrics_dict, py::arg("code"), py::arg("schedule"),
            "Connectivity metrics (degree, interaction distance) for a schedule.");
    mod.def("route", &route_dict, py::arg("code"), py::arg("schedule"),
            py::arg("seed") = std::uint64_t(1),
            "Route long couplers across routing tiers; returns a report dict.");
    mod.def("emit", &emit_dict, py::arg("code"), py::arg("schedule"), py::arg("rounds") = 2,
            py::arg("p") = 0.0, py::arg("swap_factor") = 1.5,
            "Emit a noise-annotated multi-round circuit; returns a document dict.");
    mod.def("hypergraph_product_params", [](int seed_n, int seed_k, bool periodic) {
        HgpParams h = hypergraph_product_params(
            seed_n, seed_k, periodic ? Boundary::Periodic : Boundary::Open);
        return py::make_tuple(h.n, h.k);
    }, py::arg("seed_n"), py::arg("seed_k"), py::arg("periodic") = true,
       "[n, k] of the hypergraph product of a classical seed code with itself.");
}
