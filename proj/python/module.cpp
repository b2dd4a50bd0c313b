#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fractile/dssf.hpp"
#include "fractile/error.hpp"
#include "fractile/io.hpp"
#include "fractile/refuter.hpp"
#include "fractile/windows.hpp"

namespace py = pybind11;
using namespace fractile;

namespace {

using PyPoint = std::pair<Coord, Coord>;

std::vector<PyPoint> to_py(const PointSet& s) {
    std::vector<PyPoint> out;
    out.reserve(s.size());
    for (Point p : s) out.emplace_back(p.x, p.y);
    return out;
}

PointSet from_py(const std::vector<PyPoint>& pts) {
    PointSet out;
    for (const auto& [x, y] : pts) out.insert({x, y});
    return out;
}

PyPoint to_py(Point p) { return {p.x, p.y}; }

SelectionPolicy policy_of(const std::string& name) {
    if (name == "uniform") return SelectionPolicy::uniform;
    if (name == "lexicographic") return SelectionPolicy::lexicographic;
    throw Error("unknown policy '" + name + "'");
}

py::dict anchor_dict(const PierAnchor& a) {
    py::dict d;
    d["pier"] = to_py(a.pier.position);
    d["pointing"] = std::string(1, to_char(a.pier.pointing));
    d["taxonomy"] = to_string(a.pier.taxonomy);
    d["anchor"] = to_py(a.anchor);
    d["glue_side"] = std::string(1, to_char(a.glue_side));
    d["bridge_offset"] = a.bridge_offset;
    return d;
}

}  // namespace

PYBIND11_MODULE(fractile, m) {
    m.doc() = "Tree fractals, aTAM simulation and window-movie splicing";

    py::register_exception<Error>(m, "FractileError", PyExc_ValueError);

    py::class_<Generator>(m, "Generator")
        .def(py::init([](int g, const std::vector<PyPoint>& cells) { return Generator::make(g, from_py(cells)); }),
             py::arg("g"), py::arg("cells"))
        .def_property_readonly("g", &Generator::g)
        .def_property_readonly("cells", [](const Generator& gen) { return to_py(gen.cells()); })
        .def("text", &write_generator)
        .def("__eq__", [](const Generator& a, const Generator& b) { return a == b; })
        .def("__repr__", [](const Generator& gen) {
            return "<Generator g=" + std::to_string(gen.g()) + " cells=" + std::to_string(gen.cells().size()) + ">";
        });

    m.def("parse_generator", [](const std::string& text) { return parse_generator(text); }, py::arg("text"));

    m.def("stage", [](const Generator& gen, int i) { return to_py(stage(gen, i)); }, py::arg("generator"),
          py::arg("i"));
    m.def("scale", [](const std::vector<PyPoint>& pts, Coord c) { return to_py(scale(from_py(pts), c)); },
          py::arg("points"), py::arg("c"));
    m.def("is_connected", [](const std::vector<PyPoint>& pts) { return is_connected(from_py(pts)); });
    m.def("is_tree", [](const std::vector<PyPoint>& pts) { return is_tree(from_py(pts)); });

    m.def(
        "is_tree_fractal_generator",
        [](const Generator& gen) {
            const auto ch = is_tree_fractal_generator(gen);
            return std::make_pair(ch.tree_fractal, ch.diagnosis);
        },
        py::arg("generator"), "Returns (verdict, diagnosis).");

    m.def(
        "piers",
        [](const Generator& gen) {
            py::list out;
            for (const Pier& p : piers(gen)) {
                out.append(py::make_tuple(to_py(p.position), std::string(1, to_char(p.pointing)),
                                          to_string(p.taxonomy)));
            }
            return out;
        },
        py::arg("generator"));

    m.def("select_pier_anchor", [](const Generator& gen) { return anchor_dict(select_pier_anchor(gen)); },
          py::arg("generator"));

    m.def(
        "census",
        [](int g, bool allow_large) {
            CensusOptions opts;
            opts.g = g;
            opts.allow_large = allow_large;
            const auto st = census(opts);
            py::dict d;
            d["candidates"] = st.candidates;
            d["valid"] = st.valid;
            d["tree_fractal"] = st.tree_fractal;
            py::dict tax;
            for (const auto& [k, n] : st.pier_taxonomy) tax[py::str(to_string(k))] = n;
            d["pier_taxonomy"] = tax;
            d["tree_fractal_generators"] = st.tree_fractal_generators;
            return d;
        },
        py::arg("g"), py::arg("allow_large") = false);

    m.def(
        "translation",
        [](Coord c, int g, int i, int j, Coord e, Coord f, Coord p, Coord q) {
            return to_py(translation(c, g, i, j, e, f, p, q));
        },
        py::arg("c"), py::arg("g"), py::arg("i"), py::arg("j"), py::arg("e"), py::arg("f"), py::arg("p"),
        py::arg("q"));

    m.def(
        "window_inside",
        [](Coord c, int s, int g, Coord e, Coord f, Coord p, Coord q) {
            return to_py(window_inside({c, s, g, e, f, p, q}));
        },
        py::arg("c"), py::arg("s"), py::arg("g"), py::arg("e"), py::arg("f"), py::arg("p"), py::arg("q"));

    m.def("enclosure_bound_ok", &enclosure_bound_ok, py::arg("c"), py::arg("g"), py::arg("i"), py::arg("j"),
          py::arg("x"), py::arg("y"));

    py::class_<TileSystem>(m, "TileSystem")
        .def_property_readonly("temperature", &TileSystem::temperature)
        .def_property_readonly("tile_count", [](const TileSystem& s) { return s.tiles().size(); })
        .def("text", &write_tas);

    m.def("parse_tas", [](const std::string& text) { return parse_tas(text); }, py::arg("text"));

    m.def(
        "run",
        [](const TileSystem& sys, std::tuple<Coord, Coord, Coord, Coord> region, const std::string& policy,
           std::uint64_t seed) {
            const auto [x0, y0, x1, y1] = region;
            const auto seq = run(sys, {Box{x0, y0, x1, y1}, policy_of(policy), seed});
            py::list events;
            for (const auto& ev : seq.events) {
                events.append(py::make_tuple(to_py(ev.position), sys.tiles().at(ev.tile).name));
            }
            py::dict d;
            d["events"] = events;
            d["domain"] = to_py(seq.result.domain());
            d["digest"] = assembly_digest(seq.result);
            d["exhausted"] = seq.exhausted;
            return d;
        },
        py::arg("system"), py::arg("region"), py::arg("policy") = "uniform", py::arg("seed") = 0);

    m.def(
        "refute",
        [](const Generator& gen, const TileSystem& sys, Coord c, int max_stage, std::uint64_t seed,
           const std::string& policy) {
            RefutationConfig cfg{gen, c, sys, max_stage, std::nullopt, policy_of(policy), seed};
            const RefutationOutcome outcome = [&] {
                py::gil_scoped_release release;
                return refute(cfg);
            }();
            py::dict d;
            if (const auto* cert = std::get_if<SpliceCertificate>(&outcome)) {
                d["kind"] = "certificate";
                d["stages"] = std::make_pair(cert->i, cert->j);
                d["c_vec"] = to_py(cert->c_vec);
                d["replay_ok"] = cert->replay_ok;
                std::vector<PyPoint> diff;
                for (Point p : cert->spliced_domain_diff) diff.push_back(to_py(p));
                d["domain_diff"] = diff;
                d["text"] = write_certificate(*cert, sys.tiles());
            } else {
                const auto& report = std::get<NoMatchReport>(outcome);
                d["kind"] = "no-match";
                d["distinct"] = report.distinct.size();
                d["text"] = write_report(report);
            }
            return d;
        },
        py::arg("generator"), py::arg("system"), py::arg("c") = 1, py::arg("max_stage") = 6, py::arg("seed") = 0,
        py::arg("policy") = "uniform");
}
