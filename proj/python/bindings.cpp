// Python bindings: weights are lists of ints, oracles are their text form, reports are JSON.

#include "kzero/char_engine.hpp"
#include "kzero/io.hpp"
#include "kzero/oracle.hpp"
#include "kzero/polytope.hpp"
#include "kzero/reconstruction.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace kzero;

namespace {

// Arbitrary-precision conversions go through the decimal form.
Int to_int(const py::handle& h) { return Int(py::str(py::int_(py::reinterpret_borrow<py::object>(h))).cast<std::string>()); }

py::int_ from_int(const Int& x) { return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(x.str().c_str(), nullptr, 10))); }

Vec to_vec(const py::sequence& s) {
    Vec v;
    for (const auto& x : s) v.push_back(to_int(x));
    return v;
}

py::list from_vec(const Vec& v) {
    py::list out;
    for (const auto& x : v) out.append(from_int(x));
    return out;
}

py::tuple key(const Vec& v) { return py::tuple(from_vec(v)); }

std::vector<Vec> to_vecs(const py::sequence& s) {
    std::vector<Vec> out;
    for (const auto& x : s) out.push_back(to_vec(x.cast<py::sequence>()));
    return out;
}

py::list from_vecs(const std::vector<Vec>& vs) {
    py::list out;
    for (const auto& v : vs) out.append(from_vec(v));
    return out;
}

py::dict from_element(const SemiringElement& e) {
    py::dict out;
    for (const auto& [w, m] : e.terms()) out[key(w)] = from_int(m);
    return out;
}

RootDatum make_datum(std::size_t rank, const py::sequence& roots, const py::sequence& coroots, std::string name) {
    return RootDatum(RootDatumData{rank, to_vecs(roots), to_vecs(coroots), std::move(name)});
}

RootDatum fixture(const std::string& name) {
    auto d = fixtures::by_name(name);
    if (!d) throw py::key_error("unknown fixture: " + name);
    return *d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Root data, tensor products and reconstruction from product tables";

    py::register_exception<InvalidRootDatum>(m, "InvalidRootDatum", PyExc_ValueError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<OracleParseError>(m, "OracleParseError", PyExc_ValueError);
    py::register_exception<NotDominant>(m, "NotDominant", PyExc_ValueError);

    py::class_<RootDatum>(m, "RootDatum")
        .def(py::init(&make_datum), py::arg("rank"), py::arg("simple_roots"), py::arg("simple_coroots"),
             py::arg("name") = "")
        .def_static("fixture", &fixture, py::arg("name"))
        .def_static("from_json", [](const std::string& text) { return parse_datum(text); })
        .def("to_json", [](const RootDatum& d) { return dump(datum_to_json(d)); })
        .def_property_readonly("name", &RootDatum::name)
        .def_property_readonly("rank", &RootDatum::rank)
        .def_property_readonly("semisimple_rank", &RootDatum::semisimple_rank)
        .def_property_readonly("simple_roots", [](const RootDatum& d) { return from_vecs(d.simple_roots()); })
        .def_property_readonly("simple_coroots", [](const RootDatum& d) { return from_vecs(d.simple_coroots()); })
        .def_property_readonly("weyl_order", [](const RootDatum& d) { return weyl_group(d).order(); })
        .def("__repr__", [](const RootDatum& d) { return "RootDatum(" + d.name() + ", rank " + std::to_string(d.rank()) + ")"; });

    m.def("fixture_names", &fixtures::names);
    m.def("isomorphic", [](const RootDatum& a, const RootDatum& b) { return root_data_isomorphic(a, b).has_value(); });
    m.def("is_dominant", [](const RootDatum& d, const py::sequence& w) { return is_dominant(d, to_vec(w)); });
    m.def("orbit", [](const RootDatum& d, const py::sequence& w) { return from_vecs(orbit(d, to_vec(w))); });

    m.def("dimension", [](const RootDatum& d, const py::sequence& w) { return from_int(dimension(d, to_vec(w))); });
    m.def("tensor_decompose", [](const RootDatum& d, const py::sequence& a, const py::sequence& b) {
        return from_element(tensor_decompose(d, to_vec(a), to_vec(b)));
    });
    m.def("prv_components", [](const RootDatum& d, const py::sequence& a, const py::sequence& b) {
        return from_vecs(prv_components(d, to_vec(a), to_vec(b)));
    });

    m.def("dominance_leq", [](const RootDatum& d, const py::sequence& mu, const py::sequence& lambda) {
        return dominance_leq(d, to_vec(mu), to_vec(lambda));
    });
    m.def("hull_contains_orbit", [](const RootDatum& d, const py::sequence& mu, const py::sequence& lambda) {
        return hull_contains_orbit(d, to_vec(mu), to_vec(lambda));
    });
    m.def(
        "order_criteria",
        [](const RootDatum& d, const py::sequence& mu, const py::sequence& lambda, unsigned n_max) {
            CharacterEngine e(d);
            auto c = order_criteria_agree(e, to_vec(mu), to_vec(lambda), n_max);
            return py::make_tuple(c.a, c.b, c.c);
        },
        py::arg("datum"), py::arg("mu"), py::arg("lam"), py::arg("n_max") = 3);
    m.def(
        "quantized_cover_check",
        [](const py::sequence& points, unsigned n) {
            auto v = quantized_cover_check(to_vecs(points), n);
            py::dict out;
            out["status"] = v.to_string().substr(0, v.to_string().find(' '));
            out["radius_squared"] = py::str(v.radius_squared.str());
            out["lattice_points"] = v.lattice_points;
            out["counterexample"] = v.counterexample ? py::object(from_vec(*v.counterexample)) : py::none();
            return out;
        },
        py::arg("points"), py::arg("n"));

    m.def(
        "materialize_oracle",
        [](const RootDatum& d, unsigned long bound, std::uint64_t seed, unsigned long horizon) {
            auto mo = materialize_oracle(d, bound, {seed, horizon});
            py::dict provenance;
            for (const auto& [label, w] : mo.provenance) provenance[py::str(label)] = from_vec(w);
            return py::make_tuple(mo.table.serialize(), provenance);
        },
        py::arg("datum"), py::arg("bound") = 4, py::arg("seed") = 1, py::arg("horizon") = 0);
    m.def("validate_oracle", [](const std::string& text) {
        auto v = validate_oracle(parse_oracle(text));
        py::dict out;
        out["ok"] = v.ok;
        out["axiom"] = v.axiom;
        out["witnesses"] = v.witnesses;
        out["detail"] = v.detail;
        return out;
    });
    m.def(
        "recover_datum_json",
        [](const std::string& text, unsigned n_max, unsigned theta_depth) {
            OracleTable t = parse_oracle(text);
            ReconstructionParams params;
            params.n_max = n_max;
            params.theta_depth = theta_depth;
            py::gil_scoped_release release;
            return recover_datum(t, params).to_json(t);
        },
        py::arg("oracle"), py::arg("n_max") = 3, py::arg("theta_depth") = 2);
    m.def("datum_from_report", [](const std::string& json) { return datum_from_report(json); });
}
