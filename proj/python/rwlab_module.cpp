#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "rwlab/config.hpp"
#include "rwlab/errors.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

json to_json(const py::handle& obj) {
    if (obj.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
    if (py::isinstance<py::int_>(obj)) return obj.cast<long long>();
    if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
    if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
    if (py::isinstance<py::dict>(obj)) {
        json j = json::object();
        for (auto item : obj.cast<py::dict>()) {
            j[item.first.cast<std::string>()] = to_json(item.second);
        }
        return j;
    }
    if (py::isinstance<py::sequence>(obj)) {
        json j = json::array();
        for (auto item : obj.cast<py::sequence>()) j.push_back(to_json(item));
        return j;
    }
    throw rwlab::InvalidInput("config values must be JSON-like (none/bool/num/str/list/dict)");
}

py::object to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null: return py::none();
        case json::value_t::boolean: return py::bool_(j.get<bool>());
        case json::value_t::number_integer: return py::int_(j.get<long long>());
        case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case json::value_t::number_float: return py::float_(j.get<double>());
        case json::value_t::string: return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const auto& e : j) out.append(to_py(e));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
            return out;
        }
        default: return py::none();
    }
}

py::object to_py_ordered(const nlohmann::ordered_json& j) {
    return to_py(json::parse(j.dump()));
}

struct PyPatch {
    rwlab::FamilyPatch fp;
    rwlab::Grid grid;
};

PyPatch make_patch(const py::dict& config) {
    json c = to_json(config);
    if (!c.contains("family") || !c.contains("grid") || !c.contains("ambient")) {
        throw rwlab::InvalidInput("config needs ambient, family and grid objects");
    }
    if (c["ambient"].value("c", 0) != 0) {
        throw rwlab::InvalidInput("family charts are defined over the flat base (ambient.c = 0)");
    }
    rwlab::Grid grid = rwlab::parse_grid(c["grid"]);
    rwlab::Rect domain{grid.u0, grid.u1, grid.v0, grid.v1};
    rwlab::AnyFamilySpec spec =
        rwlab::parse_family(c["family"], rwlab::parse_warping(c["ambient"]["warping"]), domain);
    return PyPatch{rwlab::build_fixture(spec), grid};
}

py::dict forms_dict(const rwlab::FundamentalData& d) {
    py::dict out;
    out["h3_11"] = d.h3_11;
    out["h3_12"] = d.h3_12;
    out["h3_22"] = d.h3_22;
    out["h4_11"] = d.h4_11;
    out["h4_12"] = d.h4_12;
    out["h4_22"] = d.h4_22;
    out["H3"] = d.H3;
    out["H4"] = d.H4;
    out["H_norm"] = d.mean_curvature_norm();
    out["omega12_e1"] = d.omega12_e1;
    out["omega12_e2"] = d.omega12_e2;
    out["n34_e1"] = d.n34_e1;
    out["n34_e2"] = d.n34_e2;
    return out;
}

py::object report_py(const rwlab::ResidualReport& r) {
    return to_py_ordered(rwlab::residual_report_json(r));
}

}  // namespace

PYBIND11_MODULE(_rwlab, m) {
    m.doc() = "space-like surface families in warped-product spacetimes";

    py::register_exception<rwlab::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<rwlab::NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<PyPatch>(m, "Patch")
        .def_property_readonly("family", [](const PyPatch& p) { return p.fp.family; })
        .def_property_readonly("flags", [](const PyPatch& p) { return p.fp.flags; })
        .def_property_readonly("grid",
                               [](const PyPatch& p) {
                                   py::dict g;
                                   g["u0"] = p.grid.u0;
                                   g["u1"] = p.grid.u1;
                                   g["nu"] = p.grid.nu;
                                   g["v0"] = p.grid.v0;
                                   g["v1"] = p.grid.v1;
                                   g["nv"] = p.grid.nv;
                                   return g;
                               })
        .def("position",
             [](const PyPatch& p, double u, double v) {
                 rwlab::AmbientPoint q = p.fp.patch.position(u, v);
                 return py::make_tuple(q.t, q.q[0], q.q[1], q.q[2]);
             })
        .def("theta",
             [](const PyPatch& p, double u, double v) {
                 return rwlab::adapted_frame(p.fp.patch, u, v).theta;
             })
        .def("fundamental_forms",
             [](const PyPatch& p, double u, double v) {
                 return forms_dict(rwlab::fundamental_forms(p.fp.patch, u, v));
             })
        .def("closed_form_h",
             [](const PyPatch& p, double u, double v) -> py::object {
                 if (!p.fp.closed_form_h) return py::none();
                 rwlab::ClosedFormH h = (*p.fp.closed_form_h)(u, v);
                 py::dict out;
                 out["h3_11"] = h.h3_11;
                 out["h3_12"] = h.h3_12;
                 out["h3_22"] = h.h3_22;
                 out["h4_11"] = h.h4_11;
                 out["h4_12"] = h.h4_12;
                 out["h4_22"] = h.h4_22;
                 return out;
             })
        .def("class_a_residuals",
             [](const PyPatch& p, double tol) {
                 return report_py(rwlab::class_a_residuals(p.fp.patch, p.grid, tol));
             },
             py::arg("tol") = rwlab::kDefaultVerdictTol)
        .def("minimality_residual",
             [](const PyPatch& p, double tol) {
                 return report_py(rwlab::minimality_residual(p.fp.patch, p.grid, tol));
             },
             py::arg("tol") = rwlab::kDefaultVerdictTol)
        .def("eta_parallel_residuals",
             [](const PyPatch& p, double tol) {
                 return report_py(rwlab::eta_parallel_residuals(p.fp.patch, p.grid, tol));
             },
             py::arg("tol") = rwlab::kDefaultVerdictTol)
        .def("lemma31_check",
             [](const PyPatch& p, double tol) {
                 return report_py(rwlab::lemma31_check(p.fp.patch, p.grid, tol));
             },
             py::arg("tol") = rwlab::kDefaultVerdictTol);

    m.def("build_patch", &make_patch, py::arg("config"),
          "construct a family patch from a config dict (ambient/family/grid)");

    m.def(
        "verify",
        [](const py::object& suite) {
            rwlab::SuiteSpec spec = rwlab::parse_suite(to_json(suite));
            return to_py_ordered(rwlab::suite_report_json(rwlab::run_suite(spec)));
        },
        py::arg("suite") = py::none(), "run the verification suite; dict mirrors the CLI schema");

    m.def("verify_json", [](const py::object& suite) {
        rwlab::SuiteSpec spec = rwlab::parse_suite(to_json(suite));
        return rwlab::suite_report_json(rwlab::run_suite(spec)).dump(2);
    },
        py::arg("suite") = py::none(), "like verify(), but returns the serialized report");

    m.def("list_families", []() {
        py::list out;
        for (const auto& f : rwlab::family_catalog()) {
            py::dict d;
            d["name"] = f.name;
            d["description"] = f.description;
            d["parameters"] = f.parameters;
            out.append(d);
        }
        return out;
    });

    m.def("check_names", []() { return rwlab::all_check_names(); });
}
