// Python bindings for the q-series engine: series expansion, the
// combinatorial oracle, identity verification, proof-script replay, and
// the congruence family checks.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "qdissect/congruence.hpp"
#include "qdissect/dissect.hpp"
#include "qdissect/dsl.hpp"
#include "qdissect/eta.hpp"
#include "qdissect/json_io.hpp"
#include "qdissect/oracle.hpp"

namespace py = pybind11;
using namespace qdissect;

namespace {

// exact big integers cross the boundary as decimal strings -> Python int
py::int_ to_py_int(const mpz_class& v) { return py::int_(py::str(v.get_str())); }

py::list coeff_list(const Series& s) {
    py::list out;
    for (int i = 0; i <= s.order(); ++i) out.append(to_py_int(s.coeff(i)));
    return out;
}

CoefficientRing ring_of(std::uint64_t mod) {
    return mod == 0 ? CoefficientRing::exact() : CoefficientRing::mod(mod);
}

py::object json_to_py(const nlohmann::json& j) {
    py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

Series eval_text(const std::string& text, std::uint64_t mod, int order) {
    return dsl::eval_expr(*dsl::parse_expr(text), ring_of(mod), order);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "truncated q-series engine for overpartition congruence verification";

    py::register_exception<dsl::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<dsl::EvalError>(m, "EvalError", PyExc_ValueError);
    py::register_exception<dsl::ScriptError>(m, "ScriptError", PyExc_ValueError);

    py::class_<Series>(m, "Series")
        .def_property_readonly("order", &Series::order)
        .def_property_readonly("modulus",
                               [](const Series& s) { return s.ring().modulus(); })
        .def_property_readonly("is_exact",
                               [](const Series& s) { return s.ring().is_exact(); })
        .def("coeffs", &coeff_list, "coefficients c_0..c_N as Python ints")
        .def("coeff", [](const Series& s, int i) { return to_py_int(s.coeff(i)); })
        .def("__add__", &add)
        .def("__sub__", &sub)
        .def("__mul__", &mul)
        .def("__pow__", [](const Series& s, int e) { return pow(s, e); })
        .def("__eq__", [](const Series& s, const Series& t) { return s == t; })
        .def("__len__", [](const Series& s) { return s.order() + 1; })
        .def("invert", &invert)
        .def("extract", &extract_ap, py::arg("r"), py::arg("m"),
             "the series of coefficients c_{m n + r}")
        .def("reduce", &reduce_mod, py::arg("modulus"))
        .def("to_json", [](const Series& s) { return series_to_json(s).dump(); })
        .def("__repr__", [](const Series& s) {
            return "<Series order=" + std::to_string(s.order()) + " ring=" +
                   s.ring().to_string() + ">";
        });

    m.def("expand", &eval_text, py::arg("expr"), py::arg("mod") = 0, py::arg("order") = 500,
          "expand an eta-quotient expression, e.g. expand('f2*f6/f1^2', order=10)");
    m.def("series_from_json",
          [](const std::string& text) { return series_from_json(nlohmann::json::parse(text)); });
    m.def(
        "expand_f",
        [](int k, std::uint64_t mod, int order) { return eta::expand_f(k, ring_of(mod), order); },
        py::arg("k"), py::arg("mod") = 0, py::arg("order") = 500);
    m.def("jacobi_theta3", &eta::jacobi_theta3, py::arg("order"));
    m.def("check_binomial_congruence", &eta::check_binomial_congruence, py::arg("p"),
          py::arg("k"), py::arg("l"), py::arg("order") = 500);
    m.def(
        "overpartition_gf",
        [](int l, std::uint64_t mod, int order) {
            return eta::overpartition_gf(l, ring_of(mod), order);
        },
        py::arg("l"), py::arg("mod") = 0, py::arg("order") = 500);

    m.def(
        "oracle_counts",
        [](int l, int nmax) {
            oracle::CountTable t =
                l == 0 ? oracle::count_overpartitions(nmax) : oracle::count_restricted(l, nmax);
            py::list out;
            for (const auto& c : t.counts) out.append(to_py_int(c));
            return out;
        },
        py::arg("l"), py::arg("nmax"),
        "counts of overpartitions with non-overlined parts not divisible by l (l=0: plain)");

    m.def(
        "verify_identities",
        [](int order) {
            py::list out;
            for (const auto& r : dissect::catalog()) {
                dissect::VerifyResult vr = dissect::verify_identity(r, order);
                out.append(json_to_py(verify_result_to_json(r, vr, order)));
            }
            return out;
        },
        py::arg("order") = 500);
    m.def("catalog_names", [] {
        py::list out;
        for (const auto& r : dissect::catalog()) out.append(r.name);
        return out;
    });
    m.def("export_catalog", &dissect::export_catalog);
    m.def("verify_poly_reductions", [] {
        py::list out;
        for (const auto& p : dissect::poly_catalog()) {
            py::dict entry;
            entry["name"] = p.name;
            entry["modulus"] = p.modulus;
            entry["expansion"] = dissect::verify_poly_reduction(p);
            entry["substitution"] = dissect::verify_poly_by_substitution(p);
            out.append(std::move(entry));
        }
        return out;
    });

    m.def(
        "replay",
        [](const std::string& text) { return json_to_py(script_report_to_json(dsl::run_script_text(text))); },
        py::arg("script_text"), "run a proof script and return its report");

    m.def(
        "check_family",
        [](std::uint64_t a, std::uint64_t b, std::uint64_t modulus, std::uint64_t nmax,
           int budget) {
            congruence::Source source(budget);
            congruence::CongruenceFamily f{a, b, modulus,
                                           "count(" + std::to_string(a) + "n+" +
                                               std::to_string(b) + ") == 0 (mod " +
                                               std::to_string(modulus) + ")"};
            return json_to_py(family_report_to_json(congruence::check_family(f, nmax, source)));
        },
        py::arg("a"), py::arg("b"), py::arg("modulus"), py::arg("nmax"), py::arg("budget"),
        "verify count(a*n+b) == 0 (mod modulus) for n = 0..nmax");
    m.def(
        "check_indexed_family",
        [](int kmax, int budget) {
            congruence::Source source(budget);
            py::list out;
            for (const auto& fr : congruence::check_indexed_family(kmax, source).per_k)
                out.append(json_to_py(family_report_to_json(fr)));
            return out;
        },
        py::arg("kmax"), py::arg("budget"));

    m.def(
        "t1_t2_decomposition",
        [](int order) {
            congruence::DecompositionReport r = congruence::t1_t2_decomposition(order);
            py::dict out;
            out["exact_step_ok"] = r.exact_step_ok;
            out["split_ok"] = r.split_ok;
            out["reduced_form_ok"] = r.reduced_form_ok;
            out["order"] = r.order;
            out["passed"] = r.passed();
            return out;
        },
        py::arg("order") = 400);
    m.def(
        "match_claim_t1",
        [](int k, int source_order) -> py::object {
            auto match = congruence::match_claim_T1(k, source_order);
            if (!match) return py::none();
            py::dict out;
            out["k"] = match->k;
            out["sign"] = match->sign;
            out["a"] = match->a;
            out["verified_order"] = match->verified_order;
            return out;
        },
        py::arg("k"), py::arg("source_order") = 10000);
    m.def(
        "match_claim_t2",
        [](int k, int source_order) -> py::object {
            auto match = congruence::match_claim_T2(k, source_order);
            if (!match) return py::none();
            py::dict out;
            out["k"] = match->k;
            out["lambda"] = match->lambda;
            out["verified_order"] = match->verified_order;
            return out;
        },
        py::arg("k"), py::arg("source_order") = 10000);

    m.def("square_progression_empty", &congruence::square_progression_empty, py::arg("target"),
          py::arg("modulus"), py::arg("odd_only") = true);
    m.def(
        "triangular_gap_check",
        [](std::uint64_t step, std::uint64_t target_mod, std::uint64_t target_res,
           std::uint64_t bound) {
            return congruence::triangular_gap_check({step, target_mod, target_res}, bound);
        },
        py::arg("step"), py::arg("target_mod"), py::arg("target_res"),
        py::arg("bound") = 10000);

    m.attr("__version__") = "1.0.0";
}
