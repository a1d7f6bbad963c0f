#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tensorhn/compression.hpp"
#include "tensorhn/report.hpp"

namespace py = pybind11;
using namespace thn;

namespace {

// Tensors, supports and reports cross the boundary as JSON text.
Json parse(const std::string& s) {
    try {
        return Json::parse(s);
    } catch (const Json::parse_error& e) {
        throw InputError("", std::string("invalid JSON: ") + e.what());
    }
}

AnyTensor tensor(const std::string& s, const std::optional<std::string>& field) {
    std::optional<FieldSpec> spec;
    if (field) spec = parse_field_flag(*field);
    return tensor_from_json(parse(s), spec);
}

std::string out(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Harder-Narasimhan tools for tensors";
    m.attr("DEFAULT_SEED") = 20240917;

    py::exception<InputError>(m, "InputError", PyExc_ValueError);
    py::exception<VerificationFailure>(m, "VerificationError", PyExc_RuntimeError);
    py::register_exception<InstabilityError>(m, "InstabilityError", PyExc_ValueError);
    py::register_exception<FieldError>(m, "FieldError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InputError& e) {
            auto cls = py::module_::import("tensorhn._core").attr("InputError");
            py::object inst = cls(e.what());
            inst.attr("path") = e.path;
            PyErr_SetObject(cls.ptr(), inst.ptr());
        } catch (const VerificationFailure& e) {
            auto cls = py::module_::import("tensorhn._core").attr("VerificationError");
            py::object inst = cls(e.what());
            inst.attr("result") = e.result.dump();
            PyErr_SetObject(cls.ptr(), inst.ptr());
        }
    });

    auto f = py::arg("field") = py::none();
    m.def("hn", [](const std::string& t, size_t mode, uint64_t seed, std::optional<std::string> field) {
        return out(report_hn(tensor(t, field), mode, seed));
    }, py::arg("tensor"), py::arg("mode"), py::arg("seed"), f);
    m.def("zeta", [](const std::string& t, size_t mode, const std::string& rho, uint64_t seed, std::optional<std::string> field) {
        return out(report_zeta(tensor(t, field), mode, parse_rho(rho), seed));
    }, py::arg("tensor"), py::arg("mode"), py::arg("rho"), py::arg("seed"), f);
    m.def("acr", [](const std::string& t, size_t mode, uint64_t seed, std::optional<std::string> field) {
        return out(report_acr(tensor(t, field), mode, seed));
    }, py::arg("tensor"), py::arg("mode"), py::arg("seed"), f);
    m.def("semistable", [](const std::string& t, size_t mode, uint64_t seed, std::optional<std::string> field) {
        return out(report_semistable(tensor(t, field), mode, seed));
    }, py::arg("tensor"), py::arg("mode"), py::arg("seed"), f);
    m.def("gauge", [](const std::string& t, size_t mode, std::optional<std::string> field) {
        return out(report_gauge(tensor(t, field), mode));
    }, py::arg("tensor"), py::arg("mode"), f);
    m.def("cr", [](const std::string& t, size_t mode, uint64_t seed, std::optional<std::string> field) {
        return out(report_cr(tensor(t, field), mode, seed));
    }, py::arg("tensor"), py::arg("mode"), py::arg("seed"), f);
    m.def("shift", [](const std::string& t, uint64_t seed, std::optional<std::string> field) {
        return out(report_shift(tensor(t, field), seed));
    }, py::arg("tensor"), py::arg("seed"), f);
    m.def("compress", [](const std::string& t, size_t p, uint64_t seed, std::optional<std::string> field) {
        return out(report_compress(tensor(t, field), p, seed));
    }, py::arg("tensor"), py::arg("p"), py::arg("seed"), f);
    m.def("power_extract", [](const std::string& t, const std::string& rho, size_t N, uint64_t seed, std::optional<std::string> field) {
        return out(report_power_extract(tensor(t, field), parse_rho(rho), N, seed));
    }, py::arg("tensor"), py::arg("rho"), py::arg("N"), py::arg("seed"), f);
    m.def("verify", [](const std::string& t, const std::string& ex, const std::string& rho, std::optional<std::string> field) {
        return out(report_verify(tensor(t, field), parse(ex), parse_rho(rho)));
    }, py::arg("tensor"), py::arg("extraction"), py::arg("rho"), f);

    m.def("balance", [](const std::string& s) { return out(report_balance(support_from_json(parse(s)))); },
          py::arg("support"));
    m.def("entropy", [](const std::string& s, const std::string& rho) {
        return out(report_entropy(support_from_json(parse(s)), parse_rho(rho)));
    }, py::arg("support"), py::arg("rho"));
    m.def("entropy_theta", [](const std::string& s, const std::vector<std::string>& theta) {
        std::vector<Rational> t;
        for (const auto& x : theta) t.push_back(parse_fraction(x, "theta"));
        return out(report_entropy(support_from_json(parse(s)), t));
    }, py::arg("support"), py::arg("theta"));

    m.def("four_cycle", [](const std::vector<size_t>& w, uint64_t seed, std::optional<std::string> field) {
        std::optional<FieldSpec> spec;
        if (field) spec = parse_field_flag(*field);
        return out(report_four_cycle(w, spec, seed));
    }, py::arg("weights"), py::arg("seed"), f);
    m.def("tpq", [](size_t p, size_t q, size_t N, uint64_t seed) { return out(report_tpq(p, q, N, seed)); },
          py::arg("p"), py::arg("q"), py::arg("N"), py::arg("seed"));
    m.def("gap", [](unsigned n) { return out(report_gap(n)); }, py::arg("n"));
    m.def("subrank", [](const std::vector<std::tuple<unsigned, unsigned, std::string>>& terms) {
        return out(report_subrank(terms));
    }, py::arg("terms"));
    m.def("mlcr", [](const std::string& t, size_t a, size_t b, uint64_t seed, std::optional<std::string> field) {
        return out(report_mlcr(tensor(t, field), a, b, seed));
    }, py::arg("tensor"), py::arg("a"), py::arg("b"), py::arg("seed"), f);

    m.def("matmul_tensor", [](size_t E, size_t H, size_t L, const std::string& field) {
        auto spec = parse_field_flag(field);
        if (spec.kind == FieldSpec::rational) return out(tensor_to_json(make_matmul(RationalField(), E, H, L)));
        return out(tensor_to_json(make_matmul(make_finite_field(spec), E, H, L)));
    }, py::arg("E"), py::arg("H"), py::arg("L"), py::arg("field"));
}
