#pragma once

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "tensorhn/edge.hpp"
#include "tensorhn/support.hpp"
#include "tensorhn/tensor.hpp"

namespace thn {

using Json = nlohmann::ordered_json;

// Malformed input; `path` points at the offending JSON node ("/entries/3/1").
struct InputError : std::runtime_error {
    std::string path;
    InputError(std::string p, const std::string& msg)
        : std::runtime_error((p.empty() ? std::string("/") : p) + ": " + msg), path(std::move(p)) {}
};

struct FieldSpec {
    enum Kind { gf, gf_ext, rational } kind = gf;
    uint32_t p = 0;
    int e = 1;
    std::optional<PolyP> modulus;
};

FieldSpec field_spec_from_json(const Json& j, const std::string& path = "/field");
// "gf:P", "gf:P^E" or "rational".
FieldSpec parse_field_flag(const std::string& s);
FiniteField make_finite_field(const FieldSpec& s);
Json field_to_json(const FiniteField& f);
Json field_to_json(const RationalField& f);

using AnyTensor = std::variant<Tensor<FiniteField>, Tensor<RationalField>>;

// Coordinates are 1-based in JSON. An override reinterprets the entries in
// another field (fractions are reduced when it is finite).
AnyTensor tensor_from_json(const Json& j, const std::optional<FieldSpec>& override = std::nullopt);
template <class F>
Json tensor_to_json(const Tensor<F>& T);

SupportSet support_from_json(const Json& j);
Json support_to_json(const SupportSet& s);

template <class F>
Json matrix_to_json(const Mat<F>& M);
template <class F>
Mat<F> matrix_from_json(const F& f, const Json& j, const std::string& path);

// {"field", "N", "E", "H", "L", "maps": [A1, A2, A3]}, maps target x source.
template <class F>
Json extraction_to_json(const F& f, const Extraction<F>& ex);
template <class F>
Extraction<F> extraction_from_json(const F& f, const Json& j);

Json read_json_file(const std::string& path);

}  // namespace thn
