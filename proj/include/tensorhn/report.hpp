#pragma once

#include <tuple>

#include "tensorhn/tensor_io.hpp"

namespace thn {

// Report builders shared by the command-line tool and the Python module.
// Each returns the "result" object of a v1 report.

struct VerificationFailure : std::runtime_error {
    Json result;
    VerificationFailure(const std::string& what, Json r) : std::runtime_error(what), result(std::move(r)) {}
};

// Exact fraction "a/b" or "a"; `flag` names the input in errors.
Rational parse_fraction(const std::string& s, const std::string& flag);
Rational parse_rho(const std::string& s);

Json report_hn(const AnyTensor& T, size_t mode, uint64_t seed);
Json report_zeta(const AnyTensor& T, size_t mode, const Rational& rho, uint64_t seed);
Json report_acr(const AnyTensor& T, size_t mode, uint64_t seed);
Json report_semistable(const AnyTensor& T, size_t mode, uint64_t seed);
Json report_gauge(const AnyTensor& T, size_t mode);
Json report_cr(const AnyTensor& T, size_t mode, uint64_t seed);
Json report_shift(const AnyTensor& T, uint64_t seed);
// p = 0 runs every feasible p.
Json report_compress(const AnyTensor& T, size_t p, uint64_t seed);
Json report_power_extract(const AnyTensor& T, const Rational& rho, size_t N, uint64_t seed);
// Throws VerificationFailure when the maps do not restrict T^{⊗N} onto the target.
Json report_verify(const AnyTensor& T, const Json& extraction, const Rational& rho);

Json report_balance(const SupportSet& phi);
Json report_entropy(const SupportSet& phi, const Rational& rho);
Json report_entropy(const SupportSet& phi, const std::vector<Rational>& theta);

Json report_four_cycle(const std::vector<size_t>& weights, const std::optional<FieldSpec>& field, uint64_t seed);
Json report_tpq(size_t p, size_t q, size_t N, uint64_t seed);
Json report_gap(unsigned n);
// Terms (i, j, c) of c a^i b^j.
Json report_subrank(const std::vector<std::tuple<unsigned, unsigned, std::string>>& terms);
// Modes are 1-based.
Json report_mlcr(const AnyTensor& T, size_t a, size_t b, uint64_t seed);

}  // namespace thn
