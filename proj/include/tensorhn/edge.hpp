#pragma once

#include <optional>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "tensorhn/kronecker.hpp"
#include "tensorhn/tensor.hpp"

namespace thn {

using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>>;

// theta has weight zero on `mode` (1-based), rho on the next mode and 1 - rho
// on the one after, cyclically. mode = 3 gives theta = (rho, 1 - rho, 0).
struct EdgeParam {
    size_t mode = 3;
    Rational rho = 0;
};

void check_edge_param(const EdgeParam& p);
Real to_real(const Rational& r);
// sum over the data of n^rho m^(1 - rho).
Real edge_sum(const DimData& d, const Rational& rho);
Real edge_sum(const DimData& d, const Real& rho);

struct FunctionalValue {
    Real value;
    DimData exact_form;
    std::vector<Slope> slopes;
    EdgeParam param;
    DimPair trimmed_infinite, trimmed_zero;

    double approx() const { return value.convert_to<double>(); }
};

// HN dimension data of the concise reduction of the rep along `mode`.
template <class F>
DimData edge_dim_data(const Tensor<F>& T, size_t mode, Rng& rng, ConciseResult<F>* concise = nullptr);

template <class F>
FunctionalValue zeta_edge(const Tensor<F>& T, const EdgeParam& p, Rng& rng);

struct AcrResult {
    Real value;
    Real argmin;
    DimData exact_form;
};

AcrResult acr_from_data(const DimData& d);

template <class F>
AcrResult acr(const Tensor<F>& T, size_t mode, Rng& rng);

template <class F>
size_t gauge_point(const Tensor<F>& T, size_t mode);

enum class RankMethod { exact, monte_carlo };
const char* to_string(RankMethod m);

struct CRResult {
    size_t value = 0;
    RankMethod method = RankMethod::monte_carlo;
    size_t trials = 0;
    uint64_t field_size = 0;  // 0 for the rationals
};

// Generic rank of sum_l z_l A_l. Symbolic minors certify the value when the
// pencil is at most 4x4.
template <class F>
CRResult commutative_rank(const KroneckerRep<F>& rep, Rng& rng, size_t trials = 3);
template <class F>
CRResult commutative_rank(const Tensor<F>& T, size_t mode, Rng& rng, size_t trials = 3);

struct Sandwich {
    CRResult cr;
    int64_t ncr = 0;
    bool holds = false;
};

template <class F>
Sandwich cr_ncr_sandwich(const Tensor<F>& T, size_t mode, Rng& rng);

template <class F>
struct Extraction {
    size_t N = 1, E = 1, H = 1, L = 1;
    RestrictionTriple<F> maps;
};

// (E^rho H L^(1 - rho))^(1/N) once T^{⊗N} restricts to <E,H,L> through the maps.
template <class F>
std::optional<Real> value_lower_bound(const Tensor<F>& T, const Rational& rho, const Extraction<F>& ex);

// Basis change (one invertible matrix per mode) after which the projected
// support along `mode` is blockwise triangular for the filtration.
template <class F>
RestrictionTriple<F> hn_adapted_basis(const Tensor<F>& T, size_t mode, const HNFiltration<F>& hn);

}  // namespace thn
