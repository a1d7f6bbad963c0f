#pragma once

#include <array>
#include <optional>

#include "tensorhn/edge.hpp"
#include "tensorhn/kronecker.hpp"
#include "tensorhn/tensor.hpp"

namespace thn {

// T is read as an n x k array of vectors T_il in F^m (mode order U, V, W).
// When the base field is too small for generic draws the work happens over
// an extension, and `source` is T base-changed to it.
template <class F>
struct ShiftResult {
    std::vector<size_t> lambdas;
    Mat<F> A, B, L;         // T' = L A . T . B
    Tensor<F> source;       // T over the working field
    Tensor<F> shifted;      // T'
    size_t attempts = 0;
    bool extended = false;
};

struct ShiftError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class F>
ShiftResult<F> basis_shift(const Tensor<F>& T, Rng& rng, size_t retries = 5);

// Checks properties (1) and (2) on the shifted array.
template <class F>
bool verify_shift(const ShiftResult<F>& s, std::string* why = nullptr);

struct InstabilityError : std::runtime_error {
    size_t witness_dim, image_dim;
    InstabilityError(size_t a, size_t b)
        : std::runtime_error("tensor is not semistable: a " + std::to_string(a) + "-dimensional subspace maps onto " +
                             std::to_string(b) + " dimensions"),
          witness_dim(a),
          image_dim(b) {}
};

template <class F>
struct CompressResult {
    Tensor<F> source;  // T, possibly over an extension
    RestrictionTriple<F> maps;
    size_t E = 1, H = 1, L = 1;  // target <E,H,L>
    size_t p = 1, lambda = 0;
    size_t bound = 0;            // ceil((m - (p-1) n) n / (n + m)) in the n <= m orientation
    bool swapped = false;        // n > m: modes 1 and 2 exchanged, target <p, lambda, 1>
    bool extended = false;
};

size_t compression_bound(size_t n, size_t m, size_t p);

// Restrictions T >= <1, lambda_p, p> for every feasible p (or <p, lambda_p, 1>
// when n > m). Rejects unstable input.
template <class F>
std::vector<CompressResult<F>> compress_all(const Tensor<F>& T, Rng& rng);

template <class F>
CompressResult<F> compress_semistable(const Tensor<F>& T, size_t p, Rng& rng);

template <class F>
struct PowerExtraction {
    Tensor<F> source;  // T, possibly over an extension
    Extraction<F> extraction;
    Real bound;        // (E^rho H L^(1-rho))^(1/N), verified
    DimData power_data;
    size_t block = 0;  // HN block of T^{⊗N} that was compressed
    bool hn_consistent = false;  // power HN data equals the tensor-product prediction
    bool identity = false;       // T is a matrix multiplication tensor and was used as is
};

template <class F>
PowerExtraction<F> power_extract(const Tensor<F>& T, const Rational& rho, size_t N, Rng& rng);

// If T is literally make_matmul(E, H, L), returns (E, H, L).
template <class F>
std::optional<std::array<size_t, 3>> matmul_shape(const Tensor<F>& T);

// Permutation restrictions T^{⊗N} -> <E^N, H^N, L^N> for T = <E,H,L>.
template <class F>
RestrictionTriple<F> matmul_power_iso(const F& f, size_t E, size_t H, size_t L, size_t N);

}  // namespace thn
