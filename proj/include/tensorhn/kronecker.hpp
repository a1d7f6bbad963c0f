#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tensorhn/subspace.hpp"
#include "tensorhn/tensor.hpp"

namespace thn {

// dim U / dim V; den == 0 encodes infinity (num == 1).
struct Slope {
    int64_t num = 0, den = 1;

    static Slope infinity() { return {1, 0}; }
    static Slope of(int64_t n, int64_t m);
    bool is_infinite() const { return den == 0; }
    double to_double() const;
    std::string str() const;
    friend bool operator<(const Slope& a, const Slope& b);
    friend bool operator>(const Slope& a, const Slope& b) { return b < a; }
    friend bool operator==(const Slope& a, const Slope& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Slope& a, const Slope& b) { return !(a == b); }
};

Slope operator*(const Slope& a, const Slope& b);

struct DimPair {
    size_t n = 0, m = 0;
    bool operator==(const DimPair& o) const { return n == o.n && m == o.m; }
    bool operator!=(const DimPair& o) const { return !(*this == o); }
};
using DimData = std::vector<DimPair>;

// k maps U = F^n -> V = F^m acting on row vectors: u -> u A_l.
template <class F>
struct KroneckerRep {
    F field{};
    size_t n = 0, m = 0;
    std::vector<Mat<F>> maps;

    size_t k() const { return maps.size(); }
};

// Slices a 3-tensor along mode kappa (0-based). U is mode kappa+1 and V is
// mode kappa+2, both cyclically.
template <class F>
KroneckerRep<F> as_rep(const Tensor<F>& T, size_t kappa = 2);
template <class F>
Tensor<F> to_tensor(const KroneckerRep<F>& rep, size_t kappa = 2);
std::vector<size_t> edge_permutation(size_t kappa);

template <class F>
Subspace<F> image_of(const KroneckerRep<F>& rep, const Subspace<F>& S);
template <class F>
Subspace<F> common_kernel(const KroneckerRep<F>& rep);
template <class F>
KroneckerRep<F> transpose_rep(const KroneckerRep<F>& rep);
template <class F>
KroneckerRep<F> tensor_rep(const KroneckerRep<F>& a, const KroneckerRep<F>& b);
template <class F>
KroneckerRep<F> direct_sum_rep(const KroneckerRep<F>& a, const KroneckerRep<F>& b);

struct DeficiencyMethod {
    size_t blowup = 0;  // d with Q = d q, P = d p; 0 for closed-form cases
    size_t draws = 0;
    uint64_t field_size = 0;
    bool exhaustive = false;
};

template <class F>
struct Deficiency {
    int64_t value = 0;
    Subspace<F> witness;
    DeficiencyMethod method;
};

// max over S of q dim S - p dim V(S), with the unique smallest maximizer.
template <class F>
Deficiency<F> weighted_deficiency(const KroneckerRep<F>& rep, int64_t q, int64_t p, Rng& rng);
// Same value, unique largest maximizer.
template <class F>
Deficiency<F> max_maximizer(const KroneckerRep<F>& rep, int64_t q, int64_t p, Rng& rng);
// Oracle by enumeration of all subspaces.
Deficiency<FiniteField> brute_force_deficiency(const KroneckerRep<FiniteField>& rep, int64_t q, int64_t p,
                                               size_t max_subspaces = 100000);

template <class F>
struct StabilityCertificate {
    bool semistable = true;
    std::optional<Subspace<F>> witness;
    int64_t deficiency = 0;
    DeficiencyMethod method;
};

template <class F>
StabilityCertificate<F> is_semistable(const KroneckerRep<F>& rep, Rng& rng);
template <class F>
bool check_witness(const KroneckerRep<F>& rep, const Subspace<F>& U);

template <class F>
struct Destabilizer {
    Subspace<F> U, V;
    Slope slope;
};

template <class F>
Destabilizer<F> max_destabilizer(const KroneckerRep<F>& rep, Rng& rng);

template <class F>
struct HNStep {
    Subspace<F> U, V;
    DimPair dims;
    Slope slope;
    // Max deficiency of the quotient at weights (den, num) of the slope; zero
    // certifies the subquotient semistable.
    int64_t certificate = 0;
};

template <class F>
struct HNFiltration {
    std::vector<HNStep<F>> steps;
    DimData dim_data() const;
    std::vector<Slope> slopes() const;
};

template <class F>
HNFiltration<F> hn_filtration(const KroneckerRep<F>& rep, Rng& rng);
HNFiltration<FiniteField> brute_force_hn(const KroneckerRep<FiniteField>& rep, size_t max_subspaces = 100000);

// Subquotient (U_u / U_{u-1} -> V_u / V_{u-1}).
template <class F>
KroneckerRep<F> subquotient(const KroneckerRep<F>& rep, const HNFiltration<F>& hn, size_t u);

template <class F>
struct ConciseResult {
    KroneckerRep<F> rep;
    DimPair infinite, zero;  // trimmed parts: (dim ker, 0) and (0, m - dim V(U))
    Mat<F> u_basis;          // rows: complement of the kernel in U
    Mat<F> v_basis;          // rows: basis of V(U)
    bool empty = false;
};

template <class F>
ConciseResult<F> concise_reduce(const KroneckerRep<F>& rep);

// Rejects data with slope 0 or infinity.
DimData hn_tensor_product(const DimData& a, const DimData& b);
std::vector<Slope> slopes_of(const DimData& d);

KroneckerRep<FiniteField> base_change(const KroneckerRep<FiniteField>& rep, const FieldEmbedding& emb);

template <class F>
int64_t ncrk(const KroneckerRep<F>& rep, Rng& rng);

// All subspaces of F^n for a finite field, in a fixed order.
std::vector<Subspace<FiniteField>> all_subspaces(const FiniteField& f, size_t n, size_t max_count);

}  // namespace thn
