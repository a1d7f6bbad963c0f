#pragma once

#include <map>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "tensorhn/edge.hpp"
#include "tensorhn/tensor.hpp"

namespace thn {

// Vertices are 0-based; missing edges have weight 1.
struct WeightedGraph {
    size_t d = 0;
    std::map<std::pair<size_t, size_t>, size_t> weights;

    explicit WeightedGraph(size_t vertices = 0) : d(vertices) {}
    void set(size_t i, size_t j, size_t w);
    size_t weight(size_t i, size_t j) const;
};

// <G> = tensor product over i<j of <n_ij>_{i,j}, factors in lexicographic edge order.
template <class F>
Tensor<F> graph_tensor(const F& f, const WeightedGraph& G);

// The 4-cycle 1-3-2-4-1 with weights n13, n23, n24, n14.
WeightedGraph four_cycle(size_t n13, size_t n23, size_t n24, size_t n14);

// min(n13, n23) * min(n14, n24)
size_t four_cycle_cr(size_t n13, size_t n23, size_t n24, size_t n14);

// Generic rank of the mode-a x mode-b matrix with every other mode contracted
// against its own vector of variables (modes 0-based).
template <class F>
CRResult multilinear_cr(const Tensor<F>& T, size_t a, size_t b, Rng& rng, size_t trials = 3);

// <p>_{1,3} + <q>_{1,4} + <p>_{2,4} + <q>_{2,3}
template <class F>
Tensor<F> tpq_tensor(const F& f, size_t p, size_t q);

struct TpqNumbers {
    size_t p = 1, q = 1;
    Real acr12, acr12_argmin;
    Real acr34;         // 3-mode acr of T_{p,q} with modes 3 and 4 grouped
    Real acr34_closed;  // 2(sqrt p + sqrt q)
    DimData acr34_data;
    std::optional<size_t> acr34_integer;  // set when every block has n m a perfect square
    bool acr34_agrees = false;
    bool separated = false;
};

TpqNumbers tpq_numbers(size_t p, size_t q, Rng& rng);

// CR_{1,2} of T_{p,q}^{⊗N} against the prediction from the expansion into
// 4-cycles, sum_k C(N,k) CR(A^{⊗k}) CR(B^{⊗(N-k)}) with A = <p>_{1,3} + <q>_{2,3}
// and B = <q>_{1,4} + <p>_{2,4}.
struct PencilEvidence {
    size_t N = 1;
    CRResult direct;
    size_t predicted = 0;
    bool exact_prediction = true;
};

PencilEvidence tpq_pencil_evidence(size_t p, size_t q, size_t N, Rng& rng);


// Element of N[a, b]: (i, j) -> coefficient of a^i b^j.
class NNPoly2 {
public:
    NNPoly2() = default;
    static NNPoly2 constant(const BigInt& c);
    static NNPoly2 monomial(unsigned i, unsigned j, const BigInt& c = 1);

    const std::map<std::pair<unsigned, unsigned>, BigInt>& terms() const { return c_; }
    BigInt eval(const BigInt& a, const BigInt& b) const;

    NNPoly2 operator+(const NNPoly2& o) const;
    NNPoly2 operator*(const NNPoly2& o) const;
    NNPoly2 pow(unsigned n) const;
    bool operator==(const NNPoly2& o) const { return c_ == o.c_; }

private:
    void add(std::pair<unsigned, unsigned> e, const BigInt& c);
    std::map<std::pair<unsigned, unsigned>, BigInt> c_;
};

// min(p(1,2), p(2,1))
BigInt two_point_subrank(const NNPoly2& p);

struct DominanceGap {
    unsigned n = 0;
    BigInt subrank;       // Q((a+b)^n) = 3^n
    BigInt best_monomial; // max_k C(n,k) Q(a^k b^(n-k))
    unsigned argmax = 0;
    bool below_bound = false;  // best_monomial <= 2^(1.5 n)
    bool gap = false;          // best_monomial < subrank
};

DominanceGap monomial_dominance_gap(unsigned n);

}  // namespace thn
