#include "tensorhn/lab.hpp"

#include <cmath>
#include <stdexcept>

#include "minors.hpp"

namespace thn {

void WeightedGraph::set(size_t i, size_t j, size_t w) {
    if (i == j || i >= d || j >= d) throw std::invalid_argument("edge endpoints must be distinct vertices");
    if (w == 0) throw std::invalid_argument("edge weights must be positive");
    if (i > j) std::swap(i, j);
    if (w == 1)
        weights.erase({i, j});
    else
        weights[{i, j}] = w;
}

size_t WeightedGraph::weight(size_t i, size_t j) const {
    if (i > j) std::swap(i, j);
    auto it = weights.find({i, j});
    return it == weights.end() ? 1 : it->second;
}

template <class F>
Tensor<F> graph_tensor(const F& f, const WeightedGraph& G) {
    if (G.d < 3) throw std::invalid_argument("graph tensors need at least three vertices");
    Tensor<F> R(f, std::vector<size_t>(G.d, 1));
    R[0] = f.one();
    for (const auto& [e, w] : G.weights) R = tensor_product(R, make_partial_diagonal(f, w, {e.first, e.second}, G.d));
    return R;
}

WeightedGraph four_cycle(size_t n13, size_t n23, size_t n24, size_t n14) {
    WeightedGraph G(4);
    G.set(0, 2, n13);
    G.set(1, 2, n23);
    G.set(1, 3, n24);
    G.set(0, 3, n14);
    return G;
}

size_t four_cycle_cr(size_t n13, size_t n23, size_t n24, size_t n14) {
    return std::min(n13, n23) * std::min(n14, n24);
}

template <class F>
CRResult multilinear_cr(const Tensor<F>& T, size_t a, size_t b, Rng& rng, size_t trials) {
    if (T.order() < 3) throw std::invalid_argument("multilinear rank needs at least three modes");
    if (a == b || a >= T.order() || b >= T.order()) throw std::invalid_argument("need two distinct modes");
    const F& f = T.field();
    size_t n = T.dim(a), m = T.dim(b), full = std::min(n, m);
    std::vector<size_t> others;
    for (size_t k = 0; k < T.order(); ++k)
        if (k != a && k != b) others.push_back(k);
    std::vector<size_t> nz;
    for (size_t i = 0; i < T.size(); ++i)
        if (!f.is_zero(T[i])) nz.push_back(i);

    CRResult out;
    if (nz.empty()) {
        out.method = RankMethod::exact;
        return out;
    }
    auto ext = extension_at_least(f, uint64_t(1) << 20);
    const auto& K = ext.field();
    out.field_size = K.size();
    for (size_t t = 0; t < trials && out.value < full; ++t) {
        std::vector<std::vector<typename F::Elem>> z(T.order());
        for (size_t k : others) {
            z[k].resize(T.dim(k));
            for (auto& x : z[k]) x = K.random(rng);
        }
        Mat<F> M(K, n, m);
        for (size_t i : nz) {
            Coord c = T.coord(i);
            auto v = ext.up(T[i]);
            for (size_t k : others) v = K.mul(v, z[k][c[k]]);
            M(c[a], c[b]) = K.add(M(c[a], c[b]), v);
        }
        out.value = std::max(out.value, rank(M));
        ++out.trials;
    }
    if (out.value == full) {
        out.method = RankMethod::exact;
    } else if (n <= 4 && m <= 4) {
        std::vector<size_t> offset(T.order(), 0);
        size_t vars = 0;
        for (size_t k : others) {
            offset[k] = vars;
            vars += T.dim(k);
        }
        std::vector<std::vector<detail::Poly<F>>> P(n, std::vector<detail::Poly<F>>(m));
        for (size_t i : nz) {
            Coord c = T.coord(i);
            std::vector<uint16_t> e(vars, 0);
            for (size_t k : others) e[offset[k] + c[k]] = 1;
            P[c[a]][c[b]][e] = T[i];
        }
        while (out.value < full && detail::some_minor_nonzero(f, P, out.value + 1)) ++out.value;
        out.method = RankMethod::exact;
    }
    return out;
}

template <class F>
Tensor<F> tpq_tensor(const F& f, size_t p, size_t q) {
    if (p == 0 || q == 0) throw std::invalid_argument("p and q must be positive");
    auto T = direct_sum(make_partial_diagonal(f, p, {0, 2}, 4), make_partial_diagonal(f, q, {0, 3}, 4));
    T = direct_sum(T, make_partial_diagonal(f, p, {1, 3}, 4));
    return direct_sum(T, make_partial_diagonal(f, q, {1, 2}, 4));
}

TpqNumbers tpq_numbers(size_t p, size_t q, Rng& rng) {
    if (p == 0 || q == 0) throw std::invalid_argument("p and q must be positive");
    TpqNumbers out;
    out.p = p;
    out.q = q;
    // 2(p^rho + q^(1-rho)) is twice the edge sum of the data {(p,1), (1,q)}.
    auto a12 = acr_from_data(DimData{{p, 1}, {1, q}});
    out.acr12 = 2 * a12.value;
    out.acr12_argmin = a12.argmin;

    auto f = FiniteField::prime(1009);
    auto flat = group_modes(tpq_tensor(f, p, q), {{0}, {1}, {2, 3}});
    auto a34 = acr(flat, 3, rng);
    out.acr34 = a34.value;
    out.acr34_data = a34.exact_form;
    out.acr34_closed = 2 * (sqrt(Real(p)) + sqrt(Real(q)));
    out.acr34_agrees = abs(out.acr34 - out.acr34_closed) <= Real(1e-9) * out.acr34_closed;
    size_t total = 0;
    bool integral = true;
    for (const auto& x : a34.exact_form) {
        auto r = size_t(std::llround(std::sqrt(double(x.n * x.m))));
        integral = integral && r * r == x.n * x.m;
        total += r;
    }
    if (integral && a34.argmin == Real(1) / 2) out.acr34_integer = total;
    out.separated = out.acr12 < out.acr34 * (1 - Real(1e-12));
    return out;
}

PencilEvidence tpq_pencil_evidence(size_t p, size_t q, size_t N, Rng& rng) {
    if (N == 0) throw std::invalid_argument("N must be positive");
    auto f = FiniteField::prime(1009);
    PencilEvidence out;
    out.N = N;
    out.direct = multilinear_cr(tensor_power(tpq_tensor(f, p, q), N), 0, 1, rng);

    auto A = direct_sum(make_partial_diagonal(f, p, {0, 2}, 3), make_partial_diagonal(f, q, {1, 2}, 3));
    auto B = direct_sum(make_partial_diagonal(f, q, {0, 2}, 3), make_partial_diagonal(f, p, {1, 2}, 3));
    std::vector<size_t> ca(N + 1, 1), cb(N + 1, 1);
    for (size_t k = 1; k <= N; ++k) {
        auto ra = commutative_rank(tensor_power(A, k), 3, rng);
        auto rb = commutative_rank(tensor_power(B, k), 3, rng);
        ca[k] = ra.value;
        cb[k] = rb.value;
        out.exact_prediction = out.exact_prediction && ra.method == RankMethod::exact && rb.method == RankMethod::exact;
    }
    size_t binom = 1;
    for (size_t k = 0; k <= N; ++k) {
        out.predicted += binom * ca[k] * cb[N - k];
        binom = binom * (N - k) / (k + 1);
    }
    return out;
}

NNPoly2 NNPoly2::constant(const BigInt& c) { return monomial(0, 0, c); }

NNPoly2 NNPoly2::monomial(unsigned i, unsigned j, const BigInt& c) {
    if (c < 0) throw std::invalid_argument("coefficients must be nonnegative");
    NNPoly2 r;
    r.add({i, j}, c);
    return r;
}

void NNPoly2::add(std::pair<unsigned, unsigned> e, const BigInt& c) {
    if (c == 0) return;
    c_[e] += c;
}

BigInt NNPoly2::eval(const BigInt& a, const BigInt& b) const {
    BigInt s = 0;
    for (const auto& [e, c] : c_) s += c * boost::multiprecision::pow(a, e.first) * boost::multiprecision::pow(b, e.second);
    return s;
}

NNPoly2 NNPoly2::operator+(const NNPoly2& o) const {
    NNPoly2 r = *this;
    for (const auto& [e, c] : o.c_) r.add(e, c);
    return r;
}

NNPoly2 NNPoly2::operator*(const NNPoly2& o) const {
    NNPoly2 r;
    for (const auto& [e, c] : c_)
        for (const auto& [g, d] : o.c_) r.add({e.first + g.first, e.second + g.second}, c * d);
    return r;
}

NNPoly2 NNPoly2::pow(unsigned n) const {
    NNPoly2 r = constant(1);
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
}

BigInt two_point_subrank(const NNPoly2& p) { return std::min(p.eval(1, 2), p.eval(2, 1)); }

DominanceGap monomial_dominance_gap(unsigned n) {
    if (n > 64) throw std::invalid_argument("n must be at most 64");
    DominanceGap out;
    out.n = n;
    auto ab = NNPoly2::monomial(1, 0) + NNPoly2::monomial(0, 1);
    out.subrank = two_point_subrank(ab.pow(n));
    BigInt binom = 1;
    for (unsigned k = 0; k <= n; ++k) {
        BigInt v = binom * two_point_subrank(NNPoly2::monomial(k, n - k));
        if (v > out.best_monomial) {
            out.best_monomial = v;
            out.argmax = k;
        }
        binom = binom * (n - k) / (k + 1);
    }
    out.below_bound = out.best_monomial * out.best_monomial <= BigInt(1) << (3 * n);
    out.gap = out.best_monomial < out.subrank;
    return out;
}

#define THN_LAB_INSTANTIATE(F)                                                    \
    template Tensor<F> graph_tensor(const F&, const WeightedGraph&);              \
    template CRResult multilinear_cr(const Tensor<F>&, size_t, size_t, Rng&, size_t); \
    template Tensor<F> tpq_tensor(const F&, size_t, size_t);

THN_LAB_INSTANTIATE(FiniteField)
THN_LAB_INSTANTIATE(RationalField)

}  // namespace thn
