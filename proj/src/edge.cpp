#include "tensorhn/edge.hpp"

#include <algorithm>
#include <stdexcept>

#include "minors.hpp"

namespace thn {

void check_edge_param(const EdgeParam& p) {
    if (p.mode < 1 || p.mode > 3) throw std::invalid_argument("edge mode must be 1, 2 or 3");
    if (p.rho < 0 || p.rho > 1) throw std::invalid_argument("rho must lie in [0,1]");
}

Real to_real(const Rational& r) {
    return Real(boost::multiprecision::numerator(r)) / Real(boost::multiprecision::denominator(r));
}

Real edge_sum(const DimData& d, const Real& rho) {
    Real s = 0;
    for (const auto& x : d) {
        if (x.n == 0 || x.m == 0) throw std::invalid_argument("edge sum needs concise dimension data");
        s += pow(Real(x.n), rho) * pow(Real(x.m), 1 - rho);
    }
    return s;
}

Real edge_sum(const DimData& d, const Rational& rho) {
    if (rho == 0 || rho == 1) {
        size_t s = 0;
        for (const auto& x : d) s += rho == 1 ? x.n : x.m;
        return Real(s);
    }
    return edge_sum(d, to_real(rho));
}

template <class F>
DimData edge_dim_data(const Tensor<F>& T, size_t mode, Rng& rng, ConciseResult<F>* concise) {
    if (mode < 1 || mode > 3) throw std::invalid_argument("edge mode must be 1, 2 or 3");
    if (T.is_zero()) throw std::invalid_argument("zero tensor");
    auto c = concise_reduce(as_rep(T, mode - 1));
    auto d = hn_filtration(c.rep, rng).dim_data();
    if (concise) *concise = std::move(c);
    return d;
}

template <class F>
FunctionalValue zeta_edge(const Tensor<F>& T, const EdgeParam& p, Rng& rng) {
    check_edge_param(p);
    ConciseResult<F> c;
    FunctionalValue out;
    out.exact_form = edge_dim_data(T, p.mode, rng, &c);
    out.slopes = slopes_of(out.exact_form);
    out.param = p;
    out.trimmed_infinite = c.infinite;
    out.trimmed_zero = c.zero;
    out.value = edge_sum(out.exact_form, p.rho);
    return out;
}

AcrResult acr_from_data(const DimData& d) {
    if (d.empty()) throw std::invalid_argument("empty dimension data");
    AcrResult out;
    out.exact_form = d;
    if (d.size() == 1) {
        out.value = Real(std::min(d[0].n, d[0].m));
        out.argmin = d[0].n <= d[0].m ? 1 : 0;
        return out;
    }
    // Data symmetric under (n, m) -> (m, n) has its convex minimum at 1/2.
    DimData swapped;
    for (const auto& x : d) swapped.push_back({x.m, x.n});
    auto key = [](const DimPair& a, const DimPair& b) { return a.n != b.n ? a.n < b.n : a.m < b.m; };
    DimData sorted = d;
    std::sort(sorted.begin(), sorted.end(), key);
    std::sort(swapped.begin(), swapped.end(), key);
    if (sorted == swapped) {
        out.argmin = Real(1) / 2;
        out.value = 0;
        for (const auto& x : d) out.value += sqrt(Real(x.n) * Real(x.m));
        return out;
    }
    const Real phi = (sqrt(Real(5)) - 1) / 2;
    Real a = 0, b = 1;
    Real x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    Real f1 = edge_sum(d, x1), f2 = edge_sum(d, x2);
    while (b - a > Real(1e-13)) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = edge_sum(d, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = edge_sum(d, x2);
        }
    }
    out.argmin = (a + b) / 2;
    out.value = edge_sum(d, out.argmin);
    for (int e = 0; e <= 1; ++e) {
        Real fe = edge_sum(d, Rational(e));
        if (fe < out.value) {
            out.value = fe;
            out.argmin = e;
        }
    }
    return out;
}

template <class F>
AcrResult acr(const Tensor<F>& T, size_t mode, Rng& rng) {
    return acr_from_data(edge_dim_data(T, mode, rng));
}

template <class F>
size_t gauge_point(const Tensor<F>& T, size_t mode) {
    if (mode < 1 || mode > T.order()) throw std::invalid_argument("mode out of range");
    return rank(flatten(T, {mode - 1}));
}

const char* to_string(RankMethod m) { return m == RankMethod::exact ? "exact" : "monte-carlo"; }

namespace {

template <class F>
bool some_minor_nonzero(const KroneckerRep<F>& rep, size_t r) {
    const F& f = rep.field;
    size_t k = rep.k();
    std::vector<std::vector<detail::Poly<F>>> P(rep.n, std::vector<detail::Poly<F>>(rep.m));
    for (size_t i = 0; i < rep.n; ++i)
        for (size_t j = 0; j < rep.m; ++j)
            for (size_t l = 0; l < k; ++l)
                if (!f.is_zero(rep.maps[l](i, j))) {
                    std::vector<uint16_t> e(k, 0);
                    e[l] = 1;
                    P[i][j][e] = rep.maps[l](i, j);
                }
    return detail::some_minor_nonzero(f, P, r);
}

}  // namespace

template <class F>
CRResult commutative_rank(const KroneckerRep<F>& rep, Rng& rng, size_t trials) {
    CRResult out;
    if (rep.k() == 0 || rep.n == 0 || rep.m == 0) {
        out.method = RankMethod::exact;
        return out;
    }
    auto ext = extension_at_least(rep.field, uint64_t(1) << 20);
    const auto& K = ext.field();
    out.field_size = K.size();
    std::vector<Mat<F>> lifted;
    for (const auto& A : rep.maps) lifted.push_back(lift(A, ext));
    size_t full = std::min(rep.n, rep.m);
    for (size_t t = 0; t < trials && out.value < full; ++t) {
        Mat<F> M(K, rep.n, rep.m);
        for (const auto& A : lifted) M = M + scale(A, K.random(rng));
        out.value = std::max(out.value, rank(M));
        ++out.trials;
    }
    // A nonzero evaluation certifies the lower bound; symbolic minors settle the rest.
    if (out.value == full) {
        out.method = RankMethod::exact;
    } else if (rep.n <= 4 && rep.m <= 4) {
        while (out.value < full && some_minor_nonzero(rep, out.value + 1)) ++out.value;
        out.method = RankMethod::exact;
    }
    return out;
}

template <class F>
CRResult commutative_rank(const Tensor<F>& T, size_t mode, Rng& rng, size_t trials) {
    if (mode < 1 || mode > 3) throw std::invalid_argument("edge mode must be 1, 2 or 3");
    return commutative_rank(as_rep(T, mode - 1), rng, trials);
}

template <class F>
Sandwich cr_ncr_sandwich(const Tensor<F>& T, size_t mode, Rng& rng) {
    if (mode < 1 || mode > 3) throw std::invalid_argument("edge mode must be 1, 2 or 3");
    auto rep = as_rep(T, mode - 1);
    Sandwich s;
    s.cr = commutative_rank(rep, rng);
    s.ncr = ncrk(rep, rng);
    s.holds = int64_t(s.cr.value) <= s.ncr && s.ncr <= 2 * int64_t(s.cr.value);
    return s;
}

template <class F>
std::optional<Real> value_lower_bound(const Tensor<F>& T, const Rational& rho, const Extraction<F>& ex) {
    if (rho < 0 || rho > 1) throw std::invalid_argument("rho must lie in [0,1]");
    if (ex.N == 0) return std::nullopt;
    auto target = make_matmul(T.field(), ex.E, ex.H, ex.L);
    if (!verify_restriction(tensor_power(T, ex.N), ex.maps, target)) return std::nullopt;
    Real r = to_real(rho);
    Real v = pow(Real(ex.E), r) * Real(ex.H) * pow(Real(ex.L), 1 - r);
    return pow(v, Real(1) / Real(ex.N));
}

template <class F>
RestrictionTriple<F> hn_adapted_basis(const Tensor<F>& T, size_t mode, const HNFiltration<F>& hn) {
    if (mode < 1 || mode > 3) throw std::invalid_argument("edge mode must be 1, 2 or 3");
    const F& f = T.field();
    size_t kappa = mode - 1, mu = (kappa + 1) % 3, mv = (kappa + 2) % 3;
    size_t n = T.dim(mu), m = T.dim(mv);
    Mat<F> BU(f, 0, n), BV(f, 0, m);
    Subspace<F> pu = Subspace<F>::zero(f, n), pv = Subspace<F>::zero(f, m);
    for (const auto& st : hn.steps) {
        BU = vstack(BU, st.U.quotient_basis(pu));
        BV = vstack(BV, st.V.quotient_basis(pv));
        pu = st.U;
        pv = st.V;
    }
    BU = vstack(BU, Subspace<F>::full(f, n).quotient_basis(pu));
    BV = vstack(BV, Subspace<F>::full(f, m).quotient_basis(pv));
    RestrictionTriple<F> R(3);
    R[kappa] = Mat<F>::identity(f, T.dim(kappa));
    R[mu] = BU;
    R[mv] = transpose(inverse(BV));
    return R;
}

#define THN_EDGE_INSTANTIATE(F)                                                                    \
    template DimData edge_dim_data(const Tensor<F>&, size_t, Rng&, ConciseResult<F>*);             \
    template FunctionalValue zeta_edge(const Tensor<F>&, const EdgeParam&, Rng&);                   \
    template AcrResult acr(const Tensor<F>&, size_t, Rng&);                                         \
    template size_t gauge_point(const Tensor<F>&, size_t);                                          \
    template CRResult commutative_rank(const KroneckerRep<F>&, Rng&, size_t);                       \
    template CRResult commutative_rank(const Tensor<F>&, size_t, Rng&, size_t);                     \
    template Sandwich cr_ncr_sandwich(const Tensor<F>&, size_t, Rng&);                              \
    template std::optional<Real> value_lower_bound(const Tensor<F>&, const Rational&, const Extraction<F>&); \
    template RestrictionTriple<F> hn_adapted_basis(const Tensor<F>&, size_t, const HNFiltration<F>&);

THN_EDGE_INSTANTIATE(FiniteField)
THN_EDGE_INSTANTIATE(RationalField)

}  // namespace thn
