#include "tensorhn/compression.hpp"

#include <stdexcept>

namespace thn {

namespace {

constexpr uint64_t kBaseFieldMin = 256;
constexpr uint64_t kExtensionMin = uint64_t(1) << 16;

template <class F>
std::vector<typename F::Elem> fiber(const Tensor<F>& S, size_t i, size_t l) {
    std::vector<typename F::Elem> v(S.dim(1));
    for (size_t j = 0; j < v.size(); ++j) v[j] = S.at({i, j, l});
    return v;
}

template <class F>
Mat<F> rows_of(const F& f, const std::vector<std::vector<typename F::Elem>>& vs, size_t cols) {
    Mat<F> M(f, 0, cols);
    for (const auto& v : vs) M.append_row(v);
    return M;
}

template <class F>
std::optional<ShiftResult<F>> shift_attempt(const Tensor<F>& S0, Rng& rng) {
    const F& f = S0.field();
    size_t n = S0.dim(0), m = S0.dim(1), k = S0.dim(2);
    Mat<F> A = random_invertible(f, n, rng), B = random_invertible(f, k, rng);
    Mat<F> LA = A;
    Tensor<F> S = apply_mode(apply_mode(S0, 0, A), 2, transpose(B));

    auto row_op = [&](size_t i, size_t src, const typename F::Elem& c) {
        for (size_t j = 0; j < m; ++j)
            for (size_t l = 0; l < k; ++l) S.at({i, j, l}) = f.sub(S.at({i, j, l}), f.mul(c, S.at({src, j, l})));
        for (size_t j = 0; j < n; ++j) LA(i, j) = f.sub(LA(i, j), f.mul(c, LA(src, j)));
    };

    Subspace<F> prev = Subspace<F>::zero(f, m);
    size_t lam_prev = n;
    std::vector<size_t> lambdas;
    for (size_t p = 0; p < k; ++p) {
        std::vector<std::vector<typename F::Elem>> col;
        for (size_t i = 0; i < n; ++i) col.push_back(fiber(S, i, p));
        Subspace<F> cur = prev + Subspace<F>::span(rows_of(f, col, m));
        size_t lam = cur.dim() - prev.dim();
        if (lam > lam_prev) return std::nullopt;
        if (lam > 0) {
            Mat<F> R(f, 0, m - prev.dim());
            for (size_t i = 0; i < lam; ++i) R.append_row(prev.reduce_mod(col[i].data()));
            if (rank(R) < lam) return std::nullopt;
            for (size_t i = lam; i < lam_prev; ++i) {
                auto target = prev.reduce_mod(fiber(S, i, p).data());
                std::vector<typename F::Elem> c;
                if (!solve_left(R, target, c)) return std::nullopt;
                for (size_t s = 0; s < lam; ++s)
                    if (!f.is_zero(c[s])) row_op(i, s, c[s]);
            }
        }
        lambdas.push_back(lam);
        prev = cur;
        lam_prev = lam;
    }
    ShiftResult<F> out;
    out.lambdas = lambdas;
    out.A = A;
    out.B = B;
    out.L = LA * inverse(A);
    out.source = S0;
    out.shifted = S;
    if (!verify_shift(out)) return std::nullopt;
    return out;
}

template <class F>
bool base_field_large(const F& f) {
    return f.size() == 0 || f.size() >= kBaseFieldMin;
}

}  // namespace

template <class F>
bool verify_shift(const ShiftResult<F>& s, std::string* why) {
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    const Tensor<F>& T = s.shifted;
    if (T.order() != 3) return fail("not a 3-tensor");
    const F& f = T.field();
    size_t n = T.dim(0), m = T.dim(1), k = T.dim(2);
    if (s.lambdas.size() != k) return fail("wrong number of lambdas");
    for (size_t p = 0; p < k; ++p)
        if (s.lambdas[p] > (p ? s.lambdas[p - 1] : n)) return fail("lambdas are not nonincreasing");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            auto x = s.L(i, j);
            if (j > i && !f.is_zero(x)) return fail("L is not lower triangular");
            if (j == i && !f.is_one(x)) return fail("L is not unitriangular");
        }
    if (apply_mode(apply_mode(s.source, 0, s.L * s.A), 2, transpose(s.B)) != T) return fail("T' != L A . T . B");

    std::vector<std::vector<typename F::Elem>> basis, all;
    for (size_t l = 0; l < k; ++l)
        for (size_t i = 0; i < n; ++i) {
            auto v = fiber(T, i, l);
            if (i < s.lambdas[l]) basis.push_back(v);
            all.push_back(v);
        }
    if (rank(rows_of(f, basis, m)) != basis.size()) return fail("property (1): basis vectors are dependent");
    if (rank(rows_of(f, all, m)) != basis.size()) return fail("property (1): basis does not span");
    std::vector<std::vector<typename F::Elem>> acc;
    for (size_t p = 0; p < k; ++p) {
        for (size_t i = 0; i < s.lambdas[p]; ++i) acc.push_back(fiber(T, i, p));
        auto Vp = Subspace<F>::span(rows_of(f, acc, m));
        for (size_t l = p; l < k; ++l)
            for (size_t i = s.lambdas[p]; i < n; ++i)
                if (!Vp.contains(fiber(T, i, l))) return fail("property (2) fails");
    }
    return true;
}

template <class F>
ShiftResult<F> basis_shift(const Tensor<F>& T, Rng& rng, size_t retries) {
    if (T.order() != 3) throw ShapeError("basis shift needs a 3-tensor");
    if (T.is_zero()) throw std::invalid_argument("zero tensor");
    size_t attempts = 0;
    if (base_field_large(T.field())) {
        for (size_t r = 0; r < retries; ++r) {
            ++attempts;
            if (auto s = shift_attempt(T, rng)) {
                s->attempts = attempts;
                return *s;
            }
        }
    }
    auto ext = extension_at_least(T.field(), kExtensionMin);
    Tensor<F> S = lift(T, ext);
    for (size_t r = 0; r < retries; ++r) {
        ++attempts;
        if (auto s = shift_attempt(S, rng)) {
            s->attempts = attempts;
            s->extended = !(ext.field() == T.field());
            return *s;
        }
    }
    throw ShiftError("basis shift failed verification after " + std::to_string(attempts) + " draws");
}

size_t compression_bound(size_t n, size_t m, size_t p) {
    if (n == 0 || p == 0 || p * n > m) throw std::invalid_argument("p must satisfy 1 <= p <= m/n");
    size_t num = (m - (p - 1) * n) * n, den = n + m;
    return (num + den - 1) / den;
}

template <class F>
std::vector<CompressResult<F>> compress_all(const Tensor<F>& T, Rng& rng) {
    if (T.order() != 3) throw ShapeError("compression needs a 3-tensor");
    if (T.is_zero()) throw std::invalid_argument("zero tensor");
    auto st = is_semistable(as_rep(T, 2), rng);
    if (!st.semistable) {
        auto U = *st.witness;
        throw InstabilityError(U.dim(), image_of(as_rep(T, 2), U).dim());
    }
    bool swapped = T.dim(0) > T.dim(1);
    Tensor<F> T2 = swapped ? permute_modes(T, {1, 0, 2}) : T;
    size_t n = T2.dim(0), m = T2.dim(1), k = T2.dim(2);
    auto sh = basis_shift(T2, rng);
    const F& K = sh.shifted.field();
    Tensor<F> source = swapped ? permute_modes(sh.source, {1, 0, 2}) : sh.source;

    // Coordinates on F^m in the basis {T'_il : i < lambda_l} extended to all of F^m.
    Mat<F> Bas(K, 0, m);
    std::vector<std::vector<size_t>> pos(n, std::vector<size_t>(k, 0));
    for (size_t l = 0; l < k; ++l)
        for (size_t i = 0; i < sh.lambdas[l]; ++i) {
            pos[i][l] = Bas.rows();
            Bas.append_row(fiber(sh.shifted, i, l));
        }
    Bas = vstack(Bas, Subspace<F>::full(K, m).quotient_basis(Subspace<F>::span(Bas)));
    Mat<F> coords = inverse(Bas);
    Mat<F> LA = sh.L * sh.A, Bt = transpose(sh.B);

    std::vector<CompressResult<F>> out;
    for (size_t p = 1; p * n <= m && p <= k; ++p) {
        size_t lam = sh.lambdas[p - 1];
        if (lam == 0) continue;
        Mat<F> M1(K, lam, n), M3(K, p, k), M2(K, lam * p, m);
        for (size_t i = 0; i < lam; ++i)
            for (size_t j = 0; j < n; ++j) M1(i, j) = LA(i, j);
        for (size_t l = 0; l < p; ++l)
            for (size_t j = 0; j < k; ++j) M3(l, j) = Bt(l, j);
        for (size_t i = 0; i < lam; ++i)
            for (size_t l = 0; l < p; ++l)
                for (size_t j = 0; j < m; ++j) M2(i * p + l, j) = coords(j, pos[i][l]);
        CompressResult<F> r;
        r.source = source;
        r.p = p;
        r.lambda = lam;
        r.bound = compression_bound(n, m, p);
        r.swapped = swapped;
        r.extended = sh.extended;
        if (!swapped) {
            r.maps = {M1, M2, M3};
            r.E = 1;
            r.H = lam;
            r.L = p;
        } else {
            // (j p + l, j, l) -> <p, lam, 1> at (l lam + j, j, l).
            Mat<F> P(K, lam * p, lam * p);
            for (size_t j = 0; j < lam; ++j)
                for (size_t l = 0; l < p; ++l) P(l * lam + j, j * p + l) = K.one();
            r.maps = {P * M2, M1, M3};
            r.E = p;
            r.H = lam;
            r.L = 1;
        }
        if (!verify_restriction(source, r.maps, make_matmul(K, r.E, r.H, r.L)))
            throw std::logic_error("compression produced an invalid restriction");
        out.push_back(std::move(r));
    }
    return out;
}

template <class F>
CompressResult<F> compress_semistable(const Tensor<F>& T, size_t p, Rng& rng) {
    if (T.order() != 3) throw ShapeError("compression needs a 3-tensor");
    size_t n = std::min(T.dim(0), T.dim(1)), m = std::max(T.dim(0), T.dim(1));
    if (p == 0 || p * n > m) throw std::invalid_argument("p must satisfy 1 <= p <= m/n");
    if (p > T.dim(2)) throw std::invalid_argument("p exceeds the third dimension");
    for (auto& r : compress_all(T, rng))
        if (r.p == p) return r;
    throw std::logic_error("no compression for the requested p");
}

template <class F>
std::optional<std::array<size_t, 3>> matmul_shape(const Tensor<F>& T) {
    if (T.order() != 3) return std::nullopt;
    size_t d0 = T.dim(0), d1 = T.dim(1), d2 = T.dim(2);
    for (size_t E = 1; E <= d0; ++E) {
        if (d0 % E) continue;
        size_t H = d0 / E;
        if (d1 % H) continue;
        size_t L = d1 / H;
        if (L * E != d2) continue;
        if (T == make_matmul(T.field(), E, H, L)) return std::array<size_t, 3>{E, H, L};
    }
    return std::nullopt;
}

namespace {

// Index map (a, b) x (a2, b2) -> (a a2, b b2) for pair-indexed modes.
template <class F>
Mat<F> pair_perm(const F& f, size_t A, size_t B, size_t A2, size_t B2) {
    size_t N = A * B * A2 * B2;
    Mat<F> P(f, N, N);
    for (size_t a = 0; a < A; ++a)
        for (size_t b = 0; b < B; ++b)
            for (size_t a2 = 0; a2 < A2; ++a2)
                for (size_t b2 = 0; b2 < B2; ++b2)
                    P((a * A2 + a2) * (B * B2) + b * B2 + b2, (a * B + b) * (A2 * B2) + a2 * B2 + b2) = f.one();
    return P;
}

size_t ipow(size_t b, size_t e) {
    size_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

template <class F>
RestrictionTriple<F> matmul_power_iso(const F& f, size_t E, size_t H, size_t L, size_t N) {
    if (N == 0) throw std::invalid_argument("power must be positive");
    RestrictionTriple<F> R = {Mat<F>::identity(f, E * H), Mat<F>::identity(f, H * L), Mat<F>::identity(f, L * E)};
    for (size_t t = 2; t <= N; ++t) {
        size_t E1 = ipow(E, t - 1), H1 = ipow(H, t - 1), L1 = ipow(L, t - 1);
        RestrictionTriple<F> next = {
            pair_perm(f, E1, H1, E, H) * kron(R[0], Mat<F>::identity(f, E * H)),
            pair_perm(f, H1, L1, H, L) * kron(R[1], Mat<F>::identity(f, H * L)),
            pair_perm(f, L1, E1, L, E) * kron(R[2], Mat<F>::identity(f, L * E)),
        };
        R = std::move(next);
    }
    return R;
}

template <class F>
PowerExtraction<F> power_extract(const Tensor<F>& T, const Rational& rho, size_t N, Rng& rng) {
    if (T.order() != 3) throw ShapeError("power extraction needs a 3-tensor");
    if (T.is_zero()) throw std::invalid_argument("zero tensor");
    if (rho < 0 || rho > 1) throw std::invalid_argument("rho must lie in [0,1]");
    if (N == 0) throw std::invalid_argument("power must be positive");
    auto base = as_rep(T, 2);
    auto conc = concise_reduce(base);
    if (conc.infinite.n || conc.zero.m) throw std::invalid_argument("power extraction needs a concise tensor");

    const F& f = T.field();
    Tensor<F> TN = tensor_power(T, N);
    auto hn = hn_filtration(as_rep(TN, 2), rng);
    PowerExtraction<F> out;
    out.power_data = hn.dim_data();
    DimData pred = hn_filtration(base, rng).dim_data(), one = pred;
    for (size_t t = 1; t < N; ++t) pred = hn_tensor_product(pred, one);
    out.hn_consistent = pred == out.power_data;

    Real r = to_real(rho);
    size_t best = 0;
    Real best_val = -1;
    for (size_t u = 0; u < out.power_data.size(); ++u) {
        Real v = edge_sum(DimData{out.power_data[u]}, r);
        if (v > best_val) {
            best_val = v;
            best = u;
        }
    }
    out.block = best;

    // Subquotient U_u / U_{u-1} -> V_u / V_{u-1} as a restriction of T^{⊗N}.
    const auto& st = hn.steps[best];
    size_t n = TN.dim(0), m = TN.dim(1);
    Subspace<F> pu = best ? hn.steps[best - 1].U : Subspace<F>::zero(f, n);
    Subspace<F> pv = best ? hn.steps[best - 1].V : Subspace<F>::zero(f, m);
    Mat<F> M1 = st.U.quotient_basis(pu);
    Mat<F> mid = st.V.quotient_basis(pv);
    Mat<F> Bas = vstack(vstack(pv.basis(), mid), Subspace<F>::full(f, m).quotient_basis(st.V));
    Mat<F> inv = inverse(Bas);
    Mat<F> M2(f, mid.rows(), m);
    for (size_t b = 0; b < mid.rows(); ++b)
        for (size_t j = 0; j < m; ++j) M2(b, j) = inv(j, pv.dim() + b);
    RestrictionTriple<F> sub = {M1, M2, Mat<F>::identity(f, TN.dim(2))};
    Tensor<F> Tnu = apply_restriction(TN, sub);

    auto comps = compress_all(Tnu, rng);
    if (comps.empty()) throw std::logic_error("no compression candidate");
    const CompressResult<F>* pick = nullptr;
    Real pick_val = -1;
    for (const auto& c : comps) {
        Real v = pow(Real(c.E), r) * Real(c.H) * pow(Real(c.L), 1 - r);
        if (v > pick_val) {
            pick_val = v;
            pick = &c;
        }
    }

    Extraction<F> ex;
    ex.N = N;
    ex.E = pick->E;
    ex.H = pick->H;
    ex.L = pick->L;
    if (pick->extended) {
        // Redo the subquotient maps over the extension the compression used.
        const F& K = pick->source.field();
        ExtensionFor<F> ext = extension_at_least(f, K.size());
        if (!(ext.field() == K)) throw std::logic_error("extension mismatch");
        out.source = lift(T, ext);
        for (auto& M : sub) M = lift(M, ext);
    } else {
        out.source = T;
    }
    ex.maps = compose(sub, pick->maps);
    auto bound = value_lower_bound(out.source, rho, ex);
    if (!bound) throw std::logic_error("power extraction failed verification");
    out.extraction = ex;
    out.bound = *bound;

    if (auto shape = matmul_shape(T)) {
        auto [E, H, L] = *shape;
        Real v = pow(Real(E), r) * Real(H) * pow(Real(L), 1 - r);
        if (v > out.bound) {
            Extraction<F> id{N, ipow(E, N), ipow(H, N), ipow(L, N), matmul_power_iso(f, E, H, L, N)};
            auto b = value_lower_bound(T, rho, id);
            if (!b) throw std::logic_error("matrix multiplication power isomorphism failed verification");
            out.source = T;
            out.extraction = id;
            out.bound = *b;
            out.identity = true;
        }
    }
    return out;
}

#define THN_COMPRESSION_INSTANTIATE(F)                                                                   \
    template ShiftResult<F> basis_shift(const Tensor<F>&, Rng&, size_t);                                 \
    template bool verify_shift(const ShiftResult<F>&, std::string*);                                     \
    template std::vector<CompressResult<F>> compress_all(const Tensor<F>&, Rng&);                         \
    template CompressResult<F> compress_semistable(const Tensor<F>&, size_t, Rng&);                       \
    template std::optional<std::array<size_t, 3>> matmul_shape(const Tensor<F>&);                         \
    template RestrictionTriple<F> matmul_power_iso(const F&, size_t, size_t, size_t, size_t);            \
    template PowerExtraction<F> power_extract(const Tensor<F>&, const Rational&, size_t, Rng&);

THN_COMPRESSION_INSTANTIATE(FiniteField)
THN_COMPRESSION_INSTANTIATE(RationalField)

}  // namespace thn
