#include "tensorhn/kronecker.hpp"

#include <map>
#include <numeric>

namespace thn {

Slope Slope::of(int64_t n, int64_t m) {
    if (m == 0) return infinity();
    if (n == 0) return {0, 1};
    int64_t g = std::gcd(n, m);
    return {n / g, m / g};
}

bool operator<(const Slope& a, const Slope& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

Slope operator*(const Slope& a, const Slope& b) {
    if (a.is_infinite() || b.is_infinite()) return Slope::infinity();
    return Slope::of(a.num * b.num, a.den * b.den);
}

double Slope::to_double() const {
    if (is_infinite()) return std::numeric_limits<double>::infinity();
    return static_cast<double>(num) / static_cast<double>(den);
}

std::string Slope::str() const {
    if (is_infinite()) return "inf";
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::vector<size_t> edge_permutation(size_t kappa) {
    if (kappa > 2) throw ShapeError("mode must be 1, 2 or 3");
    return {(kappa + 1) % 3, (kappa + 2) % 3, kappa};
}

template <class F>
KroneckerRep<F> as_rep(const Tensor<F>& T, size_t kappa) {
    if (T.order() != 3) throw ShapeError("a Kronecker representation needs a 3-tensor");
    Tensor<F> P = permute_modes(T, edge_permutation(kappa));
    KroneckerRep<F> rep;
    rep.field = T.field();
    rep.n = P.dim(0);
    rep.m = P.dim(1);
    for (size_t l = 0; l < P.dim(2); ++l) rep.maps.push_back(slice(P, 2, l));
    return rep;
}

template <class F>
Tensor<F> to_tensor(const KroneckerRep<F>& rep, size_t kappa) {
    Tensor<F> P(rep.field, {rep.n, rep.m, rep.k()});
    for (size_t l = 0; l < rep.k(); ++l)
        for (size_t i = 0; i < rep.n; ++i)
            for (size_t j = 0; j < rep.m; ++j) P.at({i, j, l}) = rep.maps[l](i, j);
    auto perm = edge_permutation(kappa);
    std::vector<size_t> inv(3);
    for (size_t i = 0; i < 3; ++i) inv[perm[i]] = i;
    return permute_modes(P, inv);
}

template <class F>
Subspace<F> image_of(const KroneckerRep<F>& rep, const Subspace<F>& S) {
    if (S.ambient() != rep.n) throw ShapeError("subspace does not live in U");
    Mat<F> rows(rep.field, 0, rep.m);
    for (const auto& A : rep.maps) {
        Mat<F> img = S.basis() * A;
        for (size_t i = 0; i < img.rows(); ++i) rows.append_row(img.row(i));
    }
    return Subspace<F>::span(rows);
}

template <class F>
Subspace<F> common_kernel(const KroneckerRep<F>& rep) {
    if (rep.k() == 0 || rep.m == 0) return Subspace<F>::full(rep.field, rep.n);
    Mat<F> H(rep.field, rep.n, rep.m * rep.k());
    for (size_t l = 0; l < rep.k(); ++l)
        for (size_t i = 0; i < rep.n; ++i)
            for (size_t j = 0; j < rep.m; ++j) H(i, l * rep.m + j) = rep.maps[l](i, j);
    return Subspace<F>::span(left_kernel(H));
}

template <class F>
KroneckerRep<F> transpose_rep(const KroneckerRep<F>& rep) {
    KroneckerRep<F> t;
    t.field = rep.field;
    t.n = rep.m;
    t.m = rep.n;
    for (const auto& A : rep.maps) t.maps.push_back(transpose(A));
    return t;
}

template <class F>
KroneckerRep<F> tensor_rep(const KroneckerRep<F>& a, const KroneckerRep<F>& b) {
    if (a.field != b.field) throw FieldError("mixed-field operands");
    KroneckerRep<F> t;
    t.field = a.field;
    t.n = a.n * b.n;
    t.m = a.m * b.m;
    for (const auto& A : a.maps)
        for (const auto& B : b.maps) t.maps.push_back(kron(A, B));
    return t;
}

template <class F>
KroneckerRep<F> direct_sum_rep(const KroneckerRep<F>& a, const KroneckerRep<F>& b) {
    if (a.field != b.field) throw FieldError("mixed-field operands");
    KroneckerRep<F> t;
    t.field = a.field;
    t.n = a.n + b.n;
    t.m = a.m + b.m;
    for (const auto& A : a.maps) {
        Mat<F> M(a.field, t.n, t.m);
        for (size_t i = 0; i < a.n; ++i)
            for (size_t j = 0; j < a.m; ++j) M(i, j) = A(i, j);
        t.maps.push_back(M);
    }
    for (const auto& B : b.maps) {
        Mat<F> M(a.field, t.n, t.m);
        for (size_t i = 0; i < b.n; ++i)
            for (size_t j = 0; j < b.m; ++j) M(a.n + i, a.m + j) = B(i, j);
        t.maps.push_back(M);
    }
    return t;
}

namespace {

template <class F>
KroneckerRep<F> embed_rep(const KroneckerRep<F>& rep, const ExtensionFor<F>& ext) {
    KroneckerRep<F> r;
    r.field = ext.field();
    r.n = rep.n;
    r.m = rep.m;
    for (const auto& A : rep.maps)
        r.maps.push_back(map_entries(A, ext.field(), [&](const typename F::Elem& a) { return ext.up(a); }));
    return r;
}

template <class F>
int64_t weight(const KroneckerRep<F>& rep, const Subspace<F>& S, int64_t q, int64_t p) {
    return q * static_cast<int64_t>(S.dim()) - p * static_cast<int64_t>(image_of(rep, S).dim());
}

// One random element of the blow-up and its second Wong sequence. On success
// C is the smallest maximizer over the extension and value the maximum.
template <class F>
bool wong_attempt(const KroneckerRep<F>& rk, int64_t q, int64_t p, size_t d, Rng& rng, Subspace<F>& C,
                  int64_t& value) {
    const F& K = rk.field;
    const size_t n = rk.n, m = rk.m, Q = d * q, P = d * p;
    Mat<F> M(K, n * Q, m * P);
    std::vector<typename F::Elem> R(Q * P);
    for (const auto& A : rk.maps) {
        for (auto& x : R) x = K.random(rng);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < m; ++j) {
                const auto& a = A(i, j);
                if (K.is_zero(a)) continue;
                for (size_t t = 0; t < Q; ++t)
                    for (size_t s = 0; s < P; ++s) {
                        auto& e = M(i * Q + t, j * P + s);
                        e = K.add(e, K.mul(a, R[t * P + s]));
                    }
            }
    }
    const int64_t ker = static_cast<int64_t>(n * Q) - static_cast<int64_t>(rank(M));
    Subspace<F> X = Subspace<F>::zero(K, m);
    Subspace<F> Cc;
    for (size_t iter = 0; iter <= m + 1; ++iter) {
        Mat<F> N;
        if (X.is_zero()) {
            N = M;
        } else {
            Mat<F> Y = X.perp().basis();
            N = Mat<F>(K, n * Q, Y.rows() * P);
            for (size_t r = 0; r < n * Q; ++r)
                for (size_t j = 0; j < m; ++j)
                    for (size_t s = 0; s < P; ++s) {
                        const auto& v = M(r, j * P + s);
                        if (K.is_zero(v)) continue;
                        for (size_t c = 0; c < Y.rows(); ++c)
                            if (!K.is_zero(Y(c, j))) N(r, c * P + s) = K.add(N(r, c * P + s), K.mul(v, Y(c, j)));
                    }
        }
        Mat<F> S = N.cols() == 0 ? Mat<F>::identity(K, n * Q) : left_kernel(N);
        Mat<F> comp(K, 0, n);
        std::vector<typename F::Elem> v(n);
        for (size_t r = 0; r < S.rows(); ++r)
            for (size_t t = 0; t < Q; ++t) {
                bool nz = false;
                for (size_t i = 0; i < n; ++i) {
                    v[i] = S(r, i * Q + t);
                    nz = nz || !K.is_zero(v[i]);
                }
                if (nz) comp.append_row(v);
            }
        Cc = Subspace<F>::span(comp);
        Subspace<F> X2 = image_of(rk, Cc);
        if (X2 == X) break;
        X = X2;
    }
    const int64_t got = static_cast<int64_t>(Q * Cc.dim()) - static_cast<int64_t>(P * X.dim());
    if (got != ker || ker % static_cast<int64_t>(d) != 0) return false;
    C = Cc;
    value = ker / static_cast<int64_t>(d);
    return true;
}

template <class F>
bool descend(const Subspace<F>& CK, const ExtensionFor<F>& ext, const F& f, Subspace<F>& out) {
    const Mat<F>& B = CK.basis();
    Mat<F> D(f, B.rows(), B.cols());
    for (size_t i = 0; i < B.data().size(); ++i)
        if (!ext.down(B.data()[i], D.data()[i])) return false;
    out = Subspace<F>::span(D);
    return out.dim() == CK.dim();
}

template <class F>
Deficiency<F> trivial_cases(const KroneckerRep<F>& rep, int64_t q, bool& handled) {
    handled = true;
    Deficiency<F> d;
    if (rep.n == 0) {
        d.witness = Subspace<F>::zero(rep.field, 0);
        return d;
    }
    if (rep.m == 0 || rep.k() == 0) {
        d.value = q * static_cast<int64_t>(rep.n);
        d.witness = Subspace<F>::full(rep.field, rep.n);
        return d;
    }
    handled = false;
    return d;
}

}  // namespace

std::vector<Subspace<FiniteField>> all_subspaces(const FiniteField& f, size_t n, size_t max_count) {
    std::vector<Subspace<FiniteField>> out;
    const uint64_t q = f.size();
    for (size_t r = 0; r <= n; ++r) {
        for (uint64_t mask = 0; mask < (1ull << n); ++mask) {
            if (static_cast<size_t>(__builtin_popcountll(mask)) != r) continue;
            std::vector<size_t> piv;
            for (size_t j = 0; j < n; ++j)
                if (mask >> j & 1) piv.push_back(j);
            std::vector<std::pair<size_t, size_t>> free;
            for (size_t i = 0; i < r; ++i)
                for (size_t j = piv[i] + 1; j < n; ++j)
                    if (!(mask >> j & 1)) free.emplace_back(i, j);
            uint64_t count = 1;
            for (size_t t = 0; t < free.size(); ++t) {
                count *= q;
                if (count > max_count) throw ShapeError("subspace enumeration exceeds the size guard");
            }
            for (uint64_t c = 0; c < count; ++c) {
                Mat<FiniteField> B(f, r, n);
                for (size_t i = 0; i < r; ++i) B(i, piv[i]) = f.one();
                uint64_t v = c;
                for (auto [i, j] : free) {
                    B(i, j) = static_cast<FiniteField::Elem>(v % q);
                    v /= q;
                }
                out.push_back(Subspace<FiniteField>::span(B));
                if (out.size() > max_count) throw ShapeError("subspace enumeration exceeds the size guard");
            }
        }
    }
    return out;
}

Deficiency<FiniteField> brute_force_deficiency(const KroneckerRep<FiniteField>& rep, int64_t q, int64_t p,
                                               size_t max_subspaces) {
    auto subs = all_subspaces(rep.field, rep.n, max_subspaces);
    Deficiency<FiniteField> best;
    best.value = -1;
    best.method.exhaustive = true;
    for (const auto& S : subs) {
        int64_t w = weight(rep, S, q, p);
        if (w > best.value) {
            best.value = w;
            best.witness = S;
        } else if (w == best.value) {
            best.witness = best.witness.intersect(S);
        }
    }
    return best;
}

template <class F>
Deficiency<F> weighted_deficiency(const KroneckerRep<F>& rep, int64_t q, int64_t p, Rng& rng) {
    if (q < 1 || p < 1) throw std::invalid_argument("weights must be positive");
    for (const auto& A : rep.maps)
        if (A.rows() != rep.n || A.cols() != rep.m) throw ShapeError("map shape mismatch");
    bool handled;
    Deficiency<F> triv = trivial_cases(rep, q, handled);
    if (handled) return triv;

    const size_t dmax = std::max<size_t>(2, std::max(rep.n, rep.m) + 1);
    size_t draws = 0;
    for (size_t d = 1; d <= dmax; ++d) {
        const size_t nQ = rep.n * d * static_cast<size_t>(q);
        if (nQ > 4096 || rep.m * d * static_cast<size_t>(p) > 4096) break;
        for (int trial = 0; trial < 3; ++trial) {
            uint64_t want = std::max<uint64_t>(256, 8 * nQ) << (2 * trial);
            auto ext = extension_at_least(rep.field, want);
            KroneckerRep<F> rk = embed_rep(rep, ext);
            Subspace<F> CK;
            int64_t value = 0;
            ++draws;
            if (!wong_attempt(rk, q, p, d, rng, CK, value)) continue;
            Subspace<F> C;
            if (!descend(CK, ext, rep.field, C)) continue;
            if (weight(rep, C, q, p) != value) continue;
            Deficiency<F> out;
            out.value = value;
            out.witness = C;
            out.method = {d, draws, ext.field().size(), false};
            return out;
        }
    }
    if constexpr (std::is_same_v<F, FiniteField>) {
        auto out = brute_force_deficiency(rep, q, p);
        out.method.draws = draws;
        out.method.field_size = rep.field.size();
        return out;
    }
    throw std::runtime_error("weighted deficiency could not be certified");
}

template <class F>
Deficiency<F> max_maximizer(const KroneckerRep<F>& rep, int64_t q, int64_t p, Rng& rng) {
    bool handled;
    Deficiency<F> triv = trivial_cases(rep, q, handled);
    if (handled) return triv;
    KroneckerRep<F> t = transpose_rep(rep);
    Deficiency<F> dt = weighted_deficiency(t, p, q, rng);
    Deficiency<F> out;
    out.witness = image_of(t, dt.witness).perp();
    out.value = dt.value - (p * static_cast<int64_t>(rep.m) - q * static_cast<int64_t>(rep.n));
    out.method = dt.method;
    if (weight(rep, out.witness, q, p) != out.value) throw std::logic_error("maximal maximizer failed verification");
    return out;
}

template <class F>
bool check_witness(const KroneckerRep<F>& rep, const Subspace<F>& U) {
    if (U.is_zero() || U.ambient() != rep.n) return false;
    return image_of(rep, U).dim() * rep.n < U.dim() * rep.m;
}

template <class F>
StabilityCertificate<F> is_semistable(const KroneckerRep<F>& rep, Rng& rng) {
    if (rep.n == 0 || rep.m == 0) throw ShapeError("semistability needs n, m >= 1");
    int64_t g = std::gcd(rep.n, rep.m);
    int64_t a = static_cast<int64_t>(rep.n) / g, b = static_cast<int64_t>(rep.m) / g;
    auto d = max_maximizer(rep, b, a, rng);
    StabilityCertificate<F> c;
    c.deficiency = d.value;
    c.method = d.method;
    c.semistable = d.value == 0;
    if (!c.semistable) {
        c.witness = d.witness;
        if (!check_witness(rep, d.witness)) throw std::logic_error("instability witness failed re-check");
    }
    return c;
}

template <class F>
Destabilizer<F> max_destabilizer(const KroneckerRep<F>& rep, Rng& rng) {
    Destabilizer<F> out;
    if (rep.n == 0) {
        out.U = Subspace<F>::zero(rep.field, 0);
        out.V = Subspace<F>::full(rep.field, rep.m);
        out.slope = Slope::of(0, 1);
        return out;
    }
    Subspace<F> ker = common_kernel(rep);
    if (!ker.is_zero()) {
        out.U = ker;
        out.V = Subspace<F>::zero(rep.field, rep.m);
        out.slope = Slope::infinity();
        return out;
    }
    Slope c = Slope::of(rep.n, rep.m);
    for (;;) {
        auto d = max_maximizer(rep, c.den, c.num, rng);
        if (d.value == 0) {
            out.U = d.witness;
            out.V = image_of(rep, d.witness);
            out.slope = c;
            return out;
        }
        Slope next = Slope::of(d.witness.dim(), image_of(rep, d.witness).dim());
        if (!(next > c)) throw std::logic_error("slope search did not increase");
        c = next;
    }
}

template <class F>
DimData HNFiltration<F>::dim_data() const {
    DimData d;
    for (const auto& s : steps) d.push_back(s.dims);
    return d;
}

template <class F>
std::vector<Slope> HNFiltration<F>::slopes() const {
    std::vector<Slope> s;
    for (const auto& st : steps) s.push_back(st.slope);
    return s;
}

namespace {

template <class F, class Step>
HNFiltration<F> filtration_driver(const KroneckerRep<F>& rep, Step destabilize) {
    const F& f = rep.field;
    HNFiltration<F> hn;
    Mat<F> LU = Mat<F>::identity(f, rep.n);
    KroneckerRep<F> cur = rep;
    Subspace<F> Ucum = Subspace<F>::zero(f, rep.n);
    size_t vdim = 0;
    while (cur.n > 0 || cur.m > 0) {
        HNStep<F> step;
        if (cur.n == 0) {
            step.U = Subspace<F>::full(f, rep.n);
            step.V = Subspace<F>::full(f, rep.m);
            step.dims = {0, cur.m};
            step.slope = Slope::of(0, 1);
            hn.steps.push_back(step);
            break;
        }
        Destabilizer<F> d = destabilize(cur);
        if (d.U.is_zero()) throw std::logic_error("empty destabilizer");
        Ucum = Ucum + Subspace<F>::span(d.U.basis() * LU);
        step.U = Ucum;
        step.V = image_of(rep, Ucum);
        step.dims = {d.U.dim(), d.V.dim()};
        step.slope = d.slope;
        vdim += d.V.dim();
        if (step.V.dim() != vdim) throw std::logic_error("filtration image dimension mismatch");
        hn.steps.push_back(step);

        Mat<F> cmp = d.U.complement_basis();
        Mat<F> qt = d.V.quotient_map();
        LU = cmp * LU;
        KroneckerRep<F> nxt;
        nxt.field = f;
        nxt.n = cur.n - d.U.dim();
        nxt.m = cur.m - d.V.dim();
        for (const auto& A : cur.maps) nxt.maps.push_back(cmp * A * qt);
        cur = std::move(nxt);
    }
    for (size_t i = 1; i < hn.steps.size(); ++i)
        if (!(hn.steps[i].slope < hn.steps[i - 1].slope)) throw std::logic_error("slopes not strictly decreasing");
    return hn;
}

}  // namespace

template <class F>
HNFiltration<F> hn_filtration(const KroneckerRep<F>& rep, Rng& rng) {
    return filtration_driver(rep, [&](const KroneckerRep<F>& cur) { return max_destabilizer(cur, rng); });
}

HNFiltration<FiniteField> brute_force_hn(const KroneckerRep<FiniteField>& rep, size_t max_subspaces) {
    return filtration_driver(rep, [&](const KroneckerRep<FiniteField>& cur) {
        auto subs = all_subspaces(cur.field, cur.n, max_subspaces);
        Destabilizer<FiniteField> best;
        bool have = false;
        for (const auto& S : subs) {
            if (S.is_zero()) continue;
            Subspace<FiniteField> img = image_of(cur, S);
            Slope s = Slope::of(S.dim(), img.dim());
            if (!have || s > best.slope || (s == best.slope && S.dim() > best.U.dim())) {
                best.U = S;
                best.V = img;
                best.slope = s;
                have = true;
            }
        }
        return best;
    });
}

template <class F>
KroneckerRep<F> subquotient(const KroneckerRep<F>& rep, const HNFiltration<F>& hn, size_t u) {
    if (u >= hn.steps.size()) throw std::out_of_range("no such filtration step");
    const F& f = rep.field;
    Subspace<F> Uprev = u ? hn.steps[u - 1].U : Subspace<F>::zero(f, rep.n);
    Subspace<F> Vprev = u ? hn.steps[u - 1].V : Subspace<F>::zero(f, rep.m);
    const auto& st = hn.steps[u];
    Mat<F> ub = st.U.quotient_basis(Uprev);
    Mat<F> qprev = Vprev.quotient_map();
    Subspace<F> wimg = Subspace<F>::span(st.V.basis() * qprev);
    Mat<F> pm(f, rep.m, wimg.dim());
    for (size_t i = 0; i < rep.m; ++i)
        for (size_t c = 0; c < wimg.dim(); ++c) pm(i, c) = qprev(i, wimg.pivots()[c]);
    KroneckerRep<F> out;
    out.field = f;
    out.n = ub.rows();
    out.m = wimg.dim();
    for (const auto& A : rep.maps) out.maps.push_back(ub * A * pm);
    return out;
}

template <class F>
ConciseResult<F> concise_reduce(const KroneckerRep<F>& rep) {
    const F& f = rep.field;
    ConciseResult<F> out;
    Subspace<F> ker = common_kernel(rep);
    Subspace<F> img = image_of(rep, Subspace<F>::full(f, rep.n));
    out.infinite = {ker.dim(), 0};
    out.zero = {0, rep.m - img.dim()};
    out.u_basis = ker.complement_basis();
    out.v_basis = img.basis();
    Mat<F> sel(f, rep.m, img.dim());
    for (size_t c = 0; c < img.dim(); ++c) sel(img.pivots()[c], c) = f.one();
    out.rep.field = f;
    out.rep.n = out.u_basis.rows();
    out.rep.m = img.dim();
    for (const auto& A : rep.maps) out.rep.maps.push_back(out.u_basis * A * sel);
    out.empty = out.rep.n == 0 || out.rep.m == 0;
    return out;
}

DimData hn_tensor_product(const DimData& a, const DimData& b) {
    std::map<Slope, DimPair, std::greater<Slope>> acc;
    for (const auto& x : a) {
        if (x.n == 0 || x.m == 0) throw std::invalid_argument("tensor HN data needs concise input");
        for (const auto& y : b) {
            if (y.n == 0 || y.m == 0) throw std::invalid_argument("tensor HN data needs concise input");
            Slope s = Slope::of(x.n, x.m) * Slope::of(y.n, y.m);
            auto& e = acc[s];
            e.n += x.n * y.n;
            e.m += x.m * y.m;
        }
    }
    DimData out;
    for (const auto& [s, d] : acc) out.push_back(d);
    return out;
}

std::vector<Slope> slopes_of(const DimData& d) {
    std::vector<Slope> s;
    for (const auto& x : d) s.push_back(Slope::of(x.n, x.m));
    return s;
}

KroneckerRep<FiniteField> base_change(const KroneckerRep<FiniteField>& rep, const FieldEmbedding& emb) {
    KroneckerRep<FiniteField> r;
    r.field = emb.target();
    r.n = rep.n;
    r.m = rep.m;
    for (const auto& A : rep.maps) r.maps.push_back(ext_embed(A, emb));
    return r;
}

template <class F>
int64_t ncrk(const KroneckerRep<F>& rep, Rng& rng) {
    return static_cast<int64_t>(rep.n) - weighted_deficiency(rep, 1, 1, rng).value;
}

#define THN_INSTANTIATE(F)                                                                        \
    template KroneckerRep<F> as_rep(const Tensor<F>&, size_t);                                    \
    template Tensor<F> to_tensor(const KroneckerRep<F>&, size_t);                                 \
    template Subspace<F> image_of(const KroneckerRep<F>&, const Subspace<F>&);                    \
    template Subspace<F> common_kernel(const KroneckerRep<F>&);                                   \
    template KroneckerRep<F> transpose_rep(const KroneckerRep<F>&);                               \
    template KroneckerRep<F> tensor_rep(const KroneckerRep<F>&, const KroneckerRep<F>&);          \
    template KroneckerRep<F> direct_sum_rep(const KroneckerRep<F>&, const KroneckerRep<F>&);      \
    template Deficiency<F> weighted_deficiency(const KroneckerRep<F>&, int64_t, int64_t, Rng&);   \
    template Deficiency<F> max_maximizer(const KroneckerRep<F>&, int64_t, int64_t, Rng&);         \
    template StabilityCertificate<F> is_semistable(const KroneckerRep<F>&, Rng&);                 \
    template bool check_witness(const KroneckerRep<F>&, const Subspace<F>&);                      \
    template Destabilizer<F> max_destabilizer(const KroneckerRep<F>&, Rng&);                      \
    template struct HNFiltration<F>;                                                              \
    template HNFiltration<F> hn_filtration(const KroneckerRep<F>&, Rng&);                         \
    template KroneckerRep<F> subquotient(const KroneckerRep<F>&, const HNFiltration<F>&, size_t); \
    template ConciseResult<F> concise_reduce(const KroneckerRep<F>&);                             \
    template int64_t ncrk(const KroneckerRep<F>&, Rng&);

THN_INSTANTIATE(FiniteField)
THN_INSTANTIATE(RationalField)

}  // namespace thn
