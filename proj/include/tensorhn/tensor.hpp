#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "tensorhn/matrix.hpp"

namespace thn {

inline size_t& tensor_entry_cap() {
    static size_t cap = size_t(1) << 24;
    return cap;
}

inline size_t checked_volume(const std::vector<size_t>& dims) {
    size_t v = 1;
    for (size_t d : dims) {
        if (d == 0) throw ShapeError("zero dimension");
        if (v > tensor_entry_cap() / d) throw ShapeError("tensor exceeds the dense size cap");
        v *= d;
    }
    return v;
}

using Coord = std::vector<size_t>;

// Dense d-mode tensor, row-major (last mode fastest), 0-based coordinates.
template <class F>
class Tensor {
public:
    using Elem = typename F::Elem;

    Tensor() = default;
    Tensor(const F& f, std::vector<size_t> dims) : f_(f), dims_(std::move(dims)) {
        if (dims_.size() < 2) throw ShapeError("tensor needs at least two modes");
        a_.assign(checked_volume(dims_), f.zero());
        strides_.assign(dims_.size(), 1);
        for (size_t i = dims_.size() - 1; i-- > 0;) strides_[i] = strides_[i + 1] * dims_[i + 1];
    }

    const F& field() const { return f_; }
    size_t order() const { return dims_.size(); }
    const std::vector<size_t>& dims() const { return dims_; }
    size_t dim(size_t k) const { return dims_[k]; }
    size_t size() const { return a_.size(); }
    const std::vector<size_t>& strides() const { return strides_; }

    size_t index(const Coord& c) const {
        size_t idx = 0;
        for (size_t k = 0; k < c.size(); ++k) idx += c[k] * strides_[k];
        return idx;
    }
    Coord coord(size_t idx) const {
        Coord c(dims_.size());
        for (size_t k = 0; k < dims_.size(); ++k) {
            c[k] = idx / strides_[k];
            idx %= strides_[k];
        }
        return c;
    }
    Elem& at(const Coord& c) { return a_[index(c)]; }
    const Elem& at(const Coord& c) const { return a_[index(c)]; }
    Elem& operator[](size_t i) { return a_[i]; }
    const Elem& operator[](size_t i) const { return a_[i]; }
    std::vector<Elem>& data() { return a_; }
    const std::vector<Elem>& data() const { return a_; }

    size_t nnz() const {
        size_t n = 0;
        for (const auto& x : a_)
            if (!f_.is_zero(x)) ++n;
        return n;
    }
    bool is_zero() const { return nnz() == 0; }

    bool operator==(const Tensor& o) const { return f_ == o.f_ && dims_ == o.dims_ && a_ == o.a_; }
    bool operator!=(const Tensor& o) const { return !(*this == o); }

private:
    F f_{};
    std::vector<size_t> dims_, strides_;
    std::vector<Elem> a_;
};

template <class F>
Tensor<F> make_diagonal(const F& f, size_t n, size_t d = 3) {
    Tensor<F> T(f, std::vector<size_t>(d, n));
    for (size_t i = 0; i < n; ++i) T.at(Coord(d, i)) = f.one();
    return T;
}

// <E,H,L> = sum x_{ij} y_{jk} z_{ki}; mode indices (i,j) -> i*H+j,
// (j,k) -> j*L+k, (k,i) -> k*E+i.
template <class F>
Tensor<F> make_matmul(const F& f, size_t E, size_t H, size_t L) {
    if (E == 0 || H == 0 || L == 0) throw ShapeError("zero dimension");
    Tensor<F> T(f, {E * H, H * L, L * E});
    for (size_t i = 0; i < E; ++i)
        for (size_t j = 0; j < H; ++j)
            for (size_t k = 0; k < L; ++k) T.at({i * H + j, j * L + k, k * E + i}) = f.one();
    return T;
}

// <n>_S: dimension n on the modes in S (0-based), 1 elsewhere.
template <class F>
Tensor<F> make_partial_diagonal(const F& f, size_t n, const std::set<size_t>& S, size_t d) {
    if (n == 0) throw ShapeError("zero dimension");
    if (S.empty()) throw ShapeError("empty mode set");
    std::vector<size_t> dims(d, 1);
    for (size_t s : S) {
        if (s >= d) throw ShapeError("mode out of range");
        dims[s] = n;
    }
    Tensor<F> T(f, dims);
    for (size_t i = 0; i < n; ++i) {
        Coord c(d, 0);
        for (size_t s : S) c[s] = i;
        T.at(c) = f.one();
    }
    return T;
}

template <class F>
Tensor<F> direct_sum(const Tensor<F>& S, const Tensor<F>& T) {
    if (S.order() != T.order()) throw ShapeError("mode count mismatch");
    if (S.field() != T.field()) throw FieldError("mixed-field operands");
    std::vector<size_t> dims(S.order());
    for (size_t k = 0; k < S.order(); ++k) dims[k] = S.dim(k) + T.dim(k);
    Tensor<F> R(S.field(), dims);
    for (size_t i = 0; i < S.size(); ++i)
        if (!S.field().is_zero(S[i])) R.at(S.coord(i)) = S[i];
    for (size_t i = 0; i < T.size(); ++i) {
        if (T.field().is_zero(T[i])) continue;
        Coord c = T.coord(i);
        for (size_t k = 0; k < c.size(); ++k) c[k] += S.dim(k);
        R.at(c) = T[i];
    }
    return R;
}

// Mode-wise lexicographic, left factor major: index = iS * dim_T + iT.
template <class F>
Tensor<F> tensor_product(const Tensor<F>& S, const Tensor<F>& T) {
    if (S.order() != T.order()) throw ShapeError("mode count mismatch");
    if (S.field() != T.field()) throw FieldError("mixed-field operands");
    const F& f = S.field();
    std::vector<size_t> dims(S.order());
    for (size_t k = 0; k < S.order(); ++k) dims[k] = S.dim(k) * T.dim(k);
    Tensor<F> R(f, dims);
    std::vector<size_t> tnz;
    for (size_t j = 0; j < T.size(); ++j)
        if (!f.is_zero(T[j])) tnz.push_back(j);
    std::vector<Coord> tc;
    for (size_t j : tnz) tc.push_back(T.coord(j));
    for (size_t i = 0; i < S.size(); ++i) {
        if (f.is_zero(S[i])) continue;
        Coord cs = S.coord(i);
        for (size_t t = 0; t < tnz.size(); ++t) {
            size_t idx = 0;
            for (size_t k = 0; k < dims.size(); ++k) idx += (cs[k] * T.dim(k) + tc[t][k]) * R.strides()[k];
            R[idx] = f.mul(S[i], T[tnz[t]]);
        }
    }
    return R;
}

template <class F>
Tensor<F> tensor_power(const Tensor<F>& T, size_t N) {
    if (N == 0) throw ShapeError("tensor power needs N >= 1");
    Tensor<F> R = T;
    for (size_t i = 1; i < N; ++i) R = tensor_product(R, T);
    return R;
}

// Contract mode k with A (target x source).
template <class F>
Tensor<F> apply_mode(const Tensor<F>& T, size_t k, const Mat<F>& A) {
    if (A.field() != T.field()) throw FieldError("mixed-field operands");
    if (A.cols() != T.dim(k)) throw ShapeError("restriction map shape mismatch on mode " + std::to_string(k + 1));
    const F& f = T.field();
    std::vector<size_t> dims = T.dims();
    dims[k] = A.rows();
    Tensor<F> R(f, dims);
    const size_t outer = T.size() / (T.dim(k) * T.strides()[k]);
    const size_t inner = T.strides()[k];
    const size_t src = T.dim(k), dst = A.rows();
    for (size_t o = 0; o < outer; ++o)
        for (size_t s = 0; s < src; ++s)
            for (size_t in = 0; in < inner; ++in) {
                const auto& v = T[(o * src + s) * inner + in];
                if (f.is_zero(v)) continue;
                for (size_t t = 0; t < dst; ++t) {
                    const auto& a = A(t, s);
                    if (f.is_zero(a)) continue;
                    auto& out = R[(o * dst + t) * inner + in];
                    out = f.add(out, f.mul(a, v));
                }
            }
    return R;
}

template <class F>
using RestrictionTriple = std::vector<Mat<F>>;

template <class F>
Tensor<F> apply_restriction(const Tensor<F>& S, const RestrictionTriple<F>& R) {
    if (R.size() != S.order()) throw ShapeError("restriction needs one map per mode");
    Tensor<F> T = S;
    for (size_t k = 0; k < R.size(); ++k) T = apply_mode(T, k, R[k]);
    return T;
}

template <class F>
bool verify_restriction(const Tensor<F>& S, const RestrictionTriple<F>& R, const Tensor<F>& T) {
    if (R.size() != S.order() || T.order() != S.order()) return false;
    for (size_t k = 0; k < R.size(); ++k)
        if (R[k].cols() != S.dim(k) || R[k].rows() != T.dim(k) || R[k].field() != S.field()) return false;
    return apply_restriction(S, R) == T;
}

// Composition: applying R then R2 equals applying compose(R, R2).
template <class F>
RestrictionTriple<F> compose(const RestrictionTriple<F>& R, const RestrictionTriple<F>& R2) {
    if (R.size() != R2.size()) throw ShapeError("restriction arity mismatch");
    RestrictionTriple<F> out;
    for (size_t k = 0; k < R.size(); ++k) out.push_back(R2[k] * R[k]);
    return out;
}

template <class F>
RestrictionTriple<F> identity_restriction(const Tensor<F>& T) {
    RestrictionTriple<F> R;
    for (size_t k = 0; k < T.order(); ++k) R.push_back(Mat<F>::identity(T.field(), T.dim(k)));
    return R;
}

// New mode i is old mode perm[i].
template <class F>
Tensor<F> permute_modes(const Tensor<F>& T, const std::vector<size_t>& perm) {
    if (perm.size() != T.order()) throw ShapeError("permutation arity mismatch");
    std::vector<size_t> dims(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) dims[i] = T.dim(perm[i]);
    Tensor<F> R(T.field(), dims);
    for (size_t i = 0; i < T.size(); ++i) {
        if (T.field().is_zero(T[i])) continue;
        Coord c = T.coord(i), d(perm.size());
        for (size_t j = 0; j < perm.size(); ++j) d[j] = c[perm[j]];
        R.at(d) = T[i];
    }
    return R;
}

// Regroup modes; each group is flattened lexicographically in the listed order.
template <class F>
Tensor<F> group_modes(const Tensor<F>& T, const std::vector<std::vector<size_t>>& groups) {
    std::vector<size_t> dims;
    std::vector<size_t> seen(T.order(), 0);
    for (const auto& g : groups) {
        if (g.empty()) throw ShapeError("empty mode group");
        size_t d = 1;
        for (size_t k : g) {
            if (k >= T.order() || seen[k]++) throw ShapeError("invalid mode grouping");
            d *= T.dim(k);
        }
        dims.push_back(d);
    }
    for (size_t s : seen)
        if (!s) throw ShapeError("mode grouping must cover every mode");
    Tensor<F> R(T.field(), dims);
    for (size_t i = 0; i < T.size(); ++i) {
        if (T.field().is_zero(T[i])) continue;
        Coord c = T.coord(i), d;
        for (const auto& g : groups) {
            size_t idx = 0;
            for (size_t k : g) idx = idx * T.dim(k) + c[k];
            d.push_back(idx);
        }
        R.at(d) = T[i];
    }
    return R;
}

// Rows indexed by the modes in `row_modes` (lexicographic), columns by the rest.
template <class F>
Mat<F> flatten(const Tensor<F>& T, const std::vector<size_t>& row_modes) {
    std::vector<size_t> rows = row_modes, cols;
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    if (rows.empty() || rows.size() >= T.order()) throw ShapeError("bipartition must be nonempty and proper");
    for (size_t k = 0; k < T.order(); ++k)
        if (!std::binary_search(rows.begin(), rows.end(), k)) cols.push_back(k);
    if (rows.back() >= T.order()) throw ShapeError("mode out of range");
    Tensor<F> G = group_modes(T, {rows, cols});
    Mat<F> M(T.field(), G.dim(0), G.dim(1));
    M.data() = G.data();
    return M;
}

// Slice of a 3-tensor at index l of mode k: matrix over the remaining modes in order.
template <class F>
Mat<F> slice(const Tensor<F>& T, size_t k, size_t l) {
    if (T.order() != 3) throw ShapeError("slice needs a 3-tensor");
    size_t a = k == 0 ? 1 : 0, b = k == 2 ? 1 : 2;
    Mat<F> M(T.field(), T.dim(a), T.dim(b));
    Coord c(3);
    c[k] = l;
    for (size_t i = 0; i < T.dim(a); ++i)
        for (size_t j = 0; j < T.dim(b); ++j) {
            c[a] = i;
            c[b] = j;
            M(i, j) = T.at(c);
        }
    return M;
}

template <class F>
std::vector<Coord> support(const Tensor<F>& T) {
    std::vector<Coord> out;
    for (size_t i = 0; i < T.size(); ++i)
        if (!T.field().is_zero(T[i])) out.push_back(T.coord(i));
    return out;
}

template <class F>
std::vector<Coord> support(const Tensor<F>& T, const RestrictionTriple<F>& basis_change) {
    for (size_t k = 0; k < basis_change.size(); ++k) {
        const auto& A = basis_change[k];
        if (A.rows() != A.cols() || A.rows() != T.dim(k) || rank(A) != A.rows())
            throw ShapeError("basis change on mode " + std::to_string(k + 1) + " is not invertible");
    }
    return support(apply_restriction(T, basis_change));
}

template <class F>
Tensor<F> random_tensor(const F& f, const std::vector<size_t>& dims, Rng& rng) {
    Tensor<F> T(f, dims);
    for (auto& x : T.data()) x = f.random(rng);
    return T;
}

inline Tensor<FiniteField> base_change(const Tensor<FiniteField>& T, const FieldEmbedding& emb) {
    if (T.field() != emb.source()) throw FieldError("tensor is not over the embedding source");
    Tensor<FiniteField> R(emb.target(), T.dims());
    for (size_t i = 0; i < T.size(); ++i) R[i] = emb.up(T[i]);
    return R;
}

inline Mat<FiniteField> lift(const Mat<FiniteField>& M, const ExtensionFor<FiniteField>& e) {
    return e.emb.identity() ? M : ext_embed(M, e.emb);
}
inline Mat<RationalField> lift(const Mat<RationalField>& M, const ExtensionFor<RationalField>&) { return M; }
inline Tensor<FiniteField> lift(const Tensor<FiniteField>& T, const ExtensionFor<FiniteField>& e) {
    return e.emb.identity() ? T : base_change(T, e.emb);
}
inline Tensor<RationalField> lift(const Tensor<RationalField>& T, const ExtensionFor<RationalField>&) { return T; }

// The field itself, viewed as a trivial extension.
inline ExtensionFor<FiniteField> trivial_extension(const FiniteField& f) { return {FieldEmbedding(f, f)}; }
inline ExtensionFor<RationalField> trivial_extension(const RationalField& f) { return {f}; }

}  // namespace thn
