#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tensorhn/field.hpp"

namespace thn {

struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <class F>
class Mat {
public:
    using Elem = typename F::Elem;

    Mat() = default;
    Mat(const F& f, size_t rows, size_t cols) : f_(f), r_(rows), c_(cols), a_(rows * cols, f.zero()) {}

    static Mat identity(const F& f, size_t n) {
        Mat m(f, n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = f.one();
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    const F& field() const { return f_; }

    Elem& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const Elem& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }
    Elem* row(size_t i) { return a_.data() + i * c_; }
    const Elem* row(size_t i) const { return a_.data() + i * c_; }
    std::vector<Elem>& data() { return a_; }
    const std::vector<Elem>& data() const { return a_; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!f_.is_zero(x)) return false;
        return true;
    }

    bool operator==(const Mat& o) const { return f_ == o.f_ && r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    void append_row(const Elem* v) {
        a_.insert(a_.end(), v, v + c_);
        ++r_;
    }
    void append_row(const std::vector<Elem>& v) {
        if (v.size() != c_) throw ShapeError("row length mismatch");
        append_row(v.data());
    }
    std::vector<Elem> row_vec(size_t i) const { return std::vector<Elem>(row(i), row(i) + c_); }
    void resize_rows(size_t r) {
        a_.resize(r * c_, f_.zero());
        r_ = r;
    }

private:
    F f_{};
    size_t r_ = 0, c_ = 0;
    std::vector<Elem> a_;
};

template <class F>
void require_same_field(const Mat<F>& a, const Mat<F>& b) {
    if (a.field() != b.field()) throw FieldError("mixed-field operands");
}

template <class F>
struct Rref {
    Mat<F> R;
    std::vector<size_t> pivots;
    size_t rank = 0;
};

// In-place reduced row echelon form; pivot = first nonzero entry in column
// order. Returns pivot columns. Zero rows are moved to the bottom.
template <class F>
std::vector<size_t> rref_inplace(Mat<F>& M) {
    const F& f = M.field();
    const size_t R = M.rows(), C = M.cols();
    std::vector<size_t> piv;
    size_t r = 0;
    for (size_t c = 0; c < C && r < R; ++c) {
        size_t s = r;
        while (s < R && f.is_zero(M(s, c))) ++s;
        if (s == R) continue;
        if (s != r)
            for (size_t j = c; j < C; ++j) std::swap(M(s, j), M(r, j));
        auto* pr = M.row(r);
        if (!f.is_one(pr[c])) {
            auto inv = f.inv(pr[c]);
            for (size_t j = c; j < C; ++j) pr[j] = f.mul(pr[j], inv);
        }
        for (size_t i = 0; i < R; ++i) {
            if (i == r) continue;
            auto* pi = M.row(i);
            if (f.is_zero(pi[c])) continue;
            auto fac = pi[c];
            for (size_t j = c; j < C; ++j)
                if (!f.is_zero(pr[j])) pi[j] = f.sub(pi[j], f.mul(fac, pr[j]));
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

template <class F>
Rref<F> rref(const Mat<F>& M) {
    Rref<F> out{M, {}, 0};
    out.pivots = rref_inplace(out.R);
    out.rank = out.pivots.size();
    return out;
}

template <class F>
size_t rank(const Mat<F>& M) {
    Mat<F> t = M;
    return rref_inplace(t).size();
}

template <class F>
Mat<F> transpose(const Mat<F>& M) {
    Mat<F> t(M.field(), M.cols(), M.rows());
    for (size_t i = 0; i < M.rows(); ++i)
        for (size_t j = 0; j < M.cols(); ++j) t(j, i) = M(i, j);
    return t;
}

template <class F>
Mat<F> operator*(const Mat<F>& A, const Mat<F>& B) {
    require_same_field(A, B);
    if (A.cols() != B.rows()) throw ShapeError("matrix product shape mismatch");
    const F& f = A.field();
    Mat<F> C(f, A.rows(), B.cols());
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t k = 0; k < A.cols(); ++k) {
            const auto& a = A(i, k);
            if (f.is_zero(a)) continue;
            const auto* b = B.row(k);
            auto* c = C.row(i);
            for (size_t j = 0; j < B.cols(); ++j)
                if (!f.is_zero(b[j])) c[j] = f.add(c[j], f.mul(a, b[j]));
        }
    return C;
}

template <class F>
Mat<F> operator+(const Mat<F>& A, const Mat<F>& B) {
    require_same_field(A, B);
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw ShapeError("matrix sum shape mismatch");
    Mat<F> C = A;
    for (size_t i = 0; i < C.data().size(); ++i) C.data()[i] = A.field().add(C.data()[i], B.data()[i]);
    return C;
}

template <class F>
Mat<F> scale(const Mat<F>& A, const typename F::Elem& s) {
    Mat<F> C = A;
    for (auto& x : C.data()) x = A.field().mul(x, s);
    return C;
}

template <class F>
Mat<F> kron(const Mat<F>& A, const Mat<F>& B) {
    require_same_field(A, B);
    const F& f = A.field();
    Mat<F> C(f, A.rows() * B.rows(), A.cols() * B.cols());
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t j = 0; j < A.cols(); ++j) {
            if (f.is_zero(A(i, j))) continue;
            for (size_t k = 0; k < B.rows(); ++k)
                for (size_t l = 0; l < B.cols(); ++l) C(i * B.rows() + k, j * B.cols() + l) = f.mul(A(i, j), B(k, l));
        }
    return C;
}

template <class F>
Mat<F> vstack(const Mat<F>& A, const Mat<F>& B) {
    if (A.cols() != B.cols()) throw ShapeError("vstack column mismatch");
    require_same_field(A, B);
    Mat<F> C = A;
    for (size_t i = 0; i < B.rows(); ++i) C.append_row(B.row(i));
    return C;
}

template <class F>
Mat<F> hstack(const Mat<F>& A, const Mat<F>& B) {
    if (A.rows() != B.rows()) throw ShapeError("hstack row mismatch");
    require_same_field(A, B);
    Mat<F> C(A.field(), A.rows(), A.cols() + B.cols());
    for (size_t i = 0; i < A.rows(); ++i) {
        for (size_t j = 0; j < A.cols(); ++j) C(i, j) = A(i, j);
        for (size_t j = 0; j < B.cols(); ++j) C(i, A.cols() + j) = B(i, j);
    }
    return C;
}

// Basis (as rows) of the space spanned by the null space of an RREF matrix:
// all x with R x^T = 0.
template <class F>
Mat<F> null_space_from_rref(const Mat<F>& R, const std::vector<size_t>& piv) {
    const F& f = R.field();
    const size_t C = R.cols();
    std::vector<char> is_piv(C, 0);
    for (size_t c : piv) is_piv[c] = 1;
    Mat<F> K(f, C - piv.size(), C);
    size_t k = 0;
    for (size_t j = 0; j < C; ++j) {
        if (is_piv[j]) continue;
        K(k, j) = f.one();
        for (size_t i = 0; i < piv.size(); ++i) K(k, piv[i]) = f.neg(R(i, j));
        ++k;
    }
    return K;
}

// Rows spanning {x : M x^T = 0}.
template <class F>
Mat<F> right_kernel(const Mat<F>& M) {
    Mat<F> R = M;
    auto piv = rref_inplace(R);
    return null_space_from_rref(R, piv);
}

// Rows spanning {u : u M = 0}.
template <class F>
Mat<F> left_kernel(const Mat<F>& M) {
    return right_kernel(transpose(M));
}

template <class F>
Mat<F> inverse(const Mat<F>& M) {
    if (M.rows() != M.cols()) throw ShapeError("inverse of non-square matrix");
    const size_t n = M.rows();
    Mat<F> aug = hstack(M, Mat<F>::identity(M.field(), n));
    auto piv = rref_inplace(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) throw FieldError("singular matrix");
    Mat<F> inv(M.field(), n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

// Some x with x M = b, or false.
template <class F>
bool solve_left(const Mat<F>& M, const std::vector<typename F::Elem>& b, std::vector<typename F::Elem>& x) {
    const F& f = M.field();
    if (b.size() != M.cols()) throw ShapeError("solve_left shape mismatch");
    // Solve M^T x^T = b^T.
    Mat<F> aug(f, M.cols(), M.rows() + 1);
    for (size_t i = 0; i < M.cols(); ++i) {
        for (size_t j = 0; j < M.rows(); ++j) aug(i, j) = M(j, i);
        aug(i, M.rows()) = b[i];
    }
    auto piv = rref_inplace(aug);
    if (!piv.empty() && piv.back() == M.rows()) return false;
    x.assign(M.rows(), f.zero());
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, M.rows());
    return true;
}

template <class F>
Mat<F> random_mat(const F& f, size_t r, size_t c, Rng& rng) {
    Mat<F> M(f, r, c);
    for (auto& x : M.data()) x = f.random(rng);
    return M;
}

template <class F>
Mat<F> random_invertible(const F& f, size_t n, Rng& rng) {
    for (;;) {
        Mat<F> M = random_mat(f, n, n, rng);
        if (rank(M) == n) return M;
    }
}

template <class F>
Mat<F> select_rows(const Mat<F>& M, const std::vector<size_t>& idx) {
    Mat<F> S(M.field(), 0, M.cols());
    for (size_t i : idx) S.append_row(M.row(i));
    return S;
}

template <class F, class G, class Fn>
Mat<G> map_entries(const Mat<F>& M, const G& g, Fn fn) {
    Mat<G> out(g, M.rows(), M.cols());
    for (size_t i = 0; i < M.data().size(); ++i) out.data()[i] = fn(M.data()[i]);
    return out;
}

// Entrywise embedding into an extension field.
inline Mat<FiniteField> ext_embed(const Mat<FiniteField>& M, const FieldEmbedding& emb) {
    if (M.field() != emb.source()) throw FieldError("matrix is not over the embedding source");
    return map_entries(M, emb.target(), [&](FiniteField::Elem a) { return emb.up(a); });
}

}  // namespace thn
