#pragma once

#include "tensorhn/matrix.hpp"

namespace thn {

// Subspace of F^n stored as its canonical RREF basis.
template <class F>
class Subspace {
public:
    using Elem = typename F::Elem;

    Subspace() = default;
    Subspace(const F& f, size_t ambient) : basis_(f, 0, ambient) {}

    static Subspace span(const Mat<F>& rows) {
        Subspace s;
        s.basis_ = rows;
        s.pivots_ = rref_inplace(s.basis_);
        s.basis_.resize_rows(s.pivots_.size());
        return s;
    }
    static Subspace full(const F& f, size_t n) { return span(Mat<F>::identity(f, n)); }
    static Subspace zero(const F& f, size_t n) { return Subspace(f, n); }

    size_t ambient() const { return basis_.cols(); }
    size_t dim() const { return basis_.rows(); }
    const Mat<F>& basis() const { return basis_; }
    const std::vector<size_t>& pivots() const { return pivots_; }
    const F& field() const { return basis_.field(); }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient(); }

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    bool contains(const Elem* v) const {
        const F& f = field();
        std::vector<Elem> r(v, v + ambient());
        for (size_t i = 0; i < dim(); ++i) {
            Elem c = r[pivots_[i]];
            if (f.is_zero(c)) continue;
            const Elem* b = basis_.row(i);
            for (size_t j = pivots_[i]; j < ambient(); ++j)
                if (!f.is_zero(b[j])) r[j] = f.sub(r[j], f.mul(c, b[j]));
        }
        for (const auto& x : r)
            if (!f.is_zero(x)) return false;
        return true;
    }
    bool contains(const std::vector<Elem>& v) const { return contains(v.data()); }
    bool contains(const Subspace& o) const {
        check(o);
        for (size_t i = 0; i < o.dim(); ++i)
            if (!contains(o.basis_.row(i))) return false;
        return true;
    }

    // Annihilator under the standard pairing.
    Subspace perp() const {
        Subspace s;
        s.basis_ = null_space_from_rref(basis_, pivots_);
        s.pivots_ = rref_inplace(s.basis_);
        return s;
    }

    // Rows of standard unit vectors at the non-pivot columns: a complement.
    Mat<F> complement_basis() const {
        const F& f = field();
        std::vector<char> piv(ambient(), 0);
        for (size_t c : pivots_) piv[c] = 1;
        Mat<F> out(f, 0, ambient());
        std::vector<Elem> e(ambient(), f.zero());
        for (size_t j = 0; j < ambient(); ++j) {
            if (piv[j]) continue;
            e[j] = f.one();
            out.append_row(e);
            e[j] = f.zero();
        }
        return out;
    }

    std::vector<size_t> free_columns() const {
        std::vector<char> piv(ambient(), 0);
        for (size_t c : pivots_) piv[c] = 1;
        std::vector<size_t> out;
        for (size_t j = 0; j < ambient(); ++j)
            if (!piv[j]) out.push_back(j);
        return out;
    }

    // Coordinates of v modulo this subspace, read at the free columns after
    // reduction. Linear, with kernel exactly this subspace.
    std::vector<Elem> reduce_mod(const Elem* v) const {
        const F& f = field();
        std::vector<Elem> r(v, v + ambient());
        for (size_t i = 0; i < dim(); ++i) {
            Elem c = r[pivots_[i]];
            if (f.is_zero(c)) continue;
            const Elem* b = basis_.row(i);
            for (size_t j = pivots_[i]; j < ambient(); ++j)
                if (!f.is_zero(b[j])) r[j] = f.sub(r[j], f.mul(c, b[j]));
        }
        std::vector<Elem> out;
        for (size_t j : free_columns()) out.push_back(r[j]);
        return out;
    }

    // Matrix Q (ambient x (ambient - dim)) with v Q = reduce_mod(v).
    Mat<F> quotient_map() const {
        const F& f = field();
        auto fc = free_columns();
        Mat<F> Q(f, ambient(), fc.size());
        std::vector<Elem> e(ambient(), f.zero());
        for (size_t i = 0; i < ambient(); ++i) {
            e[i] = f.one();
            auto r = reduce_mod(e.data());
            for (size_t j = 0; j < fc.size(); ++j) Q(i, j) = r[j];
            e[i] = f.zero();
        }
        return Q;
    }

    Subspace operator+(const Subspace& o) const {
        check(o);
        return span(vstack(basis_, o.basis_));
    }

    Subspace intersect(const Subspace& o) const {
        check(o);
        return (perp() + o.perp()).perp();
    }

    // Rows of this subspace extending a basis of (this ∩ o) to a basis of this.
    Mat<F> quotient_basis(const Subspace& o) const {
        Subspace cap = intersect(o);
        Mat<F> acc = cap.basis_;
        size_t r = cap.dim();
        Mat<F> out(field(), 0, ambient());
        for (size_t i = 0; i < dim(); ++i) {
            Mat<F> t = acc;
            t.append_row(basis_.row(i));
            if (rank(t) > r) {
                acc = t;
                ++r;
                out.append_row(basis_.row(i));
            }
        }
        return out;
    }

private:
    void check(const Subspace& o) const {
        if (ambient() != o.ambient()) throw ShapeError("ambient dimension mismatch");
        if (field() != o.field()) throw FieldError("mixed-field operands");
    }

    Mat<F> basis_;
    std::vector<size_t> pivots_;
};

}  // namespace thn
