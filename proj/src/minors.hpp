#pragma once

#include <map>
#include <vector>

namespace thn::detail {

// Multivariate polynomials keyed by exponent vectors.
template <class F>
using Poly = std::map<std::vector<uint16_t>, typename F::Elem>;

template <class F>
void add_product(const F& f, Poly<F>& acc, const Poly<F>& a, const Poly<F>& b, bool negate) {
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<uint16_t> e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            auto c = f.mul(ca, cb);
            if (negate) c = f.neg(c);
            auto it = acc.find(e);
            if (it == acc.end()) {
                acc.emplace(std::move(e), c);
            } else {
                it->second = f.add(it->second, c);
                if (f.is_zero(it->second)) acc.erase(it);
            }
        }
}

template <class F>
Poly<F> det(const F& f, const std::vector<std::vector<Poly<F>>>& P, const std::vector<size_t>& rows,
            const std::vector<size_t>& cols) {
    if (rows.size() == 1) return P[rows[0]][cols[0]];
    Poly<F> acc;
    std::vector<size_t> sub_rows(rows.begin() + 1, rows.end());
    for (size_t c = 0; c < cols.size(); ++c) {
        const auto& e = P[rows[0]][cols[c]];
        if (e.empty()) continue;
        std::vector<size_t> sub_cols = cols;
        sub_cols.erase(sub_cols.begin() + c);
        auto minor = det(f, P, sub_rows, sub_cols);
        if (!minor.empty()) add_product(f, acc, e, minor, c % 2 == 1);
    }
    return acc;
}

inline void subsets(size_t n, size_t r, std::vector<std::vector<size_t>>& out) {
    std::vector<size_t> cur;
    auto rec = [&](auto&& self, size_t start) -> void {
        if (cur.size() == r) {
            out.push_back(cur);
            return;
        }
        for (size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

// True if some r x r minor of the polynomial matrix P is a nonzero polynomial.
template <class F>
bool some_minor_nonzero(const F& f, const std::vector<std::vector<Poly<F>>>& P, size_t r) {
    size_t n = P.size(), m = n ? P[0].size() : 0;
    std::vector<std::vector<size_t>> rs, cs;
    subsets(n, r, rs);
    subsets(m, r, cs);
    for (const auto& R : rs)
        for (const auto& C : cs)
            if (!det(f, P, R, C).empty()) return true;
    return false;
}

}  // namespace thn::detail
