// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "tensorhn/compression.hpp"
#include "tensorhn/lab.hpp"
#include "tensorhn/support.hpp"

using namespace thn;

namespace {

using FF = FiniteField;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

double rel_err(const Real& a, const Real& b) {
    Real d = abs(a - b);
    Real s = abs(b) > 0 ? abs(b) : Real(1);
    return (d / s).convert_to<double>();
}

Tensor<FF> tensor_from_bits(const FF& f, const std::vector<size_t>& dims, uint64_t bits) {
    Tensor<FF> T(f, dims);
    for (size_t i = 0; i < T.size(); ++i) T[i] = (bits >> i) & 1;
    return T;
}

Tensor<FF> sparse_random(const FF& f, const std::vector<size_t>& dims, Rng& rng, unsigned keep_percent) {
    auto T = random_tensor(f, dims, rng);
    for (size_t i = 0; i < T.size(); ++i)
        if (rng() % 100 >= keep_percent) T[i] = 0;
    return T;
}

Mat<FF> random_invertible(const FF& f, size_t n, Rng& rng) {
    for (;;) {
        Mat<FF> M(f, n, n);
        for (auto& x : M.data()) x = rng() % 3 == 0 ? f.random(rng) : 0;
        for (size_t i = 0; i < n; ++i)
            if (f.is_zero(M(i, i))) M(i, i) = f.one();
        if (rank(M) == n) return M;
    }
}

// Minimum of p^r + q^(1-r) over [0,1] from the stationarity condition.
long double acr_closed_form(long double p, long double q) {
    auto g = [&](long double r) { return std::pow(p, r) + std::pow(q, 1 - r); };
    long double best = std::min(g(0), g(1));
    if (p > 1 && q > 1) {
        long double r = (std::log(q) + std::log(std::log(q)) - std::log(std::log(p))) / (std::log(p) + std::log(q));
        if (r > 0 && r < 1) best = std::min(best, g(r));
    }
    return best;
}

Outcome hn_oracle() {
    Outcome o;
    Rng rng(101);
    size_t count = 0, bad = 0;
    auto f2 = FF::prime(2);
    for (size_t n = 1; n <= 3; ++n)
        for (size_t m = 1; m <= 3; ++m)
            for (size_t k = 1; k <= 2; ++k) {
                size_t cells = n * m * k;
                for (uint64_t bits = 0; bits < (uint64_t(1) << cells); ++bits) {
                    auto rep = as_rep(tensor_from_bits(f2, {n, m, k}, bits));
                    if (hn_filtration(rep, rng).dim_data() != brute_force_hn(rep).dim_data()) ++bad;
                    ++count;
                }
            }
    auto f3 = FF::prime(3);
    for (int it = 0; it < 500; ++it) {
        std::vector<size_t> dims{1 + rng() % 3, 1 + rng() % 3, 1 + rng() % 3};
        auto rep = as_rep(sparse_random(f3, dims, rng, 20 + rng() % 80));
        if (hn_filtration(rep, rng).dim_data() != brute_force_hn(rep).dim_data()) ++bad;
        ++count;
    }
    o.pass = bad == 0;
    o.detail = std::to_string(count) + " reps, " + std::to_string(bad) + " mismatches";
    return o;
}

Outcome mm_formula() {
    Outcome o;
    Rng rng(102);
    auto f = FF::prime(1009);
    double worst = 0;
    const Rational rhos[] = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
    for (size_t E = 1; E <= 3; ++E)
        for (size_t H = 1; H <= 3; ++H)
            for (size_t L = 1; L <= 3; ++L)
                for (const auto& rho : rhos) {
                    Real r = to_real(rho);
                    Real expect = pow(Real(E), r) * Real(H) * pow(Real(L), 1 - r);
                    worst = std::max(worst, rel_err(zeta_edge(make_matmul(f, E, H, L), {3, rho}, rng).value, expect));
                }
    o.pass = worst <= 1e-12;
    o.detail = "135 cases, worst relative error " + sci(worst);
    return o;
}

Outcome spectral_laws() {
    Outcome o;
    Rng rng(103);
    auto f = FF::prime(5);
    const Rational rhos[] = {Rational(0), Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(1)};
    double worst = 0;
    int pairs = 0;
    while (pairs < 200) {
        auto S = sparse_random(f, {1 + rng() % 3, 1 + rng() % 3, 1 + rng() % 3}, rng, 30 + rng() % 70);
        auto T = sparse_random(f, {1 + rng() % 3, 1 + rng() % 3, 1 + rng() % 3}, rng, 30 + rng() % 70);
        if (S.is_zero() || T.is_zero()) continue;
        EdgeParam p{1 + size_t(pairs % 3), rhos[rng() % 6]};
        Real zs = zeta_edge(S, p, rng).value, zt = zeta_edge(T, p, rng).value;
        worst = std::max(worst, rel_err(zeta_edge(direct_sum(S, T), p, rng).value, zs + zt));
        worst = std::max(worst, rel_err(zeta_edge(tensor_product(S, T), p, rng).value, zs * zt));
        ++pairs;
    }
    o.pass = worst <= 1e-9;
    o.detail = "200 pairs, worst relative error " + sci(worst);
    return o;
}

Outcome acr_closed_forms() {
    Outcome o;
    Rng rng(104);
    auto f = FF::prime(1009);
    double worst = 0, worst_sym = 0;
    for (size_t p = 1; p <= 9; ++p)
        for (size_t q = 1; q <= 9; ++q) {
            auto a = acr(direct_sum(make_matmul(f, p, 1, 1), make_matmul(f, 1, 1, q)), 3, rng);
            long double expect = acr_closed_form(p, q);
            worst = std::max(worst, std::fabs(a.value.convert_to<double>() - double(expect)) / double(expect));
            if (p == q && p > 1) {
                worst_sym = std::max(worst_sym, rel_err(a.value, 2 * sqrt(Real(p))));
                worst_sym = std::max(worst_sym, std::fabs(a.argmin.convert_to<double>() - 0.5) > 1e-6 ? 1.0 : 0.0);
            }
        }
    o.pass = worst <= 1e-9 && worst_sym <= 1e-9;
    o.detail = "81 pairs, worst relative error " + sci(worst) + ", symmetric " + sci(worst_sym);
    return o;
}

Outcome quantum_max_flow() {
    Outcome o;
    Rng rng(105);
    auto f = FF::prime(1009);
    int bad = 0, monte = 0;
    for (size_t a = 1; a <= 3; ++a)
        for (size_t b = 1; b <= 3; ++b)
            for (size_t c = 1; c <= 3; ++c)
                for (size_t d = 1; d <= 3; ++d) {
                    auto r = multilinear_cr(graph_tensor(f, four_cycle(a, b, c, d)), 0, 1, rng);
                    if (r.value != std::min(a, b) * std::min(d, c)) ++bad;
                    if (r.method == RankMethod::monte_carlo) ++monte;
                }
    o.pass = bad == 0;
    o.detail = "81 weightings, " + std::to_string(bad) + " mismatches, " + std::to_string(monte) + " monte-carlo";
    return o;
}

Outcome separation() {
    Outcome o;
    Rng rng(106);
    auto t = tpq_numbers(4, 9, rng);
    bool exact10 = t.acr34_integer == size_t(10) && t.acr34 == Real(10);
    o.pass = exact10 && t.acr12 < 10 && t.acr34_agrees && t.separated;
    o.detail = "acr34 = " + t.acr34.str(20) + ", acr12 = " + t.acr12.str(20);
    return o;
}

Outcome compression() {
    Outcome o;
    Rng rng(107);
    auto f = FF::prime(1009);
    int tensors = 0, restrictions = 0, bad = 0;
    while (tensors < 200) {
        size_t n = 1 + rng() % 8, m = n + rng() % (9 - n), k = 1 + rng() % 4;
        auto T = random_tensor(f, {n, m, k}, rng);
        if (!is_semistable(as_rep(T, 2), rng).semistable) continue;
        ++tensors;
        size_t expected = 0;
        for (size_t p = 1; p * n <= m && p <= k; ++p) ++expected;
        auto all = compress_all(T, rng);
        if (all.size() != expected) ++bad;
        for (const auto& r : all) {
            ++restrictions;
            bool ok = r.lambda >= compression_bound(n, m, r.p) &&
                      verify_restriction(r.source, r.maps, make_matmul(r.source.field(), r.E, r.H, r.L));
            if (!ok) ++bad;
        }
    }
    o.pass = bad == 0;
    o.detail = "200 tensors, " + std::to_string(restrictions) + " restrictions, " + std::to_string(bad) + " failures";
    return o;
}

Outcome balance_vs_stability() {
    Outcome o;
    Rng rng(108);
    auto f = FF::prime(3);
    int stable = 0, unstable = 0, bad = 0;
    while (stable < 30 || unstable < 30) {
        size_t n = 1 + rng() % 4, m = 1 + rng() % 4, k = 1 + rng() % 3;
        auto T = sparse_random(f, {n, m, k}, rng, 30 + rng() % 60);
        if (T.is_zero()) continue;
        auto rep = as_rep(T, 2);
        auto st = is_semistable(rep, rng);
        if (st.semistable) {
            if (stable >= 30) continue;
            ++stable;
            for (int b = 0; b < 50; ++b) {
                RestrictionTriple<FF> R{random_invertible(f, n, rng), random_invertible(f, m, rng), Mat<FF>::identity(f, k)};
                if (!is_balanced(project_support_12(apply_restriction(T, R))).balanced) ++bad;
            }
        } else {
            if (unstable >= 30 || !st.witness) continue;
            ++unstable;
            const auto& W = *st.witness;
            auto img = image_of(rep, W);
            Mat<FF> BU = vstack(W.basis(), Subspace<FF>::full(f, n).quotient_basis(W));
            Mat<FF> BV = vstack(img.basis(), Subspace<FF>::full(f, m).quotient_basis(img));
            RestrictionTriple<FF> R{BU, transpose(inverse(BV)), Mat<FF>::identity(f, k)};
            if (is_balanced(project_support_12(apply_restriction(T, R))).balanced) ++bad;
        }
    }
    o.pass = bad == 0;
    o.detail = "30 semistable x 50 bases, 30 unstable, " + std::to_string(bad) + " failures";
    return o;
}

Outcome base_change_invariance() {
    Outcome o;
    Rng rng(109);
    int bad = 0, count = 0;
    for (uint32_t p : {2u, 3u, 5u}) {
        auto f = FF::prime(p);
        auto emb = extension_by(f, 2);
        int reps = p == 2 ? 34 : 33;
        for (int it = 0; it < reps; ++it) {
            auto rep = as_rep(sparse_random(f, {1 + rng() % 4, 1 + rng() % 4, 1 + rng() % 3}, rng, 30 + rng() % 70));
            if (hn_filtration(rep, rng).dim_data() != hn_filtration(base_change(rep, emb), rng).dim_data()) ++bad;
            ++count;
        }
    }
    o.pass = bad == 0 && count == 100;
    o.detail = std::to_string(count) + " reps, " + std::to_string(bad) + " mismatches";
    return o;
}

Outcome dominance_gap() {
    Outcome o;
    bool ok = true;
    for (unsigned n = 0; n <= 40; ++n) {
        auto g = monomial_dominance_gap(n);
        ok = ok && g.subrank == boost::multiprecision::pow(BigInt(3), n) && g.below_bound;
    }
    auto g10 = monomial_dominance_gap(10);
    o.pass = ok && g10.subrank == 59049 && g10.best_monomial == 8064;
    o.detail = "n <= 40; n = 10: " + g10.subrank.str() + " vs " + g10.best_monomial.str();
    return o;
}

Outcome cr_sandwich() {
    Outcome o;
    Rng rng(111);
    auto f = FF::prime(1009);
    int bad = 0, deficient = 0;
    for (int it = 0; it < 300; ++it) {
        Tensor<FF> T;
        size_t mode = 1 + rng() % 3;
        if (it % 3 == 0) {
            // Skew-symmetric slices: odd sizes force CR below NCR.
            size_t n = 2 + rng() % 3, k = 1 + rng() % 4;
            T = Tensor<FF>(f, {n, n, k});
            for (size_t l = 0; l < k; ++l)
                for (size_t i = 0; i < n; ++i)
                    for (size_t j = i + 1; j < n; ++j) {
                        auto x = rng() % 2 ? f.random(rng) : 0;
                        T.at({i, j, l}) = x;
                        T.at({j, i, l}) = f.neg(x);
                    }
            mode = 3;
        } else {
            T = sparse_random(f, {1 + rng() % 4, 1 + rng() % 4, 1 + rng() % 4}, rng, 15 + rng() % 85);
        }
        auto s = cr_ncr_sandwich(T, mode, rng);
        if (!s.holds) ++bad;
        if (int64_t(s.cr.value) < s.ncr) ++deficient;
    }
    o.pass = bad == 0;
    o.detail = "300 tensors, " + std::to_string(bad) + " violations, " + std::to_string(deficient) + " with CR < NCR";
    return o;
}

Outcome entropy_cross_check() {
    Outcome o;
    Rng rng(112);
    int count = 0, bad = 0;
    double worst = 0;
    while (count < 200) {
        size_t n = 1 + rng() % 5, m = 1 + rng() % 5;
        std::vector<Coord> pts;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < m; ++j)
                if (rng() % 100 < 45) pts.push_back({i, j});
        if (pts.empty()) continue;
        auto phi = trim(make_support({n, m}, pts));
        Rational rho(int(rng() % 9), 8);
        auto exact = weighted_entropy_2d(phi, rho);
        long double r = static_cast<long double>(rho);
        auto iter = weighted_entropy_general(phi, {r, 1 - r});
        double err = double(std::fabs(exact.value - iter.value));
        worst = std::max(worst, err);
        if (err > 1e-9 || !iter.converged || iter.kkt_gap > 1e-9 ||
            !verify_block_decomposition(phi, exact.blocks))
            ++bad;
        ++count;
    }
    o.pass = bad == 0;
    o.detail = "200 supports, worst gap " + sci(worst) + ", " + std::to_string(bad) + " failures";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "HN oracle equivalence", hn_oracle},
        {2, "edge formula on matrix multiplication", mm_formula},
        {3, "additivity and multiplicativity", spectral_laws},
        {4, "ACR closed forms", acr_closed_forms},
        {5, "quantum max-flow on the 4-cycle", quantum_max_flow},
        {6, "T_{4,9} separation numbers", separation},
        {7, "compression guarantee", compression},
        {8, "balancedness and semistability", balance_vs_stability},
        {9, "base-change invariance", base_change_invariance},
        {10, "monomial dominance gap", dominance_gap},
        {11, "CR/NCR sandwich", cr_sandwich},
        {12, "entropy cross-check", entropy_cross_check},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2d %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
