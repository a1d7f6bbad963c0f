#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "tensorhn/maxflow.hpp"
#include "tensorhn/support.hpp"

using namespace thn;

namespace {

using FF = FiniteField;

SupportSet sup2(size_t n, size_t m, std::vector<Coord> pts) { return make_support({n, m}, std::move(pts)); }

SupportSet full(size_t n, size_t m) {
    std::vector<Coord> pts;
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < m; ++k) pts.push_back({j, k});
    return sup2(n, m, pts);
}

SupportSet diag(size_t n) {
    std::vector<Coord> pts;
    for (size_t j = 0; j < n; ++j) pts.push_back({j, j});
    return sup2(n, n, pts);
}

SupportSet random_full_support(size_t n, size_t m, double p, std::mt19937_64& rng) {
    for (;;) {
        std::bernoulli_distribution coin(p);
        std::vector<Coord> pts;
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < m; ++k)
                if (coin(rng)) pts.push_back({j, k});
        auto s = sup2(n, m, pts);
        std::vector<char> r(n, 0), c(m, 0);
        for (auto& q : s.points) r[q[0]] = c[q[1]] = 1;
        if (std::count(r.begin(), r.end(), 0) == 0 && std::count(c.begin(), c.end(), 0) == 0) return s;
    }
}

// Subset enumeration: peel the largest row set of maximal ratio |J'|/|N(J')|.
std::vector<Block> brute_blocks(const SupportSet& phi) {
    size_t n = phi.sizes[0], m = phi.sizes[1];
    std::vector<uint32_t> nbr(n, 0);
    for (auto& p : phi.points) nbr[p[0]] |= 1u << p[1];
    uint32_t rows = (1u << n) - 1, cols = (1u << m) - 1;
    std::vector<Block> out;
    while (rows) {
        uint32_t best = 0, bestN = 0;
        for (uint32_t J = rows;; J = (J - 1) & rows) {
            if (J) {
                uint32_t N = 0;
                for (size_t j = 0; j < n; ++j)
                    if (J >> j & 1) N |= nbr[j];
                N &= cols;
                int a = __builtin_popcount(J), b = __builtin_popcount(N);
                int ba = __builtin_popcount(best), bb = __builtin_popcount(bestN);
                long lhs = long(a) * bb, rhs = long(ba) * b;
                if (!best || lhs > rhs || (lhs == rhs && a > ba)) {
                    best = J;
                    bestN = N;
                }
            }
            if (J == 0) break;
        }
        Block blk;
        for (size_t j = 0; j < n; ++j)
            if (best >> j & 1) blk.J.push_back(j);
        for (size_t k = 0; k < m; ++k)
            if (bestN >> k & 1) blk.K.push_back(k);
        out.push_back(blk);
        rows &= ~best;
        cols &= ~bestN;
    }
    return out;
}

// Plain exponentiated-gradient ascent, used only as an independent cross-check.
double mirror_ascent(const SupportSet& phi, const std::vector<double>& theta, int iters) {
    size_t N = phi.points.size(), d = phi.order();
    std::vector<double> P(N, 1.0 / N);
    double best = 0;
    for (int it = 0; it < iters; ++it) {
        std::vector<std::vector<double>> marg(d);
        for (size_t k = 0; k < d; ++k) {
            marg[k].assign(phi.sizes[k], 0);
            for (size_t i = 0; i < N; ++i) marg[k][phi.points[i][k]] += P[i];
        }
        double F = 0;
        for (size_t k = 0; k < d; ++k)
            for (double x : marg[k])
                if (x > 0) F -= theta[k] * x * std::log2(x);
        best = std::max(best, F);
        double z = 0;
        for (size_t i = 0; i < N; ++i) {
            double h = 0;
            for (size_t k = 0; k < d; ++k) h -= theta[k] * std::log2(marg[k][phi.points[i][k]]);
            P[i] *= std::exp(0.5 * h);
            z += P[i];
        }
        for (auto& x : P) x /= z;
    }
    return best;
}

Mat<FF> perm_matrix(const FF& f, const std::vector<size_t>& to) {
    Mat<FF> P(f, to.size(), to.size());
    for (size_t s = 0; s < to.size(); ++s) P(to[s], s) = f.one();
    return P;
}

// Positions of the sorted keys: index -> rank.
template <class Key>
std::vector<size_t> rank_by(size_t count, Key key) {
    std::vector<size_t> idx(count), to(count);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return key(a) < key(b); });
    for (size_t r = 0; r < count; ++r) to[idx[r]] = r;
    return to;
}

// <E,H,L> in bases ordered so that its support is an antichain.
Tensor<FF> oblique_matmul(const FF& f, size_t E, size_t H, size_t L) {
    auto T = make_matmul(f, E, H, L);
    auto p1 = rank_by(E * H, [&](size_t x) {
        long i = long(x / H), j = long(x % H);
        return std::make_pair(i - j, i);
    });
    auto p2 = rank_by(H * L, [&](size_t x) {
        long j = long(x / L), k = long(x % L);
        return std::make_pair(j - k, -j);
    });
    auto p3 = rank_by(L * E, [&](size_t x) {
        long k = long(x / E), i = long(x % E);
        return k - i;
    });
    return apply_restriction(T, {perm_matrix(f, p1), perm_matrix(f, p2), perm_matrix(f, p3)});
}

}  // namespace

TEST_CASE("max flow on a small network") {
    MaxFlow mf(4);
    mf.add_edge(0, 1, 3);
    mf.add_edge(0, 2, 2);
    mf.add_edge(1, 2, 5);
    auto e = mf.add_edge(1, 3, 2);
    mf.add_edge(2, 3, 3);
    CHECK(mf.run(0, 3) == 5);
    CHECK(mf.flow_on(e) == 2);
    auto side = mf.source_side(0);
    CHECK(side[0]);
    CHECK_FALSE(side[3]);
}

TEST_CASE("balancedness examples") {
    for (size_t n = 1; n <= 5; ++n) {
        auto r = is_balanced(diag(n));
        CHECK(r.balanced);
        CHECK(check_balance(diag(n), r));
    }
    auto s = sup2(2, 2, {{0, 0}, {0, 1}});
    auto r = is_balanced(s);
    CHECK_FALSE(r.balanced);
    CHECK(r.violating == std::vector<size_t>{1});
    CHECK(r.neighbours.empty());
    CHECK(check_balance(s, r));
    for (size_t n = 1; n <= 4; ++n)
        for (size_t m = 1; m <= 4; ++m) {
            auto f = full(n, m);
            auto b = is_balanced(f);
            CHECK(b.balanced);
            CHECK(check_balance(f, b));
        }
    CHECK_THROWS_AS(is_balanced(sup2(2, 2, {})), std::invalid_argument);
}

TEST_CASE("balance witnesses agree with Hall enumeration") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 300; ++it) {
        size_t n = 1 + rng() % 5, m = 1 + rng() % 5;
        auto phi = random_full_support(n, m, 0.4, rng);
        auto r = is_balanced(phi);
        CHECK(check_balance(phi, r));
        auto blocks = brute_blocks(phi);
        CHECK(r.balanced == (blocks.size() == 1));
    }
}

TEST_CASE("block decomposition examples") {
    auto one = block_decomposition(full(2, 3));
    REQUIRE(one.blocks.size() == 1);
    CHECK(one.blocks[0].J.size() == 2);

    auto s = sup2(3, 3, {{0, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}});
    auto b = block_decomposition(s);
    CHECK(b.blocks.size() == 1);
    CHECK(verify_block_decomposition(s, b));

    // {(1,1)} then a 2x3 block whose rows may also reach column 1.
    auto t = sup2(3, 4, {{0, 0}, {1, 0}, {1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}, {2, 3}});
    auto bt = block_decomposition(t);
    REQUIRE(bt.blocks.size() == 2);
    CHECK(bt.blocks[0].J == std::vector<size_t>{0});
    CHECK(bt.blocks[0].K == std::vector<size_t>{0});
    CHECK(bt.blocks[1].K == std::vector<size_t>{1, 2, 3});
    std::string why;
    CHECK(verify_block_decomposition(t, bt, &why));

    BlockDecomposition wrong{{{{1, 2}, {1, 2, 3}}, {{0}, {0}}}};
    CHECK_FALSE(verify_block_decomposition(t, wrong, &why));
    CHECK_THROWS_AS(block_decomposition(sup2(2, 2, {{0, 0}})), std::invalid_argument);
}

TEST_CASE("block decomposition matches subset enumeration") {
    std::mt19937_64 rng(12);
    for (int it = 0; it < 400; ++it) {
        size_t n = 1 + rng() % 6, m = 1 + rng() % 6;
        auto phi = random_full_support(n, m, 0.3 + 0.1 * (it % 4), rng);
        auto b = block_decomposition(phi);
        std::string why;
        CHECK_MESSAGE(verify_block_decomposition(phi, b, &why), why);
        auto bb = brute_blocks(phi);
        REQUIRE(b.blocks.size() == bb.size());
        for (size_t u = 0; u < bb.size(); ++u) {
            CHECK(b.blocks[u].J == bb[u].J);
            CHECK(b.blocks[u].K == bb[u].K);
        }
    }
}

TEST_CASE("2d weighted entropy") {
    for (Rational rho : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)}) {
        long double r = static_cast<long double>(rho);
        auto e = weighted_entropy_2d(full(3, 5), rho);
        CHECK(double(e.value) == doctest::Approx(double(r * std::log2(3.0L) + (1 - r) * std::log2(5.0L))));
        CHECK(double(weighted_entropy_2d(diag(4), rho).value) == doctest::Approx(2.0));
        auto t = sup2(3, 4, {{0, 0}, {1, 0}, {1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}, {2, 3}});
        auto et = weighted_entropy_2d(t, rho);
        double expect = std::log2(1 + std::pow(2.0, double(r)) * std::pow(3.0, 1 - double(r)));
        CHECK(double(et.value) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(double(weighted_entropy_of(et.maximizer, t.sizes, {r, 1 - r})) ==
              doctest::Approx(expect).epsilon(1e-12));
        for (auto& p : et.maximizer.points) CHECK(t.contains(p));
    }
    auto sparse = sup2(4, 4, {{0, 0}, {2, 2}});
    CHECK(double(weighted_entropy_2d(sparse, Rational(1, 2)).value) == doctest::Approx(1.0));
    CHECK_THROWS_AS(weighted_entropy_2d(full(2, 2), Rational(3, 2)), std::invalid_argument);
}

TEST_CASE("general entropy solver") {
    auto s1 = make_support({2, 3, 2}, {{1, 2, 0}});
    auto e1 = weighted_entropy_general(s1, {0.2L, 0.3L, 0.5L});
    CHECK(e1.converged);
    CHECK(double(e1.value) == doctest::Approx(0.0));

    std::vector<Coord> pts;
    for (size_t a = 0; a < 2; ++a)
        for (size_t b = 0; b < 3; ++b)
            for (size_t c = 0; c < 4; ++c) pts.push_back({a, b, c});
    auto cube = make_support({2, 3, 4}, pts);
    auto ec = weighted_entropy_general(cube, {0.5L, 0.25L, 0.25L});
    CHECK(ec.converged);
    CHECK(double(ec.value) == doctest::Approx(0.5 + 0.25 * std::log2(3.0) + 0.5).epsilon(1e-9));

    CHECK_THROWS_AS(weighted_entropy_general(cube, {0.5L, 0.5L}), std::invalid_argument);
    CHECK_THROWS_AS(weighted_entropy_general(cube, {0.5L, 0.6L, -0.1L}), std::invalid_argument);
}

TEST_CASE("general solver agrees with the exact 2d formula") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 200; ++it) {
        size_t n = 1 + rng() % 5, m = 1 + rng() % 5;
        auto phi = random_full_support(n, m, 0.35, rng);
        Rational rho(int(rng() % 7), 6);
        long double r = static_cast<long double>(rho);
        auto ex = weighted_entropy_2d(phi, rho);
        auto ge = weighted_entropy_general(phi, {r, 1 - r});
        CHECK(ge.converged);
        CHECK(ge.kkt_gap <= 1e-9L);
        CHECK(std::fabs(ge.value - ex.value) <= 1e-9L);
    }
}

TEST_CASE("general solver agrees with mirror ascent in three modes") {
    std::mt19937_64 rng(14);
    for (int it = 0; it < 20; ++it) {
        std::bernoulli_distribution coin(0.4);
        std::vector<Coord> pts;
        for (size_t a = 0; a < 3; ++a)
            for (size_t b = 0; b < 3; ++b)
                for (size_t c = 0; c < 3; ++c)
                    if (coin(rng)) pts.push_back({a, b, c});
        if (pts.empty()) continue;
        auto phi = make_support({3, 3, 3}, pts);
        std::vector<long double> th = {0.5L, 0.3L, 0.2L};
        auto ge = weighted_entropy_general(phi, th);
        CHECK(ge.converged);
        double ma = mirror_ascent(phi, {0.5, 0.3, 0.2}, 20000);
        CHECK(double(ge.value) >= ma - 1e-9);
        CHECK(double(ge.value) - ma <= 1e-4);
        CHECK(ge.upper - ge.value <= 1e-9L);
    }
}

TEST_CASE("support functionals at the current basis") {
    auto f = FF::prime(5);
    for (Rational rho : {Rational(0), Rational(1, 2), Rational(2, 3), Rational(1)}) {
        double r = static_cast<double>(rho);
        for (size_t n = 1; n <= 4; ++n) {
            auto D = make_diagonal(f, n);
            CHECK(double(upper_support_at_basis(D, rho)) == doctest::Approx(double(n)));
            // In the standard order the diagonal is a chain; reversing one mode makes it an antichain.
            CHECK(double(lower_support_at_basis(D, rho)) == doctest::Approx(1.0));
            std::vector<size_t> rev(n);
            for (size_t i = 0; i < n; ++i) rev[i] = n - 1 - i;
            auto Dr = apply_mode(D, 0, perm_matrix(f, rev));
            CHECK(double(lower_support_at_basis(Dr, rho)) == doctest::Approx(double(n)));
        }
        for (size_t E = 1; E <= 3; ++E)
            for (size_t H = 1; H <= 3; ++H)
                for (size_t L = 1; L <= 3; ++L) {
                    auto T = make_matmul(f, E, H, L);
                    double expect = std::pow(double(E), r) * H * std::pow(double(L), 1 - r);
                    CHECK(double(upper_support_at_basis(T, rho)) == doctest::Approx(expect).epsilon(1e-12));
                    auto O = oblique_matmul(f, E, H, L);
                    CHECK(maximal_points(support_set(O)).points.size() == O.nnz());
                    CHECK(double(lower_support_at_basis(O, rho)) == doctest::Approx(expect).epsilon(1e-12));
                }
    }
    auto P = project_support_12(make_matmul(f, 2, 1, 3));
    CHECK(P.points.size() == 6);
    CHECK_THROWS_AS(upper_support_at_basis(Tensor<FF>(f, {2, 2, 2}), Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("maximal points") {
    auto s = make_support({3, 3}, {{0, 0}, {1, 2}, {2, 1}, {0, 2}});
    auto top = maximal_points(s);
    CHECK(top.points == std::vector<Coord>{{1, 2}, {2, 1}});
}

TEST_CASE("2d entropy is monotone under adding points") {
    std::mt19937_64 rng(15);
    for (int it = 0; it < 100; ++it) {
        size_t n = 1 + rng() % 5, m = 1 + rng() % 5;
        auto phi = random_full_support(n, m, 0.3, rng);
        auto pts = phi.points;
        pts.push_back({rng() % n, rng() % m});
        auto bigger = sup2(n, m, pts);
        Rational rho(int(rng() % 5), 4);
        CHECK(weighted_entropy_2d(bigger, rho).value >= weighted_entropy_2d(phi, rho).value - 1e-15L);
    }
}
