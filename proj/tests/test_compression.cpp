#include "doctest.h"

#include <cmath>

#include "tensorhn/compression.hpp"

using namespace thn;

namespace {

using FF = FiniteField;

std::optional<Tensor<FF>> random_semistable(const FF& f, std::vector<size_t> dims, Rng& rng) {
    for (int t = 0; t < 20; ++t) {
        auto T = random_tensor(f, dims, rng);
        if (is_semistable(as_rep(T, 2), rng).semistable) return T;
    }
    return std::nullopt;
}

double rel(const Real& a, double b) { return (abs(a - Real(b)) / Real(b)).convert_to<double>(); }

}  // namespace

TEST_CASE("basis shift examples") {
    auto f = FF::prime(1009);
    Rng rng(1);
    for (size_t q = 1; q <= 4; ++q) {
        auto s = basis_shift(make_matmul(f, 1, q, 1), rng);
        CHECK(s.lambdas == std::vector<size_t>{q});
        CHECK(verify_shift(s));
    }
    // Zero slices appended: trailing lambdas vanish.
    auto T = random_tensor(f, {3, 4, 2}, rng);
    Tensor<FF> Z(f, {3, 4, 4});
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 4; ++j)
            for (size_t l = 0; l < 2; ++l) Z.at({i, j, l}) = T.at({i, j, l});
    auto sz = basis_shift(Z, rng);
    CHECK(sz.lambdas[2] == 0);
    CHECK(sz.lambdas[3] == 0);

    for (int it = 0; it < 10; ++it) {
        auto S = random_semistable(f, {3, 5, 4}, rng);
        REQUIRE(S);
        auto s = basis_shift(*S, rng);
        size_t total = 0;
        for (size_t x : s.lambdas) total += x;
        CHECK(total == rank(flatten(*S, {1})));
        std::string why;
        CHECK_MESSAGE(verify_shift(s, &why), why);
    }
    CHECK_THROWS_AS(basis_shift(Tensor<FF>(f, {2, 2, 2}), rng), std::invalid_argument);
}

TEST_CASE("basis shift lambdas do not depend on the draw") {
    auto f = FF::prime(1009);
    Rng rng(2);
    for (int it = 0; it < 10; ++it) {
        auto T = random_tensor(f, {1 + rng() % 4, 1 + rng() % 6, 1 + rng() % 4}, rng);
        for (size_t i = 0; i < T.size(); ++i)
            if (rng() % 2) T[i] = 0;
        if (T.is_zero()) continue;
        auto first = basis_shift(T, rng).lambdas;
        for (int d = 0; d < 9; ++d) CHECK(basis_shift(T, rng).lambdas == first);
    }
}

TEST_CASE("shift tampering is detected") {
    auto f = FF::prime(1009);
    Rng rng(3);
    auto s = basis_shift(random_tensor(f, {3, 4, 3}, rng), rng);
    auto bad = s;
    bad.lambdas[0] += 1;
    CHECK_FALSE(verify_shift(bad));
    bad = s;
    bad.L(0, 1) = 1;
    CHECK_FALSE(verify_shift(bad));
}

TEST_CASE("small fields are extended") {
    auto f = FF::prime(2);
    Rng rng(4);
    auto s = basis_shift(make_matmul(f, 1, 3, 1), rng);
    CHECK(s.extended);
    CHECK(s.shifted.field().size() >= 65536);
    CHECK(s.lambdas == std::vector<size_t>{3});
}

TEST_CASE("compression of semistable tensors") {
    auto f = FF::prime(1009);
    Rng rng(5);
    for (size_t n = 1; n <= 4; ++n) {
        auto c = compress_semistable(make_matmul(f, 1, n, 1), 1, rng);
        CHECK(c.lambda == n);
        CHECK(verify_restriction(c.source, c.maps, make_matmul(f, 1, n, 1)));
    }
    for (size_t n = 2; n <= 5; ++n) {
        auto S = random_semistable(f, {n, n, 2}, rng);
        REQUIRE(S);
        auto c = compress_semistable(*S, 1, rng);
        CHECK(c.lambda >= (n + 1) / 2);
        CHECK(verify_restriction(c.source, c.maps, make_matmul(f, c.E, c.H, c.L)));
    }
    auto S = random_semistable(f, {2, 6, 3}, rng);
    REQUIRE(S);
    auto c = compress_semistable(*S, 2, rng);
    CHECK(c.bound == 1);
    CHECK(c.lambda >= 1);
    CHECK(c.H == c.lambda);
    CHECK(c.L == 2);
    CHECK(verify_restriction(c.source, c.maps, make_matmul(f, 1, c.lambda, 2)));

    for (int it = 0; it < 30; ++it) {
        size_t n = 1 + rng() % 4, m = n + rng() % 5, k = 1 + rng() % 4;
        auto T = random_semistable(f, {n, m, k}, rng);
        if (!T) continue;
        for (const auto& r : compress_all(*T, rng)) {
            CHECK(r.lambda >= r.bound);
            CHECK(verify_restriction(r.source, r.maps, make_matmul(f, r.E, r.H, r.L)));
        }
    }
}

TEST_CASE("compression with more rows than columns swaps roles") {
    auto f = FF::prime(1009);
    Rng rng(6);
    auto T = random_semistable(f, {6, 2, 3}, rng);
    REQUIRE(T);
    auto all = compress_all(*T, rng);
    REQUIRE(all.size() == 3);
    for (const auto& r : all) {
        CHECK(r.swapped);
        CHECK(r.E == r.p);
        CHECK(r.L == 1);
        CHECK(verify_restriction(*T, r.maps, make_matmul(f, r.E, r.H, r.L)));
        CHECK(r.lambda >= r.bound);
    }
}

TEST_CASE("compression rejects unstable tensors") {
    auto f = FF::prime(1009);
    Rng rng(7);
    auto T = direct_sum(make_matmul(f, 2, 1, 1), make_matmul(f, 1, 1, 3));
    CHECK_THROWS_AS(compress_all(T, rng), InstabilityError);
    CHECK_THROWS_AS(compress_semistable(make_matmul(f, 1, 2, 1), 3, rng), std::invalid_argument);
    CHECK(compression_bound(2, 6, 2) == 1);
    CHECK(compression_bound(3, 3, 1) == 2);
}

TEST_CASE("matrix multiplication power isomorphism") {
    auto f = FF::prime(3);
    for (size_t N = 1; N <= 3; ++N) {
        auto R = matmul_power_iso(f, 2, 1, 2, N);
        size_t e = size_t(std::pow(2, N));
        CHECK(verify_restriction(tensor_power(make_matmul(f, 2, 1, 2), N), R, make_matmul(f, e, 1, e)));
    }
    auto shape = matmul_shape(make_matmul(f, 2, 3, 1));
    REQUIRE(shape);
    CHECK((*shape == std::array<size_t, 3>{2, 3, 1}));
    CHECK_FALSE(matmul_shape(make_diagonal(f, 2)));
}

TEST_CASE("power extraction") {
    auto f = FF::prime(1009);
    Rng rng(8);
    for (int it = 0; it < 8; ++it) {
        size_t n = 1 + rng() % 3, m = n + rng() % 3;
        auto T = random_semistable(f, {n, m, 2}, rng);
        if (!T) continue;
        Rational rho(int(rng() % 5), 4);
        auto e = power_extract(*T, rho, 1, rng);
        double r = static_cast<double>(rho);
        CHECK(e.bound.convert_to<double>() >= std::pow(double(n), r) * std::pow(double(m), 1 - r) / 8 - 1e-12);
        CHECK(e.bound <= zeta_edge(*T, {3, rho}, rng).value * (1 + Real(1e-12)));
        CHECK(value_lower_bound(e.source, rho, e.extraction));
    }
    for (size_t N = 1; N <= 2; ++N) {
        auto e = power_extract(make_matmul(f, 2, 1, 2), Rational(1, 3), N, rng);
        CHECK(rel(e.bound, std::pow(2.0, 1.0 / 3) * std::pow(2.0, 2.0 / 3)) <= 1e-12);
    }
    auto T = direct_sum(make_matmul(f, 2, 1, 1), make_matmul(f, 1, 1, 3));
    auto e = power_extract(T, Rational(1, 2), 2, rng);
    CHECK(e.hn_consistent);
    CHECK(e.power_data == DimData{{4, 1}, {4, 6}, {1, 9}});
    CHECK(e.block == 1);
    CHECK(e.bound <= zeta_edge(T, {3, Rational(1, 2)}, rng).value);
    CHECK_THROWS_AS(power_extract(Tensor<FF>(f, {2, 2, 2}), Rational(1, 2), 1, rng), std::invalid_argument);
}
