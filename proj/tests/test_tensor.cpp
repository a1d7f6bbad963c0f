#include "doctest.h"

#include "tensorhn/tensor.hpp"

using namespace thn;

namespace {

using FF = FiniteField;

Mat<FF> perm_matrix(const FF& f, const std::vector<size_t>& to) {
    Mat<FF> P(f, to.size(), to.size());
    for (size_t s = 0; s < to.size(); ++s) P(to[s], s) = f.one();
    return P;
}

}  // namespace

TEST_CASE("named constructors") {
    auto f = FF::prime(5);
    auto mm = make_matmul(f, 2, 2, 2);
    CHECK(mm.dims() == std::vector<size_t>{4, 4, 4});
    CHECK(mm.nnz() == 8);
    CHECK(make_matmul(f, 2, 3, 4).nnz() == 24);
    CHECK(make_matmul(f, 2, 3, 4).dims() == std::vector<size_t>{6, 12, 8});

    auto unit = make_diagonal(f, 1);
    CHECK(unit.dims() == std::vector<size_t>{1, 1, 1});
    CHECK(unit.nnz() == 1);

    auto pd = make_partial_diagonal(f, 3, {0, 2}, 4);
    CHECK(pd.dims() == std::vector<size_t>{3, 1, 3, 1});
    auto s = support(pd);
    REQUIRE(s.size() == 3);
    for (size_t i = 0; i < 3; ++i) CHECK(s[i] == Coord{i, 0, i, 0});

    CHECK_THROWS_AS(make_matmul(f, 0, 1, 1), ShapeError);
    CHECK_THROWS_AS(make_diagonal(f, 0), ShapeError);
}

TEST_CASE("direct sum and product of diagonals") {
    auto f = FF::prime(3);
    CHECK(direct_sum(make_diagonal(f, 1), make_diagonal(f, 1)) == make_diagonal(f, 2));
    auto p = tensor_product(make_diagonal(f, 2), make_diagonal(f, 3));
    CHECK(p.dims() == std::vector<size_t>{6, 6, 6});
    CHECK(p == make_diagonal(f, 6));
    CHECK_THROWS_AS(direct_sum(make_diagonal(f, 2), make_diagonal(FF::prime(5), 2)), FieldError);
}

TEST_CASE("matmul product is matmul under the documented index order") {
    auto f = FF::prime(7);
    size_t n = 2, m = 3, p = 2, n2 = 3, m2 = 1, p2 = 2;
    auto prod = tensor_product(make_matmul(f, n, m, p), make_matmul(f, n2, m2, p2));
    auto target = make_matmul(f, n * n2, m * m2, p * p2);
    // (a,b) pairs: product index (a*B+b)*(A2*B2)+(a2*B2+b2); target (a*A2+a2)*(B*B2)+(b*B2+b2).
    auto mode_perm = [&](size_t A, size_t B, size_t A2, size_t B2) {
        std::vector<size_t> to(A * B * A2 * B2);
        for (size_t a = 0; a < A; ++a)
            for (size_t b = 0; b < B; ++b)
                for (size_t a2 = 0; a2 < A2; ++a2)
                    for (size_t b2 = 0; b2 < B2; ++b2)
                        to[(a * B + b) * (A2 * B2) + a2 * B2 + b2] = (a * A2 + a2) * (B * B2) + b * B2 + b2;
        return to;
    };
    RestrictionTriple<FF> R = {perm_matrix(f, mode_perm(n, m, n2, m2)), perm_matrix(f, mode_perm(m, p, m2, p2)),
                               perm_matrix(f, mode_perm(p, n, p2, n2))};
    CHECK(verify_restriction(prod, R, target));
}

TEST_CASE("restriction basics") {
    auto f = FF::prime(11);
    Rng rng(1);
    auto S = random_tensor(f, {2, 3, 4}, rng);
    CHECK(verify_restriction(S, identity_restriction(S), S));
    RestrictionTriple<FF> Z = {Mat<FF>(f, 2, 2), Mat<FF>(f, 3, 3), Mat<FF>(f, 4, 4)};
    CHECK(apply_restriction(S, Z).is_zero());
    RestrictionTriple<FF> bad = {Mat<FF>(f, 2, 3), Mat<FF>(f, 3, 3), Mat<FF>(f, 4, 4)};
    CHECK_THROWS_AS(apply_restriction(S, bad), ShapeError);
    CHECK_FALSE(verify_restriction(S, bad, S));
}

TEST_CASE("trace construction restricts <n,1,n> to <1,n,1>") {
    auto f = FF::prime(2);
    for (size_t n = 1; n <= 4; ++n) {
        auto S = make_matmul(f, n, 1, n);
        Mat<FF> tr(f, 1, n * n);
        for (size_t i = 0; i < n; ++i) tr(0, i * n + i) = f.one();
        RestrictionTriple<FF> R = {Mat<FF>::identity(f, n), Mat<FF>::identity(f, n), tr};
        CHECK(verify_restriction(S, R, make_matmul(f, 1, n, 1)));
    }
}

TEST_CASE("restrictions compose") {
    auto f = FF::prime(13);
    Rng rng(2);
    for (int it = 0; it < 20; ++it) {
        auto S = random_tensor(f, {2, 3, 2}, rng);
        RestrictionTriple<FF> R = {random_mat(f, 3, 2, rng), random_mat(f, 2, 3, rng), random_mat(f, 2, 2, rng)};
        RestrictionTriple<FF> R2 = {random_mat(f, 1, 3, rng), random_mat(f, 4, 2, rng), random_mat(f, 3, 2, rng)};
        CHECK(apply_restriction(apply_restriction(S, R), R2) == apply_restriction(S, compose(R, R2)));
    }
}

TEST_CASE("product associativity and sum commutativity") {
    auto f = FF::prime(5);
    Rng rng(3);
    auto A = random_tensor(f, {2, 1, 2}, rng), B = random_tensor(f, {1, 2, 2}, rng), C = random_tensor(f, {2, 2, 1}, rng);
    CHECK(tensor_product(tensor_product(A, B), C) == tensor_product(A, tensor_product(B, C)));

    auto AB = direct_sum(A, B), BA = direct_sum(B, A);
    RestrictionTriple<FF> swap, back;
    for (size_t k = 0; k < 3; ++k) {
        std::vector<size_t> to(A.dim(k) + B.dim(k));
        for (size_t i = 0; i < A.dim(k); ++i) to[i] = B.dim(k) + i;
        for (size_t i = 0; i < B.dim(k); ++i) to[A.dim(k) + i] = i;
        auto P = perm_matrix(f, to);
        swap.push_back(P);
        back.push_back(transpose(P));
    }
    CHECK(verify_restriction(AB, swap, BA));
    CHECK(verify_restriction(BA, back, AB));
}

TEST_CASE("support and flattenings") {
    auto f = FF::prime(101);
    auto d2 = make_diagonal(f, 2);
    CHECK(support(d2) == std::vector<Coord>{{0, 0, 0}, {1, 1, 1}});
    for (size_t E = 1; E <= 3; ++E)
        for (size_t H = 1; H <= 3; ++H)
            for (size_t L = 1; L <= 3; ++L) {
                auto T = make_matmul(f, E, H, L);
                CHECK(rank(flatten(T, {0})) == E * H);
                CHECK(rank(flatten(T, {1})) == H * L);
                CHECK(rank(flatten(T, {2})) == L * E);
                CHECK(rank(flatten(T, {1, 2})) == E * H);
            }
    CHECK_THROWS_AS(flatten(d2, {}), ShapeError);
    CHECK_THROWS_AS(flatten(d2, {0, 1, 2}), ShapeError);

    Rng rng(4);
    size_t full = 0;
    for (int it = 0; it < 20; ++it) {
        RestrictionTriple<FF> G = {random_invertible(f, 2, rng), random_invertible(f, 2, rng),
                                   random_invertible(f, 2, rng)};
        auto s = support(d2, G);
        CHECK(s.size() >= 2);
        if (s.size() == 8) ++full;
        auto T = apply_restriction(random_tensor(f, {2, 2, 2}, rng), G);
        for (size_t k = 0; k < 3; ++k) CHECK(rank(flatten(T, {k})) == rank(flatten(apply_restriction(T, G), {k})));
    }
    CHECK(full >= 15);
    RestrictionTriple<FF> sing = {Mat<FF>(f, 2, 2), Mat<FF>::identity(f, 2), Mat<FF>::identity(f, 2)};
    CHECK_THROWS_AS(support(d2, sing), ShapeError);
}

TEST_CASE("mode permutation and grouping") {
    auto f = FF::prime(3);
    Rng rng(5);
    auto T = random_tensor(f, {2, 3, 4}, rng);
    auto P = permute_modes(T, {2, 0, 1});
    CHECK(P.dims() == std::vector<size_t>{4, 2, 3});
    CHECK(P.at({3, 1, 2}) == T.at({1, 2, 3}));
    auto G = group_modes(T, {{0}, {1, 2}});
    CHECK(G.dims() == std::vector<size_t>{2, 12});
    CHECK(G.at({1, 2 * 4 + 3}) == T.at({1, 2, 3}));
}
