#pragma once

#include <string>
#include <vector>

#include "tensorhn/kronecker.hpp"
#include "tensorhn/tensor.hpp"

namespace thn {

// Points are 0-based coordinate tuples, sorted and unique.
struct SupportSet {
    std::vector<size_t> sizes;
    std::vector<Coord> points;

    size_t order() const { return sizes.size(); }
    bool empty() const { return points.empty(); }
    bool contains(const Coord& c) const;
};

SupportSet make_support(std::vector<size_t> sizes, std::vector<Coord> points);
// Drops empty rows and columns of a 2-mode support and relabels.
SupportSet trim(const SupportSet& s, std::vector<std::vector<size_t>>* kept = nullptr);
SupportSet restrict_2d(const SupportSet& s, const std::vector<size_t>& J, const std::vector<size_t>& K);

struct BalanceResult {
    bool balanced = false;
    int64_t scale = 0;               // flow value; row sums scale/n, column sums scale/m
    std::vector<int64_t> flow;       // per point of the support
    std::vector<size_t> violating;   // J' with |N(J')| < (m/n)|J'|
    std::vector<size_t> neighbours;  // N(J')
};

BalanceResult is_balanced(const SupportSet& phi);
bool check_balance(const SupportSet& phi, const BalanceResult& r);

struct Block {
    std::vector<size_t> J, K;
};

struct BlockDecomposition {
    std::vector<Block> blocks;
    std::vector<Slope> ratios() const;
};

BlockDecomposition block_decomposition(const SupportSet& phi);
bool verify_block_decomposition(const SupportSet& phi, const BlockDecomposition& b, std::string* why = nullptr);

struct Distribution {
    std::vector<Coord> points;
    std::vector<long double> weights;
    std::vector<long double> marginal(size_t mode, size_t size) const;
};

struct Entropy2D {
    long double value = 0;  // bits
    Distribution maximizer;
    BlockDecomposition blocks;
};

Entropy2D weighted_entropy_2d(const SupportSet& phi, const Rational& rho);
long double block_formula(const BlockDecomposition& b, long double rho);

struct EntropyGeneral {
    long double value = 0;       // F(P) at the returned P
    long double upper = 0;       // max_alpha h_P(alpha), an upper bound on the optimum
    long double kkt_gap = 0;     // max h_P - min over supp P of h_P
    size_t iterations = 0;
    bool converged = false;
    Distribution maximizer;
};

EntropyGeneral weighted_entropy_general(const SupportSet& phi, const std::vector<long double>& theta,
                                        long double tol = 1e-9L, size_t max_iter = 100000);
long double weighted_entropy_of(const Distribution& p, const std::vector<size_t>& sizes,
                                const std::vector<long double>& theta);

template <class F>
SupportSet support_set(const Tensor<F>& T) {
    return make_support(T.dims(), support(T));
}

template <class F>
SupportSet project_support_12(const Tensor<F>& T) {
    if (T.order() != 3) throw ShapeError("support projection needs a 3-tensor");
    std::vector<Coord> pts;
    for (const auto& c : support(T)) pts.push_back({c[0], c[1]});
    return make_support({T.dim(0), T.dim(1)}, pts);
}

// Maximal elements under the product order.
SupportSet maximal_points(const SupportSet& s);

// 2^{H_theta} of the projected support, theta = (rho, 1 - rho, 0).
long double support_value_2d(const SupportSet& projected, const Rational& rho);

template <class F>
long double upper_support_at_basis(const Tensor<F>& T, const Rational& rho) {
    if (T.is_zero()) throw std::invalid_argument("zero tensor");
    return support_value_2d(project_support_12(T), rho);
}

template <class F>
long double lower_support_at_basis(const Tensor<F>& T, const Rational& rho) {
    if (T.is_zero()) throw std::invalid_argument("zero tensor");
    SupportSet top = maximal_points(support_set(T));
    std::vector<Coord> pts;
    for (const auto& c : top.points) pts.push_back({c[0], c[1]});
    return support_value_2d(make_support({T.dim(0), T.dim(1)}, pts), rho);
}

}  // namespace thn
