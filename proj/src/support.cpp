#include "tensorhn/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "tensorhn/maxflow.hpp"

namespace thn {

bool SupportSet::contains(const Coord& c) const { return std::binary_search(points.begin(), points.end(), c); }

SupportSet make_support(std::vector<size_t> sizes, std::vector<Coord> points) {
    if (sizes.size() < 2) throw ShapeError("support needs at least two modes");
    for (size_t s : sizes)
        if (s == 0) throw ShapeError("zero dimension");
    for (const auto& p : points) {
        if (p.size() != sizes.size()) throw ShapeError("point has the wrong number of coordinates");
        for (size_t k = 0; k < p.size(); ++k)
            if (p[k] >= sizes[k]) throw ShapeError("point out of range");
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return {std::move(sizes), std::move(points)};
}

SupportSet trim(const SupportSet& s, std::vector<std::vector<size_t>>* kept) {
    if (s.empty()) throw std::invalid_argument("empty support");
    size_t d = s.order();
    std::vector<std::vector<size_t>> keep(d);
    std::vector<std::vector<size_t>> relabel(d);
    for (size_t k = 0; k < d; ++k) {
        std::vector<char> used(s.sizes[k], 0);
        for (const auto& p : s.points) used[p[k]] = 1;
        relabel[k].assign(s.sizes[k], 0);
        for (size_t i = 0; i < s.sizes[k]; ++i)
            if (used[i]) {
                relabel[k][i] = keep[k].size();
                keep[k].push_back(i);
            }
    }
    std::vector<size_t> sizes(d);
    for (size_t k = 0; k < d; ++k) sizes[k] = keep[k].size();
    std::vector<Coord> pts;
    for (auto p : s.points) {
        for (size_t k = 0; k < d; ++k) p[k] = relabel[k][p[k]];
        pts.push_back(p);
    }
    if (kept) *kept = keep;
    return make_support(sizes, pts);
}

SupportSet restrict_2d(const SupportSet& s, const std::vector<size_t>& J, const std::vector<size_t>& K) {
    if (s.order() != 2) throw ShapeError("expected a 2-mode support");
    std::map<size_t, size_t> rj, rk;
    for (size_t i = 0; i < J.size(); ++i) rj[J[i]] = i;
    for (size_t i = 0; i < K.size(); ++i) rk[K[i]] = i;
    std::vector<Coord> pts;
    for (const auto& p : s.points) {
        auto a = rj.find(p[0]), b = rk.find(p[1]);
        if (a != rj.end() && b != rk.end()) pts.push_back({a->second, b->second});
    }
    return make_support({J.size(), K.size()}, pts);
}

namespace {

void require_full_2d(const SupportSet& s) {
    if (s.order() != 2) throw ShapeError("expected a 2-mode support");
    std::vector<char> r(s.sizes[0], 0), c(s.sizes[1], 0);
    for (const auto& p : s.points) r[p[0]] = c[p[1]] = 1;
    for (char x : r)
        if (!x) throw std::invalid_argument("support has an empty row");
    for (char x : c)
        if (!x) throw std::invalid_argument("support has an empty column");
}

}  // namespace

BalanceResult is_balanced(const SupportSet& phi) {
    if (phi.order() != 2) throw ShapeError("expected a 2-mode support");
    if (phi.empty()) throw std::invalid_argument("empty support");
    size_t n = phi.sizes[0], m = phi.sizes[1];
    int64_t L = std::lcm<int64_t>(n, m);
    const int64_t inf = L + 1;
    size_t s = n + m, t = n + m + 1;
    MaxFlow mf(n + m + 2);
    for (size_t j = 0; j < n; ++j) mf.add_edge(s, j, L / int64_t(n));
    for (size_t k = 0; k < m; ++k) mf.add_edge(n + k, t, L / int64_t(m));
    std::vector<size_t> mid;
    for (const auto& p : phi.points) mid.push_back(mf.add_edge(p[0], n + p[1], inf));
    int64_t v = mf.run(s, t);

    BalanceResult r;
    r.scale = L;
    r.balanced = v == L;
    if (r.balanced) {
        for (size_t id : mid) r.flow.push_back(mf.flow_on(id));
        return r;
    }
    auto side = mf.source_side(s);
    for (size_t j = 0; j < n; ++j)
        if (side[j]) r.violating.push_back(j);
    std::vector<char> nb(m, 0);
    for (const auto& p : phi.points)
        if (side[p[0]]) nb[p[1]] = 1;
    for (size_t k = 0; k < m; ++k)
        if (nb[k]) r.neighbours.push_back(k);
    return r;
}

bool check_balance(const SupportSet& phi, const BalanceResult& r) {
    size_t n = phi.sizes[0], m = phi.sizes[1];
    if (r.balanced) {
        if (r.flow.size() != phi.points.size() || r.scale <= 0) return false;
        if (r.scale % int64_t(n) || r.scale % int64_t(m)) return false;
        std::vector<int64_t> rs(n, 0), cs(m, 0);
        for (size_t i = 0; i < r.flow.size(); ++i) {
            if (r.flow[i] < 0) return false;
            rs[phi.points[i][0]] += r.flow[i];
            cs[phi.points[i][1]] += r.flow[i];
        }
        for (auto x : rs)
            if (x != r.scale / int64_t(n)) return false;
        for (auto x : cs)
            if (x != r.scale / int64_t(m)) return false;
        return true;
    }
    std::vector<char> in(n, 0);
    for (size_t j : r.violating) in[j] = 1;
    std::vector<char> nb(m, 0);
    for (const auto& p : phi.points)
        if (in[p[0]]) nb[p[1]] = 1;
    size_t cnt = std::count(nb.begin(), nb.end(), 1);
    return !r.violating.empty() && cnt * n < m * r.violating.size();
}

std::vector<Slope> BlockDecomposition::ratios() const {
    std::vector<Slope> out;
    for (const auto& b : blocks) out.push_back(Slope::of(b.J.size(), b.K.size()));
    return out;
}

namespace {

// Maximal J' maximizing b|J'| - a|N(J')| over rows R, with N taken inside C.
// Returns the value and fills Jp / Kp.
int64_t closure_cut(const SupportSet& phi, const std::vector<size_t>& R, const std::vector<size_t>& C, int64_t a,
                    int64_t b, std::vector<size_t>& Jp, std::vector<size_t>& Kp) {
    size_t nr = R.size(), nc = C.size();
    std::map<size_t, size_t> ri, ci;
    for (size_t i = 0; i < nr; ++i) ri[R[i]] = i;
    for (size_t i = 0; i < nc; ++i) ci[C[i]] = i;
    size_t s = nr + nc, t = s + 1;
    MaxFlow mf(nr + nc + 2);
    const int64_t inf = b * int64_t(nr) + 1;
    for (size_t j = 0; j < nr; ++j) mf.add_edge(s, j, b);
    for (size_t k = 0; k < nc; ++k) mf.add_edge(nr + k, t, a);
    for (const auto& p : phi.points) {
        auto x = ri.find(p[0]), y = ci.find(p[1]);
        if (x != ri.end() && y != ci.end()) mf.add_edge(x->second, nr + y->second, inf);
    }
    int64_t cut = mf.run(s, t);
    auto reach = mf.reaches_sink(t);
    Jp.clear();
    Kp.clear();
    for (size_t j = 0; j < nr; ++j)
        if (!reach[j]) Jp.push_back(R[j]);
    for (size_t k = 0; k < nc; ++k)
        if (!reach[nr + k]) Kp.push_back(C[k]);
    return b * int64_t(nr) - cut;
}

std::vector<size_t> neighbourhood(const SupportSet& phi, const std::vector<size_t>& J, const std::vector<size_t>& C) {
    std::vector<char> in(phi.sizes[0], 0), inc(phi.sizes[1], 0), nb(phi.sizes[1], 0);
    for (size_t j : J) in[j] = 1;
    for (size_t k : C) inc[k] = 1;
    for (const auto& p : phi.points)
        if (in[p[0]] && inc[p[1]]) nb[p[1]] = 1;
    std::vector<size_t> out;
    for (size_t k = 0; k < nb.size(); ++k)
        if (nb[k]) out.push_back(k);
    return out;
}

}  // namespace

BlockDecomposition block_decomposition(const SupportSet& phi) {
    require_full_2d(phi);
    std::vector<size_t> R(phi.sizes[0]), C(phi.sizes[1]);
    std::iota(R.begin(), R.end(), 0);
    std::iota(C.begin(), C.end(), 0);
    BlockDecomposition out;
    while (!R.empty()) {
        Slope c = Slope::of(R.size(), C.size());
        std::vector<size_t> Jp, Kp;
        for (;;) {
            int64_t val = closure_cut(phi, R, C, c.num, c.den, Jp, Kp);
            if (val == 0) break;
            auto N = neighbourhood(phi, Jp, C);
            c = Slope::of(Jp.size(), N.size());
        }
        // At value zero the maximal source side is the largest set of ratio c.
        Kp = neighbourhood(phi, Jp, C);
        if (Jp.empty()) throw std::logic_error("block decomposition made no progress");
        out.blocks.push_back({Jp, Kp});
        std::vector<size_t> R2, C2;
        std::set_difference(R.begin(), R.end(), Jp.begin(), Jp.end(), std::back_inserter(R2));
        std::set_difference(C.begin(), C.end(), Kp.begin(), Kp.end(), std::back_inserter(C2));
        R = R2;
        C = C2;
    }
    return out;
}

bool verify_block_decomposition(const SupportSet& phi, const BlockDecomposition& b, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (phi.order() != 2) return fail("not a 2-mode support");
    size_t n = phi.sizes[0], m = phi.sizes[1];
    std::vector<int> rb(n, -1), cb(m, -1);
    for (size_t u = 0; u < b.blocks.size(); ++u) {
        if (b.blocks[u].J.empty() || b.blocks[u].K.empty()) return fail("empty block");
        for (size_t j : b.blocks[u].J) {
            if (j >= n || rb[j] >= 0) return fail("rows are not a partition");
            rb[j] = int(u);
        }
        for (size_t k : b.blocks[u].K) {
            if (k >= m || cb[k] >= 0) return fail("columns are not a partition");
            cb[k] = int(u);
        }
    }
    for (size_t j = 0; j < n; ++j)
        if (rb[j] < 0) return fail("rows are not a partition");
    for (size_t k = 0; k < m; ++k)
        if (cb[k] < 0) return fail("columns are not a partition");
    auto r = b.ratios();
    for (size_t u = 1; u < r.size(); ++u)
        if (!(r[u] < r[u - 1])) return fail("ratios are not strictly decreasing");
    for (const auto& p : phi.points)
        if (cb[p[1]] > rb[p[0]]) return fail("support point outside the blockwise triangular pattern");
    for (size_t u = 0; u < b.blocks.size(); ++u) {
        auto sub = restrict_2d(phi, b.blocks[u].J, b.blocks[u].K);
        try {
            auto bal = is_balanced(sub);
            if (!bal.balanced) return fail("block " + std::to_string(u) + " is not balanced");
        } catch (const std::invalid_argument&) {
            return fail("block " + std::to_string(u) + " has an empty row or column");
        }
    }
    return true;
}

std::vector<long double> Distribution::marginal(size_t mode, size_t size) const {
    std::vector<long double> m(size, 0);
    for (size_t i = 0; i < points.size(); ++i) m[points[i][mode]] += weights[i];
    return m;
}

long double block_formula(const BlockDecomposition& b, long double rho) {
    long double sum = 0;
    for (const auto& blk : b.blocks)
        sum += std::pow((long double)blk.J.size(), rho) * std::pow((long double)blk.K.size(), 1 - rho);
    return std::log2(sum);
}

namespace {

long double to_ld(const Rational& r) { return static_cast<long double>(r); }

void check_rho(const Rational& rho) {
    if (rho < 0 || rho > 1) throw std::invalid_argument("rho must lie in [0,1]");
}

}  // namespace

Entropy2D weighted_entropy_2d(const SupportSet& phi_in, const Rational& rho) {
    check_rho(rho);
    std::vector<std::vector<size_t>> kept;
    SupportSet phi = trim(phi_in, &kept);
    long double r = to_ld(rho);
    Entropy2D out;
    auto bd = block_decomposition(phi);
    std::vector<long double> w;
    long double total = 0;
    for (const auto& blk : bd.blocks) {
        w.push_back(std::pow((long double)blk.J.size(), r) * std::pow((long double)blk.K.size(), 1 - r));
        total += w.back();
    }
    out.value = std::log2(total);
    for (size_t u = 0; u < bd.blocks.size(); ++u) {
        const auto& blk = bd.blocks[u];
        auto sub = restrict_2d(phi, blk.J, blk.K);
        auto bal = is_balanced(sub);
        for (size_t i = 0; i < sub.points.size(); ++i) {
            if (bal.flow[i] == 0) continue;
            const auto& p = sub.points[i];
            out.maximizer.points.push_back({kept[0][blk.J[p[0]]], kept[1][blk.K[p[1]]]});
            out.maximizer.weights.push_back(w[u] / total * (long double)bal.flow[i] / (long double)bal.scale);
        }
    }
    // Report the blocks in the caller's labels.
    for (auto& blk : bd.blocks) {
        for (auto& j : blk.J) j = kept[0][j];
        for (auto& k : blk.K) k = kept[1][k];
    }
    out.blocks = bd;
    return out;
}

long double weighted_entropy_of(const Distribution& p, const std::vector<size_t>& sizes,
                                const std::vector<long double>& theta) {
    long double v = 0;
    for (size_t k = 0; k < sizes.size(); ++k) {
        if (theta[k] == 0) continue;
        long double h = 0;
        for (long double x : p.marginal(k, sizes[k]))
            if (x > 0) h -= x * std::log2(x);
        v += theta[k] * h;
    }
    return v;
}

EntropyGeneral weighted_entropy_general(const SupportSet& phi, const std::vector<long double>& theta,
                                        long double tol, size_t max_iter) {
    size_t d = phi.order();
    if (theta.size() != d) throw std::invalid_argument("theta has the wrong length");
    long double ts = 0;
    for (long double x : theta) {
        if (x < 0) throw std::invalid_argument("theta must be nonnegative");
        ts += x;
    }
    if (std::fabs(ts - 1) > 1e-12L) throw std::invalid_argument("theta must sum to 1");
    if (phi.empty()) throw std::invalid_argument("empty support");

    const auto& pts = phi.points;
    size_t N = pts.size();
    std::vector<long double> P(N, 1.0L / N);
    std::vector<std::vector<long double>> marg(d);
    for (size_t k = 0; k < d; ++k) {
        marg[k].assign(phi.sizes[k], 0);
        for (size_t i = 0; i < N; ++i) marg[k][pts[i][k]] += P[i];
    }
    const long double inf = std::numeric_limits<long double>::infinity();
    auto hval = [&](size_t i) {
        long double h = 0;
        for (size_t k = 0; k < d; ++k) {
            if (theta[k] == 0) continue;
            long double m = marg[k][pts[i][k]];
            if (m <= 0) return inf;
            h -= theta[k] * std::log2(m);
        }
        return h;
    };
    // Derivative of F along moving gamma from a to b.
    auto slope_at = [&](size_t a, size_t b, long double g) {
        long double s = 0;
        for (size_t k = 0; k < d; ++k) {
            if (theta[k] == 0 || pts[a][k] == pts[b][k]) continue;
            long double mb = marg[k][pts[b][k]] + g, ma = marg[k][pts[a][k]] - g;
            if (mb <= 0) return inf;
            if (ma <= 0) return -inf;
            s += theta[k] * (std::log2(ma) - std::log2(mb));
        }
        return s;
    };

    EntropyGeneral out;
    std::vector<long double> h(N);
    size_t it = 0;
    for (;; ++it) {
        for (size_t i = 0; i < N; ++i) h[i] = hval(i);
        size_t fw = 0, aw = N;
        for (size_t i = 0; i < N; ++i) {
            if (h[i] > h[fw]) fw = i;
            if (P[i] > 0 && (aw == N || h[i] < h[aw])) aw = i;
        }
        out.kkt_gap = h[fw] - h[aw];
        if (out.kkt_gap <= tol || it >= max_iter) break;
        long double gmax = P[aw];
        long double g;
        if (slope_at(aw, fw, gmax) >= 0) {
            g = gmax;
        } else {
            long double lo = 0, hi = gmax;
            for (int b = 0; b < 200 && hi - lo > 0; ++b) {
                long double mid = lo + (hi - lo) / 2;
                if (mid <= lo || mid >= hi) break;
                if (slope_at(aw, fw, mid) > 0)
                    lo = mid;
                else
                    hi = mid;
            }
            g = lo;
            if (g <= 0) g = hi;
        }
        P[fw] += g;
        P[aw] = (g == gmax) ? 0 : P[aw] - g;
        for (size_t k = 0; k < d; ++k) {
            marg[k][pts[fw][k]] += g;
            marg[k][pts[aw][k]] -= g;
        }
        if ((it & 1023) == 1023) {
            // Recompute marginals to wash out drift.
            for (size_t k = 0; k < d; ++k) {
                std::fill(marg[k].begin(), marg[k].end(), 0);
                for (size_t i = 0; i < N; ++i) marg[k][pts[i][k]] += P[i];
            }
        }
    }
    out.iterations = it;
    out.converged = out.kkt_gap <= tol;
    for (size_t i = 0; i < N; ++i)
        if (P[i] > 0) {
            out.maximizer.points.push_back(pts[i]);
            out.maximizer.weights.push_back(P[i]);
        }
    out.value = weighted_entropy_of(out.maximizer, phi.sizes, theta);
    out.upper = *std::max_element(h.begin(), h.end());
    return out;
}

SupportSet maximal_points(const SupportSet& s) {
    std::vector<Coord> top;
    for (const auto& p : s.points) {
        bool dominated = false;
        for (const auto& q : s.points) {
            if (q == p) continue;
            bool ge = true;
            for (size_t k = 0; k < p.size() && ge; ++k) ge = q[k] >= p[k];
            if (ge) {
                dominated = true;
                break;
            }
        }
        if (!dominated) top.push_back(p);
    }
    return make_support(s.sizes, top);
}

long double support_value_2d(const SupportSet& projected, const Rational& rho) {
    return std::exp2(weighted_entropy_2d(projected, rho).value);
}

}  // namespace thn
