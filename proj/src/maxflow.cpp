#include "tensorhn/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace thn {

size_t MaxFlow::add_edge(size_t u, size_t v, int64_t cap) {
    g_[u].push_back({v, g_[v].size(), cap, cap});
    g_[v].push_back({u, g_[u].size() - 1, 0, 0});
    ids_.emplace_back(u, g_[u].size() - 1);
    return ids_.size() - 1;
}

bool MaxFlow::bfs(size_t s, size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
        size_t u = q.front();
        q.pop();
        for (const auto& e : g_[u])
            if (e.cap > 0 && level_[e.to] < 0) {
                level_[e.to] = level_[u] + 1;
                q.push(e.to);
            }
    }
    return level_[t] >= 0;
}

int64_t MaxFlow::dfs(size_t u, size_t t, int64_t f) {
    if (u == t) return f;
    for (size_t& i = it_[u]; i < g_[u].size(); ++i) {
        Edge& e = g_[u][i];
        if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
        int64_t d = dfs(e.to, t, std::min(f, e.cap));
        if (d > 0) {
            e.cap -= d;
            g_[e.to][e.rev].cap += d;
            return d;
        }
    }
    return 0;
}

int64_t MaxFlow::run(size_t s, size_t t) {
    int64_t total = 0;
    while (bfs(s, t)) {
        std::fill(it_.begin(), it_.end(), 0);
        while (int64_t f = dfs(s, t, std::numeric_limits<int64_t>::max())) total += f;
    }
    return total;
}

int64_t MaxFlow::flow_on(size_t id) const {
    const Edge& e = g_[ids_[id].first][ids_[id].second];
    return e.orig - e.cap;
}

std::vector<char> MaxFlow::source_side(size_t s) const {
    std::vector<char> seen(g_.size(), 0);
    std::vector<size_t> st{s};
    seen[s] = 1;
    while (!st.empty()) {
        size_t u = st.back();
        st.pop_back();
        for (const auto& e : g_[u])
            if (e.cap > 0 && !seen[e.to]) {
                seen[e.to] = 1;
                st.push_back(e.to);
            }
    }
    return seen;
}

std::vector<char> MaxFlow::reaches_sink(size_t t) const {
    std::vector<char> seen(g_.size(), 0);
    std::vector<size_t> st{t};
    seen[t] = 1;
    while (!st.empty()) {
        size_t v = st.back();
        st.pop_back();
        for (const auto& e : g_[v]) {
            // e is v -> u; residual u -> v is the reverse edge.
            const Edge& back = g_[e.to][e.rev];
            if (back.cap > 0 && !seen[e.to]) {
                seen[e.to] = 1;
                st.push_back(e.to);
            }
        }
    }
    return seen;
}

}  // namespace thn
