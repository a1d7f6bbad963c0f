#pragma once

#include <cstdint>
#include <vector>

namespace thn {

// Dinic's algorithm on integer capacities.
class MaxFlow {
public:
    explicit MaxFlow(size_t n) : g_(n), level_(n), it_(n) {}

    size_t add_edge(size_t u, size_t v, int64_t cap);
    int64_t run(size_t s, size_t t);
    int64_t flow_on(size_t edge_id) const;
    // Vertices reachable from s in the residual graph after run().
    std::vector<char> source_side(size_t s) const;
    // Vertices that can reach t in the residual graph after run().
    std::vector<char> reaches_sink(size_t t) const;
    size_t size() const { return g_.size(); }

private:
    struct Edge {
        size_t to, rev;
        int64_t cap, orig;
    };
    bool bfs(size_t s, size_t t);
    int64_t dfs(size_t u, size_t t, int64_t f);

    std::vector<std::vector<Edge>> g_;
    std::vector<std::pair<size_t, size_t>> ids_;
    std::vector<int> level_;
    std::vector<size_t> it_;
};

}  // namespace thn
