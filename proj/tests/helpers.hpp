// Shared test utilities: deterministic generators and small independent
// oracles (Stirling numbers, exhaustive size-tuple sweeps).
#pragma once

#include <random>

#include "mpturan/graph_ops.hpp"
#include "mpturan/stability.hpp"

namespace mpt_test {

using namespace mpturan;

inline long long stirling2(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::vector<std::vector<long long>> s(n + 1, std::vector<long long>(k + 1, 0));
    s[0][0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= std::min(i, k); ++j)
            s[i][j] = s[i - 1][j - 1] + (long long)j * s[i - 1][j];
    return s[n][k];
}

inline PartSizes random_sizes(std::mt19937_64& rng, int rmin, int rmax, int smax) {
    std::uniform_int_distribution<int> rd(rmin, rmax);
    int r = rd(rng);
    std::uniform_int_distribution<int> sd(1, smax);
    std::vector<int> sizes(r);
    for (int& s : sizes) s = sd(rng);
    std::sort(sizes.begin(), sizes.end(), std::greater<int>());
    return PartSizes{sizes};
}

inline MultipartiteGraph random_subgraph(std::mt19937_64& rng, const PartSizes& ps,
                                         double edge_prob) {
    MultipartiteGraph host = build_complete(ps);
    MultipartiteGraph g(ps);
    std::bernoulli_distribution keep(edge_prob);
    for (auto [u, v] : host.edges_canonical())
        if (keep(rng)) g.add_edge(u, v);
    return g;
}

// random multipartite graph made K_t-free by repeatedly deleting one random
// edge of a found clique
inline MultipartiteGraph random_ktfree(std::mt19937_64& rng, const PartSizes& ps, int t,
                                       double edge_prob) {
    MultipartiteGraph g = random_subgraph(rng, ps, edge_prob);
    while (auto w = contains_clique(g, t)) {
        const auto& c = w->copies.front();
        std::uniform_int_distribution<size_t> pick_a(0, c.size() - 1);
        size_t a = pick_a(rng), b = pick_a(rng);
        while (b == a) b = pick_a(rng);
        g.remove_edge(c[a], c[b]);
    }
    return g;
}

inline VertexPartition random_vertex_partition(std::mt19937_64& rng, const PartSizes& ps,
                                               int blocks) {
    VertexPartition vp = make_vertex_partition(ps, blocks);
    std::uniform_int_distribution<int> bd(0, blocks - 1);
    for (auto& row : vp.block_of)
        for (int& b : row) b = bd(rng);
    return vp;
}

// all non-increasing tuples with r entries in [1, smax]
inline std::vector<std::vector<int>> all_tuples(int r, int smax) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(r);
    std::function<void(int, int)> gen = [&](int pos, int hi) {
        if (pos == r) {
            out.push_back(cur);
            return;
        }
        for (int v = 1; v <= hi; ++v) {
            cur[pos] = v;
            gen(pos + 1, v);
        }
    };
    gen(0, smax);
    return out;
}

// all non-increasing tuples with r entries, total at most nmax
inline std::vector<std::vector<int>> all_tuples_total(int r, int nmax) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(r);
    std::function<void(int, int, int)> gen = [&](int pos, int hi, int left) {
        if (pos == r) {
            out.push_back(cur);
            return;
        }
        for (int v = 1; v <= std::min(hi, left - (r - pos - 1)); ++v) {
            cur[pos] = v;
            gen(pos + 1, v, left - v);
        }
    };
    gen(0, nmax, nmax);
    return out;
}

}  // namespace mpt_test
