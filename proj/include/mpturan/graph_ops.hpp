// graph_ops.hpp
// Graph construction, K_t / kK_t detection, witness realization, closeness
// and seeded edge perturbation.
#pragma once

#include <optional>
#include <random>
#include <utility>

#include "core.hpp"
#include "partition_calculus.hpp"

namespace mpturan {

inline MultipartiteGraph build_complete(const PartSizes& ps) {
    MultipartiteGraph g(ps);
    for (int i = 0; i < ps.r(); ++i)
        for (int j = i + 1; j < ps.r(); ++j)
            for (int u = g.class_begin(i); u < g.class_end(i); ++u)
                for (int v = g.class_begin(j); v < g.class_end(j); ++v) g.add_edge(u, v);
    return g;
}

// Keeps exactly the edges whose endpoints lie in different blocks (the
// cross-class condition is implied by the multipartite invariant).
inline MultipartiteGraph induce_by_partition(const MultipartiteGraph& g,
                                             const VertexPartition& vp) {
    check_vertex_partition(vp, g.parts());
    MultipartiteGraph out(g.parts());
    for (auto [u, v] : g.edges_canonical())
        if (vp.block(g.vertex(u)) != vp.block(g.vertex(v))) out.add_edge(u, v);
    return out;
}

// The complete (t-1)-partite graph K[vp] the host induces: all cross-block,
// cross-class pairs.
inline MultipartiteGraph complete_by_partition(const PartSizes& ps, const VertexPartition& vp) {
    check_vertex_partition(vp, ps);
    MultipartiteGraph out(ps);
    int n = out.num_vertices();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (out.class_of(u) != out.class_of(v) &&
                vp.block(out.vertex(u)) != vp.block(out.vertex(v)))
                out.add_edge(u, v);
    return out;
}

struct PatternWitness {
    std::vector<std::vector<int>> copies;  // global vertex ids, each a t-clique
};

namespace detail {

// First q-clique inside `cand` in ascending vertex order, restricted to rows
// of `g` masked by `alive`. Appends to `acc`; true when found.
inline bool clique_in(const MultipartiteGraph& g, const Bits& alive, Bits cand, int q,
                      std::vector<int>& acc) {
    if (q == 0) return true;
    if (cand.count() < q) return false;
    bool found = false;
    cand.for_each([&](int v) {
        if (found) return;
        std::vector<int> saved(acc);
        acc.push_back(v);
        Bits next = cand & g.row(v);
        next &= alive;
        // only vertices after v keep the enumeration canonical
        Bits trimmed = next;
        trimmed.for_each([&](int w) {
            if (w <= v) trimmed.reset(w);
        });
        if (clique_in(g, alive, trimmed, q - 1, acc)) {
            found = true;
        } else {
            acc = std::move(saved);
        }
    });
    return found;
}

inline bool disjoint_cliques_in(const MultipartiteGraph& g, Bits alive, int k, int t,
                                std::vector<std::vector<int>>& acc);

// Enumerates t-cliques in ascending order and recurses on the remainder.
inline bool disjoint_rec(const MultipartiteGraph& g, const Bits& alive, Bits cand,
                         std::vector<int>& clique, int depth, int t, int k,
                         std::vector<std::vector<int>>& acc) {
    if (depth == t) {
        Bits rest(alive);
        for (int v : clique) rest.reset(v);
        acc.push_back(clique);
        if (k == 1 || disjoint_cliques_in(g, rest, k - 1, t, acc)) return true;
        acc.pop_back();
        return false;
    }
    bool found = false;
    cand.for_each([&](int v) {
        if (found) return;
        clique.push_back(v);
        Bits next = cand & g.row(v);
        next.for_each([&](int w) {
            if (w <= v) next.reset(w);
        });
        if (int(clique.size()) + next.count() >= t &&
            disjoint_rec(g, alive, next, clique, depth + 1, t, k, acc))
            found = true;
        else
            clique.pop_back();
    });
    return found;
}

inline bool disjoint_cliques_in(const MultipartiteGraph& g, Bits alive, int k, int t,
                                std::vector<std::vector<int>>& acc) {
    std::vector<int> clique;
    return disjoint_rec(g, alive, alive, clique, 0, t, k, acc);
}

}  // namespace detail

// First K_t in canonical vertex order, if any. A clique meets each class at
// most once, so the candidate set shrinks by whole class rows.
inline std::optional<PatternWitness> contains_clique(const MultipartiteGraph& g, int t) {
    if (t < 2) throw Error(Errc::InvalidArity, "t must be at least 2");
    Bits all = g.full_mask();
    std::vector<int> acc;
    if (detail::clique_in(g, all, all, t, acc)) return PatternWitness{{acc}};
    return std::nullopt;
}

// Exhaustive search for k pairwise vertex-disjoint copies of K_t.
inline std::optional<PatternWitness> contains_disjoint_cliques(const MultipartiteGraph& g, int k,
                                                               int t, int vertex_budget = 64) {
    if (t < 2 || k < 1) throw Error(Errc::InvalidArity, "need k >= 1 and t >= 2");
    if (g.num_vertices() > vertex_budget)
        throw Error(Errc::SizeLimit, "host exceeds the vertex budget for exact packing search");
    std::vector<std::vector<int>> acc;
    if (detail::disjoint_cliques_in(g, g.full_mask(), k, t, acc))
        return PatternWitness{std::move(acc)};
    return std::nullopt;
}

// Realizes a witness: complete multipartite structure on the residual
// vertices arranged by the residual partition, plus k-1 dominating vertices
// (the last offsets of their classes) joined to everything outside their
// own class.
inline MultipartiteGraph realize_witness(const PartSizes& ps, const ExtremalWitness& w, int t) {
    check_witness(w, ps);
    if (int(w.residual.blocks.size()) > std::max(1, std::min(ps.r(), t - 1)))
        throw Error(Errc::InvalidWitness,
                    "residual partition has more than t-1 blocks");
    MultipartiteGraph g(ps);
    int r = ps.r();
    std::vector<int> residual_size(r);
    for (int i = 0; i < r; ++i) residual_size[i] = ps.sizes[i] - w.dominator_count[i];
    std::vector<int> block_of_class(r, -1);
    for (int b = 0; b < int(w.residual.blocks.size()); ++b)
        for (int i : w.residual.blocks[b]) block_of_class[i] = b;
    // residual x residual: cross-block pairs only
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            if (block_of_class[i] == block_of_class[j]) continue;
            for (int oi = 0; oi < residual_size[i]; ++oi)
                for (int oj = 0; oj < residual_size[j]; ++oj)
                    g.add_edge(g.global(i, oi), g.global(j, oj));
        }
    // dominators: everything outside their class
    for (int i = 0; i < r; ++i)
        for (int d = 0; d < w.dominator_count[i]; ++d) {
            int u = g.global(i, ps.sizes[i] - 1 - d);
            for (int v = 0; v < g.num_vertices(); ++v)
                if (g.class_of(v) != i && v != u && !g.adjacent(u, v)) g.add_edge(u, v);
        }
    return g;
}

// Least alpha such that g1 is alpha-close to g2: the max over vertices of
// the neighborhood symmetric difference.
inline long long closeness(const MultipartiteGraph& g1, const MultipartiteGraph& g2) {
    if (!(g1.parts() == g2.parts()))
        throw Error(Errc::ShapeMismatch, "graphs have different part sizes");
    long long worst = 0;
    for (int v = 0; v < g1.num_vertices(); ++v) {
        const Bits &a = g1.row(v), &b = g2.row(v);
        long long diff = a.count() + b.count() - 2 * a.and_count(b);
        worst = std::max(worst, diff);
    }
    return worst;
}

// Removes exactly `count` distinct edges drawn by a seeded generator;
// identical seeds give identical outputs.
inline MultipartiteGraph delete_random_edges(const MultipartiteGraph& g, long long count,
                                             uint64_t seed) {
    if (count > g.edge_count())
        throw Error(Errc::CountTooLarge, "cannot delete more edges than present");
    auto edges = g.edges_canonical();
    std::mt19937_64 rng(seed);
    // partial Fisher-Yates: the first `count` entries are the sample
    for (long long i = 0; i < count; ++i) {
        std::uniform_int_distribution<size_t> pick(i, edges.size() - 1);
        std::swap(edges[i], edges[pick(rng)]);
    }
    MultipartiteGraph out = g;
    for (long long i = 0; i < count; ++i) out.remove_edge(edges[i].first, edges[i].second);
    return out;
}

}  // namespace mpturan
