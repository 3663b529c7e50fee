// core.hpp
// Domain types shared by the whole library: class-size vectors, patterns,
// index/vertex partitions, multipartite graphs with bitset adjacency, and
// extremal witnesses. All types are plain values, immutable by convention:
// operations take const references and return fresh objects.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpturan {

// ---------------------------------------------------------------- errors

enum class Errc {
    EmptySizes,
    NonPositiveSize,
    TooFewClasses,
    InvalidArity,
    InfeasibleDominators,
    PreconditionViolated,
    NumericRange,
    SizeLimit,
    CountTooLarge,
    ShapeMismatch,
    NotIndependent,
    ClassClash,
    Overlap,
    EmptySet,
    InvalidWitness,
    NotKtFree,
    PeelOverflow,
    BudgetExceeded,
    SameClassEdge,
    InvalidPartition,
    ParseError,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::EmptySizes: return "EmptySizes";
        case Errc::NonPositiveSize: return "NonPositiveSize";
        case Errc::TooFewClasses: return "TooFewClasses";
        case Errc::InvalidArity: return "InvalidArity";
        case Errc::InfeasibleDominators: return "InfeasibleDominators";
        case Errc::PreconditionViolated: return "PreconditionViolated";
        case Errc::NumericRange: return "NumericRange";
        case Errc::SizeLimit: return "SizeLimit";
        case Errc::CountTooLarge: return "CountTooLarge";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::NotIndependent: return "NotIndependent";
        case Errc::ClassClash: return "ClassClash";
        case Errc::Overlap: return "Overlap";
        case Errc::EmptySet: return "EmptySet";
        case Errc::InvalidWitness: return "InvalidWitness";
        case Errc::NotKtFree: return "NotKtFree";
        case Errc::PeelOverflow: return "PeelOverflow";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::SameClassEdge: return "SameClassEdge";
        case Errc::InvalidPartition: return "InvalidPartition";
        case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

// ---------------------------------------------------------------- bitset

// Fixed-width bit rows over a global vertex order. Small and dependency-free;
// clique detection and symmetrization intersect these rows directly.
class Bits {
public:
    Bits() = default;
    explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int universe() const { return n_; }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

    int count() const {
        int c = 0;
        for (uint64_t w : w_) c += __builtin_popcountll(w);
        return c;
    }
    bool any() const {
        for (uint64_t w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    Bits& operator&=(const Bits& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    // this \ o
    Bits& subtract(const Bits& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
    friend Bits operator|(Bits a, const Bits& b) { return a |= b; }

    int and_count(const Bits& o) const {
        int c = 0;
        for (size_t i = 0; i < w_.size(); ++i) c += __builtin_popcountll(w_[i] & o.w_[i]);
        return c;
    }
    bool intersects(const Bits& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    // lowest set bit, -1 when empty
    int first() const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return int(i * 64 + __builtin_ctzll(w_[i]));
        return -1;
    }

    template <class F>
    void for_each(F&& f) const {
        for (size_t i = 0; i < w_.size(); ++i) {
            uint64_t w = w_[i];
            while (w) {
                f(int(i * 64 + __builtin_ctzll(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        for_each([&](int i) { v.push_back(i); });
        return v;
    }

    friend bool operator==(const Bits& a, const Bits& b) {
        return a.n_ == b.n_ && a.w_ == b.w_;
    }

private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

// ---------------------------------------------------------------- sizes

// Host class sizes n_1 >= ... >= n_r. Zero entries only show up in residual
// vectors produced by the g-recursion (classes stay in place so indices are
// stable); validated user input requires every entry >= 1.
struct PartSizes {
    std::vector<int> sizes;

    int r() const { return int(sizes.size()); }
    long long total() const { return std::accumulate(sizes.begin(), sizes.end(), 0LL); }
    // n_q in the 1-based convention, i.e. the q-th largest class size
    int nth(int q) const { return sizes.at(q - 1); }

    friend bool operator==(const PartSizes&, const PartSizes&) = default;
};

struct Pattern {
    int t = 3;  // clique order
    int k = 1;  // number of vertex-disjoint copies

    friend bool operator==(const Pattern&, const Pattern&) = default;
};

// Sorts non-increasing and validates. `require_host_arity` enforces r >= t
// (the f/g setting); callers that only need a size vector can pass false.
inline PartSizes validate(const std::vector<int>& raw, const Pattern& pat,
                          bool require_host_arity = true) {
    if (raw.empty()) throw Error(Errc::EmptySizes, "no class sizes given");
    for (int s : raw)
        if (s <= 0)
            throw Error(Errc::NonPositiveSize,
                        "class size " + std::to_string(s) + " must be positive");
    if (pat.t < 3) throw Error(Errc::InvalidArity, "t must be at least 3");
    if (pat.k < 1) throw Error(Errc::InvalidArity, "k must be at least 1");
    if (require_host_arity && int(raw.size()) < pat.t)
        throw Error(Errc::TooFewClasses, "need r >= t, got r = " + std::to_string(raw.size()) +
                                             ", t = " + std::to_string(pat.t));
    PartSizes ps{raw};
    std::sort(ps.sizes.begin(), ps.sizes.end(), std::greater<int>());
    return ps;
}

// ------------------------------------------------------- index partition

// Partition of the class indices [0, r) into blocks. Canonical form sorts
// each block ascending and orders blocks by smallest member; empty blocks
// (allowed only in g-recursion residual states with r < t-1) go last.
struct IndexPartition {
    std::vector<std::vector<int>> blocks;

    friend bool operator==(const IndexPartition&, const IndexPartition&) = default;
};

inline IndexPartition canonicalized(IndexPartition p) {
    for (auto& b : p.blocks) std::sort(b.begin(), b.end());
    std::sort(p.blocks.begin(), p.blocks.end(), [](const auto& a, const auto& b) {
        int ka = a.empty() ? INT32_MAX : a.front();
        int kb = b.empty() ? INT32_MAX : b.front();
        return ka < kb;
    });
    return p;
}

inline void check_index_partition(const IndexPartition& p, int r, int expected_blocks = -1) {
    if (expected_blocks >= 0 && int(p.blocks.size()) != expected_blocks)
        throw Error(Errc::InvalidPartition,
                    "expected " + std::to_string(expected_blocks) + " blocks, got " +
                        std::to_string(p.blocks.size()));
    std::vector<char> seen(r, 0);
    for (const auto& b : p.blocks)
        for (int i : b) {
            if (i < 0 || i >= r)
                throw Error(Errc::InvalidPartition, "class index out of range");
            if (seen[i]) throw Error(Errc::InvalidPartition, "class index repeated");
            seen[i] = 1;
        }
    for (int i = 0; i < r; ++i)
        if (!seen[i]) throw Error(Errc::InvalidPartition, "class index missing from partition");
}

// ------------------------------------------------------------- vertices

struct VertexId {
    int cls = 0;
    int off = 0;

    friend bool operator==(const VertexId&, const VertexId&) = default;
    friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

// Total assignment of host vertices to blocks P_0,...,P_{b-1}.
struct VertexPartition {
    int num_blocks = 0;
    std::vector<std::vector<int>> block_of;  // [class][offset] -> block

    int block(VertexId v) const { return block_of[v.cls][v.off]; }

    friend bool operator==(const VertexPartition&, const VertexPartition&) = default;
};

inline VertexPartition make_vertex_partition(const PartSizes& ps, int num_blocks) {
    VertexPartition vp;
    vp.num_blocks = num_blocks;
    vp.block_of.resize(ps.r());
    for (int i = 0; i < ps.r(); ++i) vp.block_of[i].assign(ps.sizes[i], 0);
    return vp;
}

inline void check_vertex_partition(const VertexPartition& vp, const PartSizes& ps) {
    if (int(vp.block_of.size()) != ps.r())
        throw Error(Errc::InvalidPartition, "partition class count mismatch");
    for (int i = 0; i < ps.r(); ++i) {
        if (int(vp.block_of[i].size()) != ps.sizes[i])
            throw Error(Errc::InvalidPartition, "partition class size mismatch");
        for (int b : vp.block_of[i])
            if (b < 0 || b >= vp.num_blocks)
                throw Error(Errc::InvalidPartition, "block index out of range");
    }
}

// Blocks as explicit vertex lists, each sorted.
inline std::vector<std::vector<VertexId>> partition_blocks(const VertexPartition& vp) {
    std::vector<std::vector<VertexId>> blocks(vp.num_blocks);
    for (int i = 0; i < int(vp.block_of.size()); ++i)
        for (int o = 0; o < int(vp.block_of[i].size()); ++o)
            blocks[vp.block_of[i][o]].push_back({i, o});
    return blocks;
}

// Relabels blocks into the canonical order: by size, then smallest vertex.
// Empty blocks sort last.
inline VertexPartition canonicalized(const VertexPartition& vp) {
    auto blocks = partition_blocks(vp);
    std::vector<int> order(vp.num_blocks);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        bool ea = blocks[a].empty(), eb = blocks[b].empty();
        if (ea != eb) return eb;
        if (ea && eb) return a < b;
        if (blocks[a].size() != blocks[b].size()) return blocks[a].size() < blocks[b].size();
        return blocks[a].front() < blocks[b].front();
    });
    std::vector<int> new_id(vp.num_blocks);
    for (int j = 0; j < vp.num_blocks; ++j) new_id[order[j]] = j;
    VertexPartition out = vp;
    for (auto& row : out.block_of)
        for (int& b : row) b = new_id[b];
    return out;
}

// ----------------------------------------------------------------- graph

// Spanning subgraph of the complete multipartite host: adjacency is a
// symmetric irreflexive relation with no same-class pairs. Rows are bitsets
// over the class-major global vertex order.
class MultipartiteGraph {
public:
    explicit MultipartiteGraph(PartSizes parts) : parts_(std::move(parts)) {
        start_.resize(parts_.r() + 1, 0);
        for (int i = 0; i < parts_.r(); ++i) start_[i + 1] = start_[i] + parts_.sizes[i];
        n_ = start_.back();
        rows_.assign(n_, Bits(n_));
        cls_of_.resize(n_);
        for (int i = 0; i < parts_.r(); ++i)
            for (int o = 0; o < parts_.sizes[i]; ++o) cls_of_[start_[i] + o] = i;
    }

    const PartSizes& parts() const { return parts_; }
    int num_vertices() const { return n_; }
    int num_classes() const { return parts_.r(); }
    int class_of(int g) const { return cls_of_[g]; }
    int offset_of(int g) const { return g - start_[cls_of_[g]]; }
    int global(int cls, int off) const { return start_[cls] + off; }
    int global(VertexId v) const { return global(v.cls, v.off); }
    VertexId vertex(int g) const { return {class_of(g), offset_of(g)}; }
    int class_begin(int cls) const { return start_[cls]; }
    int class_end(int cls) const { return start_[cls + 1]; }

    bool adjacent(int u, int v) const { return rows_[u].test(v); }
    const Bits& row(int v) const { return rows_[v]; }
    int degree(int v) const { return rows_[v].count(); }
    long long edge_count() const { return edges_; }

    void add_edge(int u, int v) {
        if (u == v) throw Error(Errc::SameClassEdge, "self loop");
        if (cls_of_[u] == cls_of_[v])
            throw Error(Errc::SameClassEdge, "edge inside class " + std::to_string(cls_of_[u]));
        if (rows_[u].test(v)) return;
        rows_[u].set(v);
        rows_[v].set(u);
        ++edges_;
    }
    void remove_edge(int u, int v) {
        if (!rows_[u].test(v)) return;
        rows_[u].reset(v);
        rows_[v].reset(u);
        --edges_;
    }

    // every class is an independent set, so this never yields same-class pairs
    Bits full_mask() const {
        Bits m(n_);
        for (int v = 0; v < n_; ++v) m.set(v);
        return m;
    }

    // edges in the canonical order: lexicographic by (class pair, offsets)
    std::vector<std::pair<int, int>> edges_canonical() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(size_t(edges_));
        for (int i = 0; i < parts_.r(); ++i)
            for (int j = i + 1; j < parts_.r(); ++j)
                for (int u = start_[i]; u < start_[i + 1]; ++u)
                    for (int v = start_[j]; v < start_[j + 1]; ++v)
                        if (rows_[u].test(v)) out.push_back({u, v});
        return out;
    }

    friend bool operator==(const MultipartiteGraph& a, const MultipartiteGraph& b) {
        return a.parts_ == b.parts_ && a.rows_ == b.rows_;
    }

private:
    PartSizes parts_;
    std::vector<int> start_;
    std::vector<int> cls_of_;
    int n_ = 0;
    long long edges_ = 0;
    std::vector<Bits> rows_;
};

// ---------------------------------------------------------------- witness

// Recipe for a g-extremal graph: a multiset of dominating-vertex class
// labels (total multiplicity k-1) over a residual index partition.
struct ExtremalWitness {
    std::vector<int> dominator_count;  // per class; sum = k-1
    IndexPartition residual;           // over residual sizes n_i - dominator_count[i]

    int k() const {
        return 1 + std::accumulate(dominator_count.begin(), dominator_count.end(), 0);
    }
    // dominators as a sorted list of class labels with multiplicity
    std::vector<int> dominator_classes() const {
        std::vector<int> out;
        for (int i = 0; i < int(dominator_count.size()); ++i)
            for (int m = 0; m < dominator_count[i]; ++m) out.push_back(i);
        return out;
    }

    friend bool operator==(const ExtremalWitness&, const ExtremalWitness&) = default;
};

inline void check_witness(const ExtremalWitness& w, const PartSizes& ps) {
    if (int(w.dominator_count.size()) != ps.r())
        throw Error(Errc::InvalidWitness, "dominator class count mismatch");
    std::vector<int> residual_sizes(ps.sizes);
    for (int i = 0; i < ps.r(); ++i) {
        if (w.dominator_count[i] < 0 || w.dominator_count[i] > ps.sizes[i])
            throw Error(Errc::InvalidWitness, "dominator multiplicity out of bounds");
        residual_sizes[i] -= w.dominator_count[i];
    }
    try {
        check_index_partition(w.residual, ps.r());
    } catch (const Error& e) {
        throw Error(Errc::InvalidWitness, e.what());
    }
}

}  // namespace mpturan
