// symmetrization.hpp
// Zykov-style shift operators: rewire an independent set onto a target
// neighborhood. Shifting a whole class onto its max-degree member's
// neighborhood never loses edges and preserves K_t-freeness.
#pragma once

#include "core.hpp"

namespace mpturan {

// Common neighborhood of a non-empty vertex set.
inline Bits common_neighbors(const MultipartiteGraph& g, const Bits& b) {
    if (b.none()) throw Error(Errc::EmptySet, "common neighborhood of an empty set");
    Bits acc = g.full_mask();
    b.for_each([&](int v) { acc &= g.row(v); });
    return acc;
}

// G_{A->X}: delete the edges incident with A, then add every A x X pair.
// A must be independent, disjoint from X, and no pair may share a class.
inline MultipartiteGraph shift(const MultipartiteGraph& g, const Bits& a, const Bits& x) {
    a.for_each([&](int u) {
        if (g.row(u).intersects(a)) throw Error(Errc::NotIndependent, "A spans an edge");
    });
    if (a.intersects(x)) throw Error(Errc::Overlap, "A and X overlap");
    a.for_each([&](int u) {
        x.for_each([&](int v) {
            if (g.class_of(u) == g.class_of(v))
                throw Error(Errc::ClassClash, "A and X meet class " +
                                                  std::to_string(g.class_of(u)));
        });
    });
    MultipartiteGraph out = g;
    a.for_each([&](int u) {
        Bits nbrs = g.row(u);
        nbrs.for_each([&](int v) { out.remove_edge(u, v); });
    });
    a.for_each([&](int u) { x.for_each([&](int v) { out.add_edge(u, v); }); });
    return out;
}

// G_{V_i}: every vertex of class i receives the neighborhood of a
// maximum-degree member (smallest offset on ties).
inline MultipartiteGraph symmetrize_class(const MultipartiteGraph& g, int cls) {
    if (cls < 0 || cls >= g.num_classes())
        throw Error(Errc::InvalidArity, "no such class");
    int lo = g.class_begin(cls), hi = g.class_end(cls);
    if (lo == hi) return g;  // empty residual class
    int u = lo;
    for (int v = lo + 1; v < hi; ++v)
        if (g.degree(v) > g.degree(u)) u = v;
    Bits a(g.num_vertices());
    for (int v = lo; v < hi; ++v) a.set(v);
    return shift(g, a, g.row(u));
}

}  // namespace mpturan
