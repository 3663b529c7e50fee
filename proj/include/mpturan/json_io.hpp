// json_io.hpp
// Canonical JSON encodings: arrays are sorted so equal values serialize to
// identical bytes. Class and vertex references are 0-based; vertices appear
// as [class, offset] pairs.
#pragma once

#include <json.hpp>

#include "core.hpp"
#include "oracle.hpp"
#include "stability.hpp"

namespace mpturan {

using json = nlohmann::json;

// ------------------------------------------------------------- encoding

inline json to_json(const PartSizes& ps) { return json(ps.sizes); }
inline json to_json(const Pattern& p) { return json{{"t", p.t}, {"k", p.k}}; }
inline json to_json(const VertexId& v) { return json::array({v.cls, v.off}); }

inline json to_json(const IndexPartition& p) {
    IndexPartition c = canonicalized(p);
    json blocks = json::array();
    for (const auto& b : c.blocks) blocks.push_back(b);
    return json{{"blocks", blocks}};
}

inline json to_json(const VertexPartition& vp) {
    auto blocks = partition_blocks(canonicalized(vp));
    json jb = json::array();
    for (const auto& b : blocks) {
        json one = json::array();
        for (const auto& v : b) one.push_back(to_json(v));
        jb.push_back(one);
    }
    return json{{"blocks", jb}};
}

inline json to_json(const MultipartiteGraph& g) {
    json edges = json::array();
    for (auto [u, v] : g.edges_canonical())
        edges.push_back(json::array({to_json(g.vertex(u)), to_json(g.vertex(v))}));
    return json{{"sizes", g.parts().sizes}, {"edges", edges}};
}

inline json to_json(const ExtremalWitness& w) {
    json blocks = json::array();
    for (const auto& b : canonicalized(w.residual).blocks) blocks.push_back(b);
    return json{{"dominators", w.dominator_classes()}, {"residual_blocks", blocks}};
}

inline json to_json(const StabilityVerdict& v) {
    json j{{"holds", v.holds}};
    if (!v.holds) {
        j["violated_condition"] = violation_name(v.violated);
        j["detail"] = v.detail;
        json w = json::object();
        if (v.class_a >= 0) w["class"] = v.class_a;
        if (v.block_a >= 0) w["block"] = v.block_a;
        if (v.block_b >= 0) w["other_block"] = v.block_b;
        j["witness"] = w;
    }
    return j;
}

inline json to_json(const Bits& x, const MultipartiteGraph& g) {
    json out = json::array();
    x.for_each([&](int v) { out.push_back(to_json(g.vertex(v))); });
    return out;
}

// ------------------------------------------------------------- decoding

inline PartSizes sizes_from_json(const json& j) {
    if (!j.is_array()) throw Error(Errc::ParseError, "sizes must be an array");
    PartSizes ps;
    for (const auto& e : j) ps.sizes.push_back(e.get<int>());
    return ps;
}

inline Pattern pattern_from_json(const json& j) {
    return Pattern{j.at("t").get<int>(), j.at("k").get<int>()};
}

inline VertexId vertex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw Error(Errc::ParseError, "vertex must be [class, offset]");
    return VertexId{j[0].get<int>(), j[1].get<int>()};
}

inline IndexPartition index_partition_from_json(const json& j) {
    IndexPartition p;
    for (const auto& b : j.at("blocks")) {
        std::vector<int> blk;
        for (const auto& e : b) blk.push_back(e.get<int>());
        p.blocks.push_back(std::move(blk));
    }
    return canonicalized(p);
}

inline VertexPartition vertex_partition_from_json(const json& j, const PartSizes& ps) {
    const auto& jb = j.at("blocks");
    VertexPartition vp = make_vertex_partition(ps, int(jb.size()));
    std::vector<std::vector<char>> seen(ps.r());
    for (int i = 0; i < ps.r(); ++i) seen[i].assign(ps.sizes[i], 0);
    for (int b = 0; b < int(jb.size()); ++b)
        for (const auto& e : jb[b]) {
            VertexId v = vertex_from_json(e);
            if (v.cls < 0 || v.cls >= ps.r() || v.off < 0 || v.off >= ps.sizes[v.cls])
                throw Error(Errc::ParseError, "vertex out of range");
            if (seen[v.cls][v.off]) throw Error(Errc::ParseError, "vertex assigned twice");
            seen[v.cls][v.off] = 1;
            vp.block_of[v.cls][v.off] = b;
        }
    for (int i = 0; i < ps.r(); ++i)
        for (int o = 0; o < ps.sizes[i]; ++o)
            if (!seen[i][o]) throw Error(Errc::ParseError, "vertex missing from partition");
    return canonicalized(vp);
}

inline MultipartiteGraph graph_from_json(const json& j) {
    PartSizes ps = sizes_from_json(j.at("sizes"));
    for (int s : ps.sizes)
        if (s <= 0) throw Error(Errc::ParseError, "graph sizes must be positive");
    MultipartiteGraph g(ps);
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw Error(Errc::ParseError, "edge must be a pair");
        VertexId a = vertex_from_json(e[0]), b = vertex_from_json(e[1]);
        if (a.cls < 0 || a.cls >= ps.r() || a.off < 0 || a.off >= ps.sizes[a.cls] ||
            b.cls < 0 || b.cls >= ps.r() || b.off < 0 || b.off >= ps.sizes[b.cls])
            throw Error(Errc::ParseError, "edge endpoint out of range");
        g.add_edge(g.global(a), g.global(b));
    }
    return g;
}

inline ExtremalWitness witness_from_json(const json& j, const PartSizes& ps) {
    ExtremalWitness w;
    w.dominator_count.assign(ps.r(), 0);
    for (const auto& e : j.at("dominators")) {
        int c = e.get<int>();
        if (c < 0 || c >= ps.r()) throw Error(Errc::ParseError, "dominator class out of range");
        w.dominator_count[c] += 1;
    }
    json rb{{"blocks", j.at("residual_blocks")}};
    w.residual = index_partition_from_json(rb);
    return w;
}

}  // namespace mpturan
