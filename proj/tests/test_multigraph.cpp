#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "helpers.hpp"
#include "mpturan/graph_ops.hpp"

using namespace mpturan;
using mpt_test::random_sizes;
using mpt_test::random_subgraph;
using mpt_test::random_vertex_partition;

TEST_CASE("build_complete edge counts") {
    REQUIRE(build_complete(validate({2, 2, 2}, {3, 1})).edge_count() == 12);
    REQUIRE(build_complete(validate({3, 2, 2}, {3, 1})).edge_count() == 16);
    REQUIRE(build_complete(validate({1, 1}, {3, 1}, false)).edge_count() == 1);
}

TEST_CASE("induce_by_partition keeps cross-block cross-class edges") {
    PartSizes ps = validate({2, 2, 2}, {3, 1});
    auto host = build_complete(ps);

    VertexPartition vp = make_vertex_partition(ps, 2);
    for (int off = 0; off < 2; ++off) vp.block_of[2][off] = 1;  // (V1 u V2 | V3)
    REQUIRE(induce_by_partition(host, vp).edge_count() == 8);

    PartSizes ps322 = validate({3, 2, 2}, {3, 1});
    auto host322 = build_complete(ps322);
    VertexPartition split = make_vertex_partition(ps322, 2);  // (V1 u {x} | V2 u {y})
    for (int off = 0; off < 2; ++off) split.block_of[1][off] = 1;
    split.block_of[2][1] = 1;
    REQUIRE(induce_by_partition(host322, split).edge_count() == 11);

    VertexPartition onesided = make_vertex_partition(ps, 2);
    REQUIRE(induce_by_partition(host, onesided).edge_count() == 0);

    // output edges are a subset of the input; idempotent for a fixed vp
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        PartSizes sz = random_sizes(rng, 2, 5, 3);
        auto g = random_subgraph(rng, sz, 0.6);
        auto pp = random_vertex_partition(rng, sz, 2);
        auto h = induce_by_partition(g, pp);
        for (auto [u, v] : h.edges_canonical()) REQUIRE(g.adjacent(u, v));
        REQUIRE(induce_by_partition(h, pp) == h);
    }
}

TEST_CASE("clique detection") {
    PartSizes ps = validate({2, 2, 2}, {3, 1});
    auto host = build_complete(ps);
    auto w = contains_clique(host, 3);
    REQUIRE(w.has_value());
    REQUIRE(w->copies.front().size() == 3);
    for (size_t a = 0; a < 3; ++a)
        for (size_t b = a + 1; b < 3; ++b)
            REQUIRE(host.adjacent(w->copies.front()[a], w->copies.front()[b]));

    VertexPartition vp = make_vertex_partition(ps, 2);
    for (int off = 0; off < 2; ++off) vp.block_of[2][off] = 1;
    REQUIRE(!contains_clique(induce_by_partition(host, vp), 3).has_value());

    REQUIRE(!contains_clique(build_complete(validate({2, 2}, {3, 1}, false)), 3).has_value());

    // a (t-1)-partite induced graph is K_t-free, for random vp
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        PartSizes sz = random_sizes(rng, 3, 5, 3);
        int t = 3 + int(rng() % 2);
        auto g = random_subgraph(rng, sz, 0.7);
        auto pp = random_vertex_partition(rng, sz, t - 1);
        REQUIRE(!contains_clique(induce_by_partition(g, pp), t).has_value());
    }
}

TEST_CASE("disjoint clique packing") {
    PartSizes ps = validate({2, 2, 2}, {3, 2});
    auto host = build_complete(ps);
    auto w = contains_disjoint_cliques(host, 2, 3);
    REQUIRE(w.has_value());
    REQUIRE(w->copies.size() == 2);
    std::set<int> used;
    for (const auto& c : w->copies)
        for (int v : c) {
            REQUIRE(!used.count(v));
            used.insert(v);
        }

    auto gw = compute_g(ps, 2, 3);
    auto realized = realize_witness(ps, gw.witness, 3);
    REQUIRE(!contains_disjoint_cliques(realized, 2, 3).has_value());

    MultipartiteGraph empty(ps);
    REQUIRE(!contains_disjoint_cliques(empty, 1, 2).has_value());
    REQUIRE(!contains_disjoint_cliques(empty, 2, 3).has_value());

    REQUIRE_THROWS_AS(
        contains_disjoint_cliques(build_complete(PartSizes{{40, 40}}), 2, 2, 64), Error);
}

TEST_CASE("realize_witness edge counts match compute_g") {
    PartSizes ps = validate({3, 2, 2}, {3, 2});
    auto gw = compute_g(ps, 2, 3);
    REQUIRE(realize_witness(ps, gw.witness, 3).edge_count() == 14);

    ExtremalWitness plain;
    plain.dominator_count.assign(3, 0);
    plain.residual = IndexPartition{{{0}, {1, 2}}};
    REQUIRE(realize_witness(validate({3, 2, 2}, {3, 1}), plain, 3).edge_count() == 12);

    PartSizes ps222 = validate({2, 2, 2}, {3, 2});
    auto gw222 = compute_g(ps222, 2, 3);
    auto r222 = realize_witness(ps222, gw222.witness, 3);
    REQUIRE(r222.edge_count() == 10);
    REQUIRE(!contains_disjoint_cliques(r222, 2, 3).has_value());

    ExtremalWitness bad;
    bad.dominator_count.assign(3, 0);
    bad.dominator_count[0] = 5;  // exceeds the class
    bad.residual = plain.residual;
    REQUIRE_THROWS_AS(realize_witness(ps, bad, 3), Error);

    // the realized graph never contains its own kK_t, over random instances
    std::mt19937_64 rng(53);
    for (int i = 0; i < 100; ++i) {
        PartSizes sz = random_sizes(rng, 3, 5, 4);
        int k = 1 + int(rng() % 3);
        if (k - 1 > sz.total()) continue;
        auto w2 = compute_g(sz, k, 3);
        auto g2 = realize_witness(sz, w2.witness, 3);
        REQUIRE(g2.edge_count() == w2.value);
        REQUIRE(!contains_disjoint_cliques(g2, k, 3).has_value());
    }
}

TEST_CASE("closeness is the worst per-vertex symmetric difference") {
    PartSizes ps = validate({2, 2}, {3, 1}, false);
    auto g = build_complete(ps);
    REQUIRE(closeness(g, g) == 0);
    auto h = g;
    h.remove_edge(h.global(0, 0), h.global(1, 0));
    REQUIRE(closeness(g, h) == 1);

    PartSizes ps222 = validate({2, 2, 2}, {3, 1});
    REQUIRE(closeness(build_complete(ps222), MultipartiteGraph(ps222)) == 4);

    REQUIRE_THROWS_AS(closeness(g, build_complete(ps222)), Error);

    // pseudometric: symmetry, identity, triangle inequality
    std::mt19937_64 rng(61);
    for (int i = 0; i < 200; ++i) {
        PartSizes sz = random_sizes(rng, 2, 4, 4);
        auto a = random_subgraph(rng, sz, 0.5);
        auto b = random_subgraph(rng, sz, 0.5);
        auto c = random_subgraph(rng, sz, 0.5);
        REQUIRE(closeness(a, b) == closeness(b, a));
        REQUIRE((closeness(a, b) == 0) == (a == b));
        REQUIRE(closeness(a, c) <= closeness(a, b) + closeness(b, c));
    }
}

TEST_CASE("seeded edge deletion is reproducible") {
    PartSizes ps = validate({2, 2, 2}, {3, 1});
    auto g = build_complete(ps);
    REQUIRE(delete_random_edges(g, 0, 12345) == g);
    REQUIRE(delete_random_edges(g, 12, 7).edge_count() == 0);

    auto a = delete_random_edges(g, 3, 7);
    auto b = delete_random_edges(g, 3, 7);
    REQUIRE(a.edge_count() == 9);
    REQUIRE(a == b);
    REQUIRE_THROWS_AS(delete_random_edges(g, 13, 7), Error);
}
