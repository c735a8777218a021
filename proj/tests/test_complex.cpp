#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "sidcert/bhyper.hpp"
#include "sidcert/graph.hpp"

using namespace sidcert;

namespace {

/** Frame edge set of a raw b-hypergraph, as masks. */
std::set<Subset> frame_edges(const BHypergraph& m, int k) {
    std::set<Subset> out;
    for (Subset e : m.edges)
        if (popcount(e) == k) out.insert(e);
    return out;
}

/**
 * Deterministic random trace: each step reflects a uniformly chosen edge
 * across a uniformly chosen subset, stopping before the ground exceeds the
 * vertex budget.
 */
std::vector<TraceStep> random_trace(std::mt19937_64& rng, int k, int steps, int vertex_budget) {
    ReflectionComplex m(k);
    std::vector<TraceStep> out;
    for (int s = 0; s < steps; ++s) {
        std::vector<Subset> edges(m.base().edges.begin(), m.base().edges.end());
        Subset l = edges[rng() % edges.size()];
        std::vector<Vertex> l_ids = m.ground().elements(l);
        std::vector<Vertex> x_ids;
        for (Vertex v : l_ids)
            if (rng() % 2) x_ids.push_back(v);
        int fresh = int(l_ids.size() - x_ids.size());
        if (m.ground().size() + fresh > vertex_budget) continue;
        m.reflect_step(l_ids, x_ids);
        out.push_back({l_ids, x_ids});
    }
    return out;
}

}  // namespace

TEST_CASE("the trivial complex is a single edge") {
    ReflectionComplex m(3);
    REQUIRE(m.ground().size() == 3);
    REQUIRE(m.base().edges == std::set<Subset>{0b111});
    REQUIRE(m.base().relation.empty());
    REQUIRE_THROWS_AS(ReflectionComplex(1), ArityError);
}

TEST_CASE("the two-step square trace builds a 4-cycle with its relation") {
    ReflectionComplex m(2);
    auto cm1 = m.reflect_step({1, 2}, {2});
    REQUIRE(cm1 == std::map<Vertex, Vertex>{{1, 3}, {2, 2}});
    auto cm2 = m.reflect_step({1, 2, 3}, {1, 3});
    REQUIRE(cm2 == std::map<Vertex, Vertex>{{1, 1}, {2, 4}, {3, 3}});

    const GroundSet& g = m.ground();
    REQUIRE(g.size() == 4);
    std::set<Subset> cycle{g.subset({1, 2}), g.subset({2, 3}), g.subset({3, 4}),
                           g.subset({1, 4})};
    REQUIRE(frame_edges(m.base(), 2) == cycle);
    REQUIRE(m.base().relation.count(ordered_pair(g.subset({1, 2}), g.subset({2, 3}))) == 1);
    REQUIRE(m.base().relation.count(ordered_pair(g.subset({1, 2, 3}), g.subset({1, 3, 4}))) == 1);
    REQUIRE(m.base().has_edge(g.full()));
}

TEST_CASE("reflections validate their inputs") {
    ReflectionComplex m(2);
    REQUIRE_THROWS_AS(m.reflect_step({1}, {1}), NotAnEdgeError);
    REQUIRE_THROWS_AS(m.reflect_step({1, 2}, {3}), InvalidSubsetError);
    BHypergraph raw = m.base();
    REQUIRE_THROWS_AS(reflect(raw, 0b01, 0b01), NotAnEdgeError);
}

TEST_CASE("replaying a trace reproduces the complex bit for bit") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 20; ++it) {
        int k = 2 + int(it % 2);
        std::vector<TraceStep> trace = random_trace(rng, k, 5, 12);
        ReflectionComplex a(k, trace);
        ReflectionComplex b(k);
        for (const auto& st : trace) b.reflect_step(st.L, st.X);
        REQUIRE(a == b);
    }
}

TEST_CASE("random traces are reducible and grow frames by reflected copies") {
    std::mt19937_64 rng(202);
    for (int it = 0; it < 60; ++it) {
        int k = (it % 2) ? 3 : 2;
        std::vector<TraceStep> trace = random_trace(rng, k, 6, 12);
        ReflectionComplex m(k);
        for (const auto& st : trace) {
            std::set<Subset> before = frame_edges(m.base(), k);
            Subset l = m.ground().subset(st.L);
            auto cm = m.reflect_step(st.L, st.X);
            const GroundSet& g = m.ground();

            // Frame identity: the new frame is the old one plus the tau2
            // images of the old frame edges inside L.
            std::set<Subset> expect = before;
            for (Subset e : before) {
                if (!subset_le(e, l)) continue;
                Subset img = 0;
                for (Vertex v : g.elements(e)) img |= g.singleton(cm.at(v));
                expect.insert(img);
            }
            REQUIRE(frame_edges(m.base(), k) == expect);
        }
        ReducibilityReport rep = is_k_reducible(m.base(), k);
        REQUIRE(rep.reducible);
        for (const auto& [t, split] : rep.splits) {
            REQUIRE((split.first | split.second) == t);
            REQUIRE(m.base().has_edge(split.first));
            REQUIRE(m.base().has_edge(split.second));
            REQUIRE(popcount(split.first) < popcount(t));
            REQUIRE(popcount(split.second) < popcount(t));
        }
    }
}

TEST_CASE("reducibility fails without a related split") {
    BHypergraph m;
    m.verts = range_ground(3);
    m.edges = {0b111, 0b011, 0b110};
    // No relation pair covers the top edge.
    ReducibilityReport rep = is_k_reducible(m, 2);
    REQUIRE_FALSE(rep.reducible);
    REQUIRE(rep.failing == 0b111);

    m.add_relation(0b011, 0b110);
    REQUIRE(is_k_reducible(m, 2).reducible);
}

TEST_CASE("gluing keeps first-factor identifiers and renames the rest") {
    BHypergraph e1 = trivial_bhypergraph(2);
    BHypergraph e2 = trivial_bhypergraph(2);
    GlueResult g = glue(e1, e2, {{2, 1}});
    REQUIRE(g.tau2 == std::map<Vertex, Vertex>{{1, 2}, {2, 3}});
    REQUIRE(g.complex.verts.vertices() == std::vector<Vertex>{1, 2, 3});
    REQUIRE(g.complex.edges == std::set<Subset>{0b011, 0b110});
    REQUIRE(g.complex.relation.empty());

    GlueResult st = glue_star(e1, e2, {{2, 1}});
    REQUIRE(st.complex.edges.count(0b111) == 1);
    REQUIRE(st.complex.second_edges.count(0b111) == 1);
    REQUIRE(st.complex.relation.count(ordered_pair(0b011, 0b110)) == 1);
}

TEST_CASE("sub-structure restriction keeps only contained data") {
    ReflectionComplex m(2);
    m.reflect_step({1, 2}, {2});
    BHypergraph sub = sub_on(m.base(), m.ground().subset({1, 2}));
    REQUIRE(sub.verts.vertices() == std::vector<Vertex>{1, 2});
    REQUIRE(sub.edges == std::set<Subset>{0b11});
    REQUIRE(sub.relation.empty());
}

TEST_CASE("a degenerate reflection across a whole edge changes nothing structural") {
    ReflectionComplex a(2);
    a.reflect_step({1, 2}, {2});
    a.reflect_step({1, 2, 3}, {1, 3});
    ReflectionComplex b = a;
    b.reflect_step({1, 2}, {1, 2});
    REQUIRE(b.ground() == a.ground());
    REQUIRE(frame_edges(b.base(), 2) == frame_edges(a.base(), 2));
    REQUIRE(b.base().edges == a.base().edges);
    REQUIRE(b.trace().size() == a.trace().size() + 1);
}
