#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <vector>

#include "sidcert/catalog.hpp"
#include "sidcert/homcount.hpp"
#include "sidcert/subdivision.hpp"

using namespace sidcert;

namespace {

std::set<Subset> frame_edges(const ReflectionComplex& m) {
    std::set<Subset> out;
    for (Subset e : m.base().edges)
        if (popcount(e) == m.arity()) out.insert(e);
    return out;
}

}  // namespace

TEST_CASE("substituting a bare edge is the identity") {
    for (const auto& host : {cycle_complex(4), tree_complex(path_graph(3)).complex,
                             tree_arrangeable_example()}) {
        Subdivision sd = subdivide(host, ReflectionComplex(2, kHardGroundCap), {1}, {2});
        REQUIRE(sd.hat.base() == host.base());
        REQUIRE(sd.gamma(host.ground().full()) == sd.hat.ground().full());
    }
}

TEST_CASE("substituting into a bare edge reproduces the gadget") {
    auto box = tree_box_e(path_graph(3));
    Subdivision sd = subdivide(ReflectionComplex(2, kHardGroundCap), box.complex,
                               box.j1, box.j2);
    REQUIRE(sd.hat.base() == box.complex.base());
    REQUIRE(sd.gamma(sd.host.ground().subset({1})) ==
            sd.hat.ground().subset(box.j1));
    REQUIRE(sd.gamma(sd.host.ground().subset({2})) ==
            sd.hat.ground().subset(box.j2));
}

TEST_CASE("blow-up maps preserve meets and dominate joins") {
    ReflectionComplex host = cycle_complex(4);
    auto box = tree_box_e(path_graph(2));
    Subdivision sd = subdivide(host, box.complex, box.j1, box.j2);
    const Subset top = host.ground().full();

    REQUIRE(sd.gamma(0) == 0);
    REQUIRE(sd.gamma(top) == sd.hat.ground().full());
    for (Subset a = 0; a <= top; ++a)
        for (Subset b = a; b <= top; ++b) {
            REQUIRE(sd.gamma(a & b) == (sd.gamma(a) & sd.gamma(b)));
            REQUIRE(subset_le(sd.gamma(a) | sd.gamma(b), sd.gamma(a | b)));
        }
    // Relation pairs blow up without extra closure vertices here.
    for (const auto& [a, b] : host.base().relation)
        REQUIRE(sd.gamma(a | b) == (sd.gamma(a) | sd.gamma(b)));
    // Host frame edges blow up to edges of the result.
    for (Subset e : frame_edges(host)) REQUIRE(sd.hat.base().edges.count(sd.gamma(e)));
}

TEST_CASE("square gadgets on a four-cycle host give the three-cube") {
    ReflectionComplex host = cycle_complex(4);
    auto box = tree_box_e(path_graph(2));
    Subdivision sd = subdivide(host, box.complex, box.j1, box.j2);

    FrameGraph k2 = make_graph({1, 2}, {{1, 2}});
    FrameGraph q3 = box_product(box_product(k2, k2), k2);
    REQUIRE(sd.hat.ground().size() == 8);
    REQUIRE(is_isomorphic(sd.hat.frame(), q3));

    Certificate cert = certificate_transport_subdivision(
        sd, thick_certificate_from_trace(host), thick_certificate_from_trace(box.complex));
    REQUIRE(verify_certificate(thickness_problem(sd.hat), cert));
}

TEST_CASE("ladder gadgets on a four-cycle host give the prism over it") {
    ReflectionComplex host = cycle_complex(4);
    auto ladder = tree_box_e(path_graph(3));
    Subdivision sd = subdivide(host, ladder.complex, ladder.j1, ladder.j2);

    FrameGraph p3 = make_graph({1, 2, 3}, {{1, 2}, {2, 3}});
    FrameGraph c4 = make_graph({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
    FrameGraph want = box_product(p3, c4);
    REQUIRE(sd.hat.ground().size() == 12);
    REQUIRE(frame_edges(sd.hat).size() == 20);
    REQUIRE(is_isomorphic(sd.hat.frame(), want));

    // The result's frame is exactly the union of the embedded gadget frames.
    std::set<Subset> glued;
    for (const auto& [edge, emb] : sd.frame_embeddings) {
        for (Subset f : frame_edges(ladder.complex)) {
            Subset image = 0;
            for (Vertex v : ladder.complex.ground().elements(f))
                image |= sd.hat.ground().singleton(emb.at(v));
            glued.insert(image);
        }
    }
    REQUIRE(glued == frame_edges(sd.hat));

    Certificate cert = certificate_transport_subdivision(
        sd, thick_certificate_from_trace(host),
        thick_certificate_from_trace(ladder.complex));
    REQUIRE(verify_certificate(thickness_problem(sd.hat), cert));
}

TEST_CASE("path gadgets with interior vertices double the cycle") {
    ReflectionComplex host = cycle_complex(4);
    ReflectionComplex path3 = tree_complex(path_graph(3)).complex;
    Subdivision sd = subdivide(host, path3, {1}, {3});
    REQUIRE(sd.hat.ground().size() == 8);

    std::vector<std::vector<Vertex>> c8_edges;
    for (int i = 1; i < 8; ++i) c8_edges.push_back({i, i + 1});
    c8_edges.push_back({8, 1});
    REQUIRE(is_isomorphic(sd.hat.frame(), make_graph({1, 2, 3, 4, 5, 6, 7, 8}, c8_edges)));

    Certificate cert = certificate_transport_subdivision(
        sd, thick_certificate_from_trace(host), thick_certificate_from_trace(path3));
    REQUIRE(verify_certificate(thickness_problem(sd.hat), cert));
}

TEST_CASE("explicit bipartitions must match the construction up to a swap") {
    ReflectionComplex host = cycle_complex(4);
    auto box = tree_box_e(path_graph(2));

    Subdivision plain = subdivide(host, box.complex, box.j1, box.j2);
    REQUIRE(plain.host_coloring ==
            std::map<Vertex, int>{{1, 1}, {2, 2}, {3, 1}, {4, 2}});

    std::map<Vertex, int> same{{1, 1}, {2, 2}, {3, 1}, {4, 2}};
    Subdivision agreed = subdivide(host, box.complex, box.j1, box.j2, same);
    REQUIRE(agreed.j1 == plain.j1);
    REQUIRE(agreed.j2 == plain.j2);

    std::map<Vertex, int> flipped{{1, 2}, {2, 1}, {3, 2}, {4, 1}};
    Subdivision swapped = subdivide(host, box.complex, box.j1, box.j2, flipped);
    REQUIRE(swapped.j1 == plain.j2);
    REQUIRE(swapped.j2 == plain.j1);
    REQUIRE(is_isomorphic(swapped.hat.frame(), plain.hat.frame()));

    std::map<Vertex, int> constant{{1, 1}, {2, 1}, {3, 1}, {4, 1}};
    REQUIRE_THROWS_AS(subdivide(host, box.complex, box.j1, box.j2, constant),
                      BipartitionError);
    std::map<Vertex, int> partial{{1, 1}, {2, 2}};
    REQUIRE_THROWS_AS(subdivide(host, box.complex, box.j1, box.j2, partial),
                      BipartitionError);
}

TEST_CASE("per-component flips of disconnected hosts are rejected") {
    // Reflecting a bare edge across the empty set doubles it: two disjoint
    // edges, colored 1-2 and 1-2 by the construction.
    ReflectionComplex host(2, kHardGroundCap);
    host.reflect_step({1, 2}, {});
    REQUIRE(frame_edges(host).size() == 2);

    auto box = tree_box_e(path_graph(2));
    std::map<Vertex, int> componentwise{{1, 1}, {2, 2}, {3, 2}, {4, 1}};
    REQUIRE_THROWS_AS(subdivide(host, box.complex, box.j1, box.j2, componentwise),
                      BipartitionError);
    std::map<Vertex, int> global{{1, 2}, {2, 1}, {3, 2}, {4, 1}};
    Subdivision ok = subdivide(host, box.complex, box.j1, box.j2, global);
    REQUIRE(ok.hat.ground().size() == 8);
}

TEST_CASE("substitution validates arity and side parameters") {
    auto box = tree_box_e(path_graph(2));
    REQUIRE_THROWS_AS(subdivide(tight_path(3, 4), box.complex, box.j1, box.j2),
                      ArityError);
    REQUIRE_THROWS_AS(subdivide(cycle_complex(4), tight_path(3, 4), {1}, {2}),
                      ArityError);
    ReflectionComplex path3 = tree_complex(path_graph(3)).complex;
    REQUIRE_THROWS_AS(subdivide(cycle_complex(4), path3, {}, {3}), ParameterError);
    REQUIRE_THROWS_AS(subdivide(cycle_complex(4), path3, {1, 2}, {2, 3}),
                      DisjointnessError);
}

TEST_CASE("iterated substitution reaches hypercubes and grids") {
    FrameGraph k2 = make_graph({1, 2}, {{1, 2}});
    REQUIRE(is_isomorphic(hypercube_complex(3).frame(),
                          box_product(box_product(k2, k2), k2)));
    FrameGraph p3 = make_graph({1, 2, 3}, {{1, 2}, {2, 3}});
    REQUIRE(is_isomorphic(grid_complex({3, 3}).frame(), box_product(p3, p3)));
}
