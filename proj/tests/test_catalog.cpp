#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "sidcert/catalog.hpp"
#include "sidcert/homcount.hpp"

using namespace sidcert;

namespace {

FrameGraph random_tree(std::mt19937_64& rng, int n) {
    std::vector<Vertex> vs;
    std::vector<std::vector<Vertex>> edges;
    for (int i = 1; i <= n; ++i) {
        vs.push_back(i);
        if (i > 1) edges.push_back({1 + int(rng() % (i - 1)), i});
    }
    return make_graph(vs, edges);
}

std::set<Subset> edge_masks(const FrameGraph& f,
                            const std::vector<std::vector<Vertex>>& edges) {
    std::set<Subset> out;
    for (const auto& e : edges) out.insert(f.ground().subset(e));
    return out;
}

}  // namespace

TEST_CASE("every catalog complex replays from its own trace") {
    std::vector<ReflectionComplex> built{
        tree_complex(path_graph(4)).complex,
        tree_complex(star_graph(3)).complex,
        cycle_complex(6),
        tree_arrangeable_example(),
        bipartite_3side(2, 1, 1),
        tree_box_e(path_graph(3)).complex,
        hypercube_complex(3),
        grid_complex({2, 3}),
        tight_path(3, 5),
        k_forest_example(3),
        complete_k_partite({2, 2, 2}).complex,
        square_complex_padded(),
    };
    for (const auto& m : built)
        REQUIRE(ReflectionComplex(m.arity(), m.trace(), m.cap()) == m);
}

TEST_CASE("tree complexes carry their tree, edge for edge") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 20; ++it) {
        FrameGraph tree = random_tree(rng, 2 + int(rng() % 6));
        TreeComplexResult tc = tree_complex(tree);
        FrameGraph frame = tc.complex.frame();
        REQUIRE(frame.edge_count() == tree.edge_count());
        for (Subset e : tree.edges()) {
            std::vector<Vertex> ends = tree.ground().elements(e);
            REQUIRE(frame.has_edge(frame.ground().subset(
                {tc.label_of.at(ends[0]), tc.label_of.at(ends[1])})));
        }
        REQUIRE(in_class_C(tc.complex).in_class);
        REQUIRE(is_isomorphic(frame, tree));
    }
    REQUIRE_THROWS_AS(tree_complex(cycle_graph(4)), NotAForestError);
    REQUIRE_THROWS_AS(tree_complex(path_graph(1)), ParameterError);
}

TEST_CASE("cycle complexes close up paths") {
    REQUIRE(cycle_complex(4) == square_complex());
    REQUIRE(is_isomorphic(cycle_complex(6).frame(), cycle_graph(6)));
    REQUIRE(is_isomorphic(cycle_complex(8).frame(), cycle_graph(8)));
    REQUIRE_THROWS_AS(cycle_complex(5), ParameterError);
    REQUIRE_THROWS_AS(cycle_complex(2), ParameterError);
}

TEST_CASE("the extra reflection steps of a reflection tree use tree labels") {
    ReflectionComplex closed = reflection_tree(path_graph(3), {TraceStep{{1, 2, 3}, {1, 3}}});
    REQUIRE(closed == cycle_complex(4));
}

TEST_CASE("the worked arrangeable example is a pendant four-cycle") {
    ReflectionComplex m = tree_arrangeable_example();
    FrameGraph f = m.frame();
    REQUIRE(f.edges() ==
            edge_masks(f, {{1, 2}, {2, 3}, {2, 4}, {1, 5}, {3, 5}}));
    REQUIRE(in_class_C(m).in_class);
    REQUIRE_THROWS_AS(tree_arrangeable_complex({ArrangeStep{3, 1, 2, {}}}),
                      ParameterError);
}

TEST_CASE("bipartite blow-ups replicate one side of the six-cycle") {
    REQUIRE(is_isomorphic(bipartite_3side(1, 1, 1).frame(), cycle_graph(6)));

    ReflectionComplex m = bipartite_3side(2, 1, 1);
    REQUIRE(m.ground().size() == 7);
    FrameGraph expect = make_graph({1, 2, 3, 4, 5, 6, 7},
                                   {{1, 2}, {2, 3}, {3, 4}, {4, 6}, {5, 6}, {1, 5},
                                    {1, 7}, {3, 7}});
    REQUIRE(m.frame().edges() == expect.edges());
    REQUIRE(in_class_C(m).in_class);

    ReflectionComplex big = bipartite_3side(2, 2, 2);
    REQUIRE(big.ground().size() == 9);
    std::map<int, int> sides;
    for (const auto& [v, c] : bipartition(big.frame())) ++sides[c];
    REQUIRE((sides[1] == 3 || sides[2] == 3));
    REQUIRE_THROWS_AS(bipartite_3side(0, 1, 1), ParameterError);
}

TEST_CASE("tree box complexes are prisms over their trees") {
    auto sq = tree_box_e(path_graph(2));
    REQUIRE(sq.j1 == std::vector<Vertex>{1, 4});
    REQUIRE(sq.j2 == std::vector<Vertex>{2, 3});
    REQUIRE(sq.complex == square_complex());

    FrameGraph k2 = make_graph({1, 2}, {{1, 2}});
    auto ladder = tree_box_e(path_graph(3));
    REQUIRE(is_isomorphic(ladder.complex.frame(), box_product(path_graph(3), k2)));
    REQUIRE(ladder.j1.size() == 3);
    REQUIRE(ladder.j2.size() == 3);

    auto starbox = tree_box_e(star_graph(3));
    REQUIRE(is_isomorphic(starbox.complex.frame(), box_product(star_graph(3), k2)));
    for (const auto& [tv, uw] : starbox.rung)
        REQUIRE(starbox.complex.frame().has_edge(
            starbox.complex.ground().subset({uw.first, uw.second})));
}

TEST_CASE("hypercube complexes have hypercube frames and valid certificates") {
    FrameGraph k2 = make_graph({1, 2}, {{1, 2}});
    REQUIRE(is_isomorphic(hypercube_complex(1).frame(), k2));
    REQUIRE(is_isomorphic(hypercube_complex(2).frame(), cycle_graph(4)));
    FrameGraph q3 = box_product(box_product(k2, k2), k2);
    ReflectionComplex h3 = hypercube_complex(3);
    REQUIRE(is_isomorphic(h3.frame(), q3));

    Certificate cert = hypercube_certificate(3);
    REQUIRE(verify_certificate(thickness_problem(h3), cert));
    REQUIRE_THROWS_AS(hypercube_complex(0), ParameterError);
    REQUIRE_THROWS_AS(hypercube_complex(6), SizeCapError);
}

TEST_CASE("grid complexes have grid frames and valid certificates") {
    REQUIRE(is_isomorphic(grid_complex({2, 2}).frame(), cycle_graph(4)));
    FrameGraph k2 = make_graph({1, 2}, {{1, 2}});
    REQUIRE(is_isomorphic(grid_complex({2, 3}).frame(),
                          box_product(k2, path_graph(3))));
    ReflectionComplex g33 = grid_complex({3, 3});
    REQUIRE(is_isomorphic(g33.frame(), box_product(path_graph(3), path_graph(3))));
    REQUIRE(verify_certificate(thickness_problem(g33), grid_certificate({3, 3})));
    REQUIRE_THROWS_AS(grid_complex({}), ParameterError);
    REQUIRE_THROWS_AS(grid_complex({1, 3}), ParameterError);
}

TEST_CASE("tight paths slide a window one vertex at a time") {
    ReflectionComplex tp = tight_path(3, 5);
    FrameGraph f = tp.frame();
    REQUIRE(f.edges() == edge_masks(f, {{1, 2, 3}, {2, 3, 4}, {3, 4, 5}}));
    REQUIRE(in_class_Ck(tp).in_class);
    REQUIRE(tight_path(2, 4).frame().edges() ==
            edge_masks(tight_path(2, 4).frame(), {{1, 2}, {2, 3}, {3, 4}}));
    REQUIRE_THROWS_AS(tight_path(3, 2), ParameterError);
    REQUIRE_THROWS_AS(tight_path(1, 3), ParameterError);
}

TEST_CASE("k-forest builds reflect whole edges only") {
    ReflectionComplex f3 = k_forest_example(3);
    FrameGraph f = f3.frame();
    REQUIRE(f.edges() == edge_masks(f, {{1, 2, 3}, {4, 5, 6}, {1, 7, 8}}));
    REQUIRE(in_class_Ck(f3).in_class);
    REQUIRE_THROWS_AS(k_forest(3, {TraceStep{{1, 2}, {1}}}), ParameterError);
    REQUIRE_THROWS_AS(k_forest(1, {}), ParameterError);
}

TEST_CASE("complete multipartite complexes span all transversal edges") {
    PartiteComplex small = complete_k_partite({1, 1, 2});
    FrameGraph sf = small.complex.frame();
    REQUIRE(sf.edges() == edge_masks(sf, {{1, 2, 3}, {1, 2, 4}}));
    REQUIRE(small.class_of == std::map<Vertex, int>{{1, 1}, {2, 2}, {3, 3}, {4, 3}});

    PartiteComplex octa = complete_k_partite({2, 2, 2});
    REQUIRE(octa.complex.ground().size() == 6);
    REQUIRE(octa.complex.frame().edge_count() == 8);
    REQUIRE(in_class_Ck(octa.complex).in_class);
    std::map<int, int> sizes;
    for (const auto& [v, c] : octa.class_of) ++sizes[c];
    REQUIRE(sizes == std::map<int, int>{{1, 2}, {2, 2}, {3, 2}});

    PartiteComplex k23 = complete_bipartite(2, 3);
    FrameGraph kf = k23.complex.frame();
    REQUIRE(kf.edges() ==
            edge_masks(kf, {{1, 2}, {2, 3}, {1, 4}, {3, 4}, {1, 5}, {3, 5}}));
    REQUIRE(in_class_C(k23.complex).in_class);

    REQUIRE_THROWS_AS(complete_k_partite({3}), ParameterError);
    REQUIRE_THROWS_AS(complete_k_partite({0, 2}), ParameterError);
}

TEST_CASE("base graph builders validate their parameters") {
    REQUIRE(path_graph(4).edge_count() == 3);
    REQUIRE(star_graph(3).edge_count() == 3);
    REQUIRE(cycle_graph(5).edge_count() == 5);
    REQUIRE_THROWS_AS(path_graph(0), ParameterError);
    REQUIRE_THROWS_AS(star_graph(0), ParameterError);
    REQUIRE_THROWS_AS(cycle_graph(2), ParameterError);
}
