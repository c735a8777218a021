#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "sidcert/catalog.hpp"
#include "sidcert/homcount.hpp"
#include "sidcert/measures.hpp"

using namespace sidcert;

namespace {

TargetGraph k2_target() { return TargetGraph({"a", "b"}, 2, {{"a", "b"}}); }

TargetGraph path3_target() {
    return TargetGraph({"a", "b", "c"}, 2, {{"a", "b"}, {"b", "c"}});
}

TargetGraph k3_target() {
    return TargetGraph({"a", "b", "c"}, 2, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
}

FrameGraph c4_frame() {
    return make_graph({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
}

FrameGraph triangle_frame() { return make_graph({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}}); }

}  // namespace

TEST_CASE("four-cycle counts into the path are exact") {
    REQUIRE(count_hom(c4_frame(), path3_target()) == 8);
    REQUIRE(density(c4_frame(), path3_target()) == Rational(8) / Rational(81));
    SidorenkoReport rep = sidorenko_check(c4_frame(), path3_target());
    REQUIRE(rep.holds);
    REQUIRE(rep.lhs == Rational(8) / Rational(81));
    REQUIRE(rep.rhs == Rational(256) / Rational(6561));
    REQUIRE(abs(d_tau(c4_frame(), path3_target()).value -
                log(HighFloat(81) / 8)) < HighFloat(1e-25));
}

TEST_CASE("backtracking counts agree with brute force") {
    std::vector<FrameGraph> patterns{
        c4_frame(), triangle_frame(), path_graph(4), star_graph(3),
        make_graph({1, 2, 3}, {{1, 2}})}; // isolated vertex
    std::vector<TargetGraph> targets{k2_target(), path3_target(), k3_target()};
    for (const auto& t : random_targets(4, 2, 4, 5)) targets.push_back(t);
    for (const auto& h : patterns)
        for (const auto& g : targets)
            REQUIRE(count_hom(h, g) == count_hom_naive(h, g));
}

TEST_CASE("counts are multiplicative over disjoint unions") {
    FrameGraph both = disjoint_union(c4_frame(), path_graph(3));
    for (const auto& g : {path3_target(), k3_target()})
        REQUIRE(count_hom(both, g) ==
                count_hom(c4_frame(), g) * count_hom(path_graph(3), g));
}

TEST_CASE("enumeration lists each homomorphism once, in order") {
    HomomorphismSet hs = enumerate_hom(c4_frame(), path3_target());
    REQUIRE(Integer(hs.maps.size()) == count_hom(c4_frame(), path3_target()));
    REQUIRE(std::is_sorted(hs.maps.begin(), hs.maps.end()));
    REQUIRE(std::adjacent_find(hs.maps.begin(), hs.maps.end()) == hs.maps.end());
    for (const auto& t : hs.maps) {
        std::vector<int> e{t[0], t[1]};
        std::sort(e.begin(), e.end());
        REQUIRE(path3_target().has_edge_sorted(e));
    }
}

TEST_CASE("the four-cycle sweep up to four vertices is clean") {
    SweepReport rep = sweep_targets(c4_frame(), 4);
    REQUIRE(rep.per_size == std::map<int, size_t>{{2, 1}, {3, 7}, {4, 63}});
    REQUIRE(rep.targets == 71);
    REQUIRE(rep.violations.empty());
}

TEST_CASE("the triangle sweep finds a violation immediately") {
    SweepReport rep = sweep_targets(triangle_frame(), 2);
    REQUIRE(rep.violations.size() == 1);
    REQUIRE(rep.violations[0].n == 2);
    REQUIRE(rep.violations[0].lhs == Rational(0));
    REQUIRE(rep.violations[0].rhs == Rational(1) / Rational(8));
}

TEST_CASE("the tight-path sweep over 3-uniform targets is clean") {
    SweepReport rep = sweep_targets(tight_path(3, 4).frame(), 4);
    REQUIRE(rep.per_size == std::map<int, size_t>{{3, 1}, {4, 15}});
    REQUIRE(rep.violations.empty());
}

TEST_CASE("isomorphism testing distinguishes small frames") {
    FrameGraph k2 = make_graph({1, 2}, {{1, 2}});
    REQUIRE(is_isomorphic(c4_frame(), box_product(k2, k2)));
    REQUIRE(is_isomorphic(path_graph(4), make_graph({7, 8, 9, 10}, {{9, 7}, {7, 10}, {10, 8}})));
    REQUIRE_FALSE(is_isomorphic(path_graph(4), star_graph(3)));
    REQUIRE_FALSE(is_isomorphic(path_graph(4), path_graph(5)));
    REQUIRE_THROWS_AS(is_isomorphic(path_graph(25), path_graph(25)), SizeCapError);
}

TEST_CASE("random targets are reproducible and nonempty") {
    auto a = random_targets(5, 2, 6, 42);
    auto b = random_targets(5, 2, 6, 42);
    auto c = random_targets(5, 2, 6, 43);
    REQUIRE(a.size() == 6);
    REQUIRE(a == b);
    REQUIRE(a != c);
    for (const auto& g : a) {
        REQUIRE(g.size() == 5);
        REQUIRE(g.edge_count() >= 1);
        REQUIRE(g.labels() == std::vector<std::string>{"1", "2", "3", "4", "5"});
    }
    REQUIRE_THROWS_AS(random_targets(2, 3, 1, 0), ParameterError);
}

TEST_CASE("counting guards its caps and empty inputs") {
    REQUIRE_THROWS_AS(count_hom(c4_frame(), path3_target(), Integer(10)), SizeCapError);
    REQUIRE_THROWS_AS(count_hom_naive(c4_frame(), path3_target(), Integer(10)),
                      SizeCapError);
    REQUIRE_THROWS_AS(sidorenko_check(c4_frame(), TargetGraph({"a", "b"}, 2, {})),
                      EmptyTargetError);
    REQUIRE_THROWS_AS(d_tau(triangle_frame(), k2_target()), SupportError);
    REQUIRE_THROWS_AS(sweep_targets(c4_frame(), 1), ParameterError);
    REQUIRE_THROWS_AS(sweep_targets(c4_frame(), 7), SizeCapError);
}
