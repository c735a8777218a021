#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "sidcert/catalog.hpp"
#include "sidcert/certify.hpp"

using namespace sidcert;

namespace {

/** Rebuilds the set function described by a cone decomposition. */
SetFunction recombine_cone(const GroundSet& g, const ConeDecomposition& d) {
    SetFunction out(g);
    out.add(0, d.line);
    for (const auto& [pr, c] : d.cone_pairs) {
        SetFunction t = t_vector(g, pr.first, pr.second);
        t *= c;
        out += t;
    }
    for (const auto& [s, c] : d.cone_indicators) {
        SetFunction i = indicator(g, s);
        i *= c;
        out += i;
    }
    return out;
}

FrameGraph random_forest(std::mt19937_64& rng, int n) {
    std::vector<Vertex> vs;
    std::vector<std::vector<Vertex>> edges;
    for (int i = 1; i <= n; ++i) {
        vs.push_back(i);
        if (i > 1 && rng() % 4 != 0) {
            int p = 1 + int(rng() % (i - 1));
            edges.push_back({p, i});
        }
    }
    return make_graph(vs, edges);
}

}  // namespace

TEST_CASE("forest decompositions recombine to the negated corrected vector") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 60; ++it) {
        FrameGraph f = random_forest(rng, 2 + int(rng() % 5));
        const GroundSet& g = f.ground();
        Subset x = Subset(rng()) & g.full();
        ConeDecomposition d = forest_decomposition(f, x);
        SetFunction target = h_vector(f, x);
        target *= Rational(-1);
        REQUIRE(recombine_cone(g, d) == target);
        for (const auto& [pr, c] : d.cone_pairs) REQUIRE(c >= 0);
        for (const auto& [s, c] : d.cone_indicators) REQUIRE(c >= 0);
    }
}

TEST_CASE("the path decomposition is the single middle pair") {
    FrameGraph p3 = make_graph({1, 2, 3}, {{1, 2}, {2, 3}});
    const GroundSet& g = p3.ground();
    ConeDecomposition d = forest_decomposition(p3, g.full());
    REQUIRE(d.line == Rational(0));
    REQUIRE(d.cone_indicators.empty());
    REQUIRE(d.cone_pairs ==
            std::map<SubsetPair, Rational>{
                {ordered_pair(g.subset({1, 2}), g.subset({2, 3})), Rational(1)}});
}

TEST_CASE("cycles are rejected by the forest decomposition") {
    FrameGraph c4 = make_graph({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
    REQUIRE_THROWS_AS(forest_decomposition(c4, c4.ground().full()), NotAForestError);
}

TEST_CASE("disjoint-edge decompositions recombine to the negated structure vector") {
    std::mt19937_64 rng(37);
    for (int it = 0; it < 40; ++it) {
        // Random union of pairwise disjoint 3-edges plus isolated points.
        int blocks = 1 + int(rng() % 2);
        std::vector<Vertex> vs;
        std::vector<std::vector<Vertex>> edges;
        Vertex next = 1;
        for (int b = 0; b < blocks; ++b) {
            edges.push_back({next, next + 1, next + 2});
            vs.push_back(next);
            vs.push_back(next + 1);
            vs.push_back(next + 2);
            next += 3;
        }
        for (int i = 0; i < int(rng() % 3); ++i) vs.push_back(next++);
        FrameGraph f = make_graph(vs, edges, 3);
        const GroundSet& g = f.ground();
        Subset x = Subset(rng()) & g.full();
        ConeDecomposition d = zk_decomposition(f, x);
        SetFunction target = s_vector(f, x);
        target *= Rational(-1);
        REQUIRE(recombine_cone(g, d) == target);
    }
}

TEST_CASE("overlapping edges are outside the disjoint-edge class") {
    FrameGraph f = make_graph({1, 2, 3, 4}, {{1, 2, 3}, {2, 3, 4}}, 3);
    REQUIRE_THROWS_AS(zk_decomposition(f, f.ground().full()), NotInClassError);
}

TEST_CASE("class membership follows the reflected sets") {
    REQUIRE(in_class_C(cycle_complex(4)).in_class);
    REQUIRE(in_class_C(cycle_complex(6)).in_class);
    REQUIRE(in_class_C(tree_arrangeable_example()).in_class);
    REQUIRE(in_class_Ck(tight_path(3, 5)).in_class);

    // Reflecting across the whole 4-cycle spans a cycle: not in the class.
    ReflectionComplex bad = cycle_complex(4);
    bad.reflect_step({1, 2, 3, 4}, {1, 2, 3, 4});
    ClassReport rep = in_class_C(bad);
    REQUIRE_FALSE(rep.in_class);
    REQUIRE(rep.failing_step == 2);
}

TEST_CASE("constructive certificates verify for the tree and cycle corpus") {
    std::vector<ReflectionComplex> corpus{
        ReflectionComplex(2),
        tree_complex(path_graph(3)).complex,
        tree_complex(star_graph(3)).complex,
        cycle_complex(4),
        cycle_complex(6),
        reflection_tree(path_graph(3), {TraceStep{{1, 2, 3}, {1, 3}}}),
        tree_arrangeable_example(),
        bipartite_3side(1, 1, 1),
        bipartite_3side(2, 1, 1),
    };
    for (const auto& m : corpus) {
        Certificate cert = thick_certificate_from_trace(m);
        REQUIRE(verify_certificate(thickness_problem(m), cert));
        Certificate weak = weak_from_thick(cert, m.frame());
        REQUIRE(verify_certificate(weak_thickness_problem(m), weak));
    }
}

TEST_CASE("weak certificates verify for hypergraph traces") {
    for (const auto& m : {tight_path(3, 4), tight_path(3, 5), k_forest_example(3),
                          complete_k_partite({2, 2, 2}).complex,
                          complete_k_partite({1, 1, 2}).complex}) {
        Certificate cert = weak_certificate_from_trace(m);
        REQUIRE(verify_certificate(weak_thickness_problem(m), cert));
    }
}

TEST_CASE("the trivial complex has the empty certificate") {
    ReflectionComplex m(2);
    Certificate cert = thick_certificate_from_trace(m);
    REQUIRE(cert.target.entries().empty());
    REQUIRE(cert.line == Rational(0));
    REQUIRE(cert.cone_pairs.empty());
    REQUIRE(cert.subspace_t.empty());
    REQUIRE(verify_certificate(thickness_problem(m), cert));
}

TEST_CASE("full-mode linear programming agrees with the constructive route") {
    for (const auto& m : {cycle_complex(4), tree_complex(path_graph(3)).complex,
                          tree_arrangeable_example(), cycle_complex(6)}) {
        MembershipProblem p = thickness_problem(m);
        MembershipOutcome full = decide_membership(p, SolveMode::Full);
        REQUIRE(full.status == MemberStatus::Certified);
        REQUIRE(verify_certificate(p, *full.certificate));

        MembershipOutcome restricted =
            decide_membership(p, SolveMode::Restricted, complex_universe(m, p.target));
        REQUIRE(restricted.status != MemberStatus::Refuted);
        if (restricted.status == MemberStatus::Certified)
            REQUIRE(verify_certificate(p, *restricted.certificate));
    }
}

TEST_CASE("an impossible target is refuted with a checkable functional") {
    GroundSet g({1, 2});
    MembershipProblem p;
    p.ground = g;
    p.target = indicator(g, g.subset({1}));
    p.target *= Rational(-1);
    MembershipOutcome out = decide_membership(p, SolveMode::Full);
    REQUIRE(out.status == MemberStatus::Refuted);
    REQUIRE(verify_refutation(p, *out.refutation));
    REQUIRE_FALSE(out.certificate.has_value());
}

TEST_CASE("manual refutations are checked against all cone constraints") {
    GroundSet g({1, 2});
    MembershipProblem p;
    p.ground = g;
    p.target = indicator(g, g.subset({1}));
    p.target *= Rational(-1);

    // The cardinality functional is supermodular, vanishes on the empty set
    // and pairs negatively with the target.
    SetFunction y(g);
    y.add(g.subset({1}), Rational(1));
    y.add(g.subset({2}), Rational(1));
    y.add(g.full(), Rational(2));
    REQUIRE(verify_refutation(p, FarkasRefutation{y}));

    // A functional with mass on the empty set is rejected.
    SetFunction bad = y;
    bad.add(0, Rational(1));
    REQUIRE_FALSE(verify_refutation(p, FarkasRefutation{bad}));
}

TEST_CASE("certificate verification rejects tampering and undeclared generators") {
    ReflectionComplex m = cycle_complex(4);
    MembershipProblem p = thickness_problem(m);
    Certificate cert = thick_certificate_from_trace(m);

    Certificate wrong = cert;
    wrong.line += 1;
    REQUIRE_FALSE(verify_certificate(p, wrong));

    Certificate negative = cert;
    negative.cone_indicators[p.ground.subset({1})] = Rational(-1);
    REQUIRE_FALSE(verify_certificate(p, negative));

    Certificate undeclared = cert;
    undeclared.subspace_t[ordered_pair(p.ground.subset({1}), p.ground.subset({2}))] =
        Rational(1);
    REQUIRE_THROWS_AS(verify_certificate(p, undeclared), MalformedCertificateError);
}

TEST_CASE("spanned-path targets are certified from the relation") {
    ReflectionComplex m = cycle_complex(4);
    const GroundSet& g = m.ground();
    MembershipOutcome out = general_certificate(g, m.frame(), g.subset({1, 2, 3}),
                                                m.base().relation, {});
    REQUIRE(out.status == MemberStatus::Certified);
    MembershipProblem p;
    p.ground = g;
    p.target = s_vector(m.frame(), g.subset({1, 2, 3}));
    p.ci_pairs = m.base().relation;
    REQUIRE(verify_certificate(p, *out.certificate));
}

TEST_CASE("membership problems over large grounds refuse full mode") {
    ReflectionComplex m = tree_complex(path_graph(12)).complex;
    MembershipProblem p = thickness_problem(m);
    REQUIRE_THROWS_AS(decide_membership(p, SolveMode::Full), SizeCapError);
}
