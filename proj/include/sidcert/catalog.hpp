#pragma once

// Ready-made reflection-complex constructions: trees, even cycles, bipartite
// blow-ups, box products with an edge (prisms), hypercubes, grids, tight
// paths, k-forests and complete multipartite frames.  Each builder returns a
// complex whose frame is the advertised graph; the box-product family also
// returns the data needed to feed the complex into `subdivide`.

#include <algorithm>
#include <map>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "sidcert/bhyper.hpp"
#include "sidcert/certify.hpp"
#include "sidcert/error.hpp"
#include "sidcert/graph.hpp"
#include "sidcert/subdivision.hpp"

namespace sidcert {

/** Path with vertices 1..n and edges {i, i+1}. */
inline FrameGraph path_graph(int n) {
    if (n < 1) throw ParameterError("path needs at least one vertex");
    std::vector<Vertex> verts;
    std::set<Subset> edges;
    for (int i = 1; i <= n; ++i) verts.push_back(i);
    GroundSet g(verts);
    for (int i = 1; i < n; ++i)
        edges.insert(g.subset({i, i + 1}));
    return FrameGraph(g, 2, edges, kHardGroundCap);
}

/** Star with center 1 and leaves 2..m+1. */
inline FrameGraph star_graph(int leaves) {
    if (leaves < 1) throw ParameterError("star needs at least one leaf");
    std::vector<Vertex> verts{1};
    for (int i = 0; i < leaves; ++i) verts.push_back(i + 2);
    GroundSet g(verts);
    std::set<Subset> edges;
    for (int i = 0; i < leaves; ++i)
        edges.insert(g.subset({1, i + 2}));
    return FrameGraph(g, 2, edges, kHardGroundCap);
}

/** Even cycle with vertices 1..n in cyclic order. */
inline FrameGraph cycle_graph(int n) {
    if (n < 3) throw ParameterError("cycle needs at least three vertices");
    std::vector<Vertex> verts;
    for (int i = 1; i <= n; ++i) verts.push_back(i);
    GroundSet g(verts);
    std::set<Subset> edges;
    for (int i = 1; i < n; ++i)
        edges.insert(g.subset({i, i + 1}));
    edges.insert(g.subset({1, n}));
    return FrameGraph(g, 2, edges, kHardGroundCap);
}

/** BFS edge list of a tree: root = smallest vertex, neighbours ascending. */
namespace detail {

inline std::vector<std::pair<Vertex, Vertex>> bfs_edges(const FrameGraph& tree) {
    if (tree.arity() != 2) throw ArityError("tree constructions need 2-uniform input");
    if (!is_tree(tree)) throw NotAForestError("input frame is not a tree");
    if (tree.edge_count() == 0)
        throw ParameterError("tree must have at least one edge");
    const auto& verts = tree.ground().vertices();
    std::map<Vertex, std::vector<Vertex>> adj;
    for (Subset e : tree.edges()) {
        auto ends = tree.ground().elements(e);
        adj[ends[0]].push_back(ends[1]);
        adj[ends[1]].push_back(ends[0]);
    }
    for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());
    std::vector<std::pair<Vertex, Vertex>> out;
    std::set<Vertex> seen{verts.front()};
    std::queue<Vertex> q;
    q.push(verts.front());
    while (!q.empty()) {
        Vertex p = q.front();
        q.pop();
        for (Vertex c : adj[p]) {
            if (seen.count(c)) continue;
            seen.insert(c);
            out.emplace_back(p, c);
            q.push(c);
        }
    }
    return out;
}

}  // namespace detail

struct TreeComplexResult {
    ReflectionComplex complex;
    /** Tree vertex -> complex vertex carrying its fibre. */
    std::map<Vertex, Vertex> label_of;
};

/**
 * Complex whose frame is the given tree: the first BFS edge seeds the base
 * edge {1,2} and every further tree edge reflects the parent's defining edge
 * across the parent vertex.  All steps reflect across a single vertex, so the
 * result stays in the forest class.
 */
inline TreeComplexResult tree_complex(const FrameGraph& tree) {
    auto edges = detail::bfs_edges(tree);
    TreeComplexResult out{ReflectionComplex(2, kHardGroundCap), {}};
    std::map<Vertex, Vertex> partner;  // complex vertex -> other end of its defining edge
    out.label_of[edges[0].first] = 1;
    out.label_of[edges[0].second] = 2;
    partner[1] = 2;
    partner[2] = 1;
    for (std::size_t i = 1; i < edges.size(); ++i) {
        auto [p, c] = edges[i];
        Vertex lp = out.label_of.at(p);
        std::vector<Vertex> l{lp, partner.at(lp)};
        std::sort(l.begin(), l.end());
        auto cm = out.complex.reflect_step(l, {lp});
        Vertex fresh = cm.at(partner.at(lp));
        out.label_of[c] = fresh;
        partner[fresh] = lp;
    }
    return out;
}

/**
 * Tree complex followed by extra reflection steps given in tree labels.
 * Steps are translated through the tree -> complex label map before replay.
 */
inline ReflectionComplex reflection_tree(const FrameGraph& tree,
                                         const std::vector<TraceStep>& steps) {
    auto tc = tree_complex(tree);
    for (const auto& st : steps) {
        std::vector<Vertex> l, x;
        for (Vertex v : st.L) l.push_back(tc.label_of.at(v));
        for (Vertex v : st.X) x.push_back(tc.label_of.at(v));
        std::sort(l.begin(), l.end());
        std::sort(x.begin(), x.end());
        tc.complex.reflect_step(l, x);
    }
    return tc.complex;
}

/** One build move for arrangeable frames. */
struct ArrangeStep {
    int op = 1;              // 1: reflect edge {v,w} across v; 2: reflect {v} + s across s
    Vertex v = 0;
    Vertex w = 0;            // op 1 only
    std::vector<Vertex> s;   // op 2 only
};

inline ArrangeStep arrange_leaf(Vertex v, Vertex w) { return ArrangeStep{1, v, w, {}}; }

inline ArrangeStep arrange_fold(Vertex v, std::vector<Vertex> s) {
    return ArrangeStep{2, v, 0, std::move(s)};
}

/**
 * Replays a build sequence of the two arrangeable moves on the base edge:
 * op 1 hangs a fresh leaf copy of w off v, op 2 reflects a vertex together
 * with a set of already-built vertices.  Every referenced edge must exist.
 */
inline ReflectionComplex tree_arrangeable_complex(const std::vector<ArrangeStep>& build) {
    ReflectionComplex rc(2, kHardGroundCap);
    for (const auto& st : build) {
        if (st.op == 1) {
            std::vector<Vertex> l{st.v, st.w};
            std::sort(l.begin(), l.end());
            rc.reflect_step(l, {st.v});
        } else if (st.op == 2) {
            std::vector<Vertex> l = st.s;
            l.push_back(st.v);
            std::sort(l.begin(), l.end());
            std::vector<Vertex> x = st.s;
            std::sort(x.begin(), x.end());
            rc.reflect_step(l, x);
        } else {
            throw ParameterError("arrangeable build op must be 1 or 2");
        }
    }
    return rc;
}

/** Worked arrangeable example: a 4-cycle with a pendant vertex. */
inline ReflectionComplex tree_arrangeable_example() {
    return tree_arrangeable_complex(
        {arrange_leaf(2, 1), arrange_leaf(2, 1), arrange_fold(2, {1, 3})});
}

/**
 * Even cycle of the given length: a path complex on len/2 + 1 vertices whose
 * labels are the identity, closed up by reflecting the whole ground set
 * across its two endpoints.
 */
inline ReflectionComplex cycle_complex(int len) {
    if (len < 4 || len % 2 != 0)
        throw ParameterError("cycle complexes need an even length of at least 4");
    int m = len / 2;
    auto tc = tree_complex(path_graph(m + 1));
    std::vector<Vertex> all;
    for (int i = 1; i <= m + 1; ++i) all.push_back(i);
    tc.complex.reflect_step(all, {1, m + 1});
    return tc.complex;
}

/**
 * Blow-up of a 6-cycle: one side of the bipartition keeps single vertices,
 * the other side's three vertices are replicated v1, v2, v3 times by
 * reflecting the full 6-cycle ground set across everything but the vertex
 * being replicated.  Frames of this family are the bipartite graphs with
 * three vertices on the small side.
 */
inline ReflectionComplex bipartite_3side(int v1, int v2, int v3) {
    if (v1 < 1 || v2 < 1 || v3 < 1)
        throw ParameterError("bipartite blow-up multiplicities must be at least 1");
    ReflectionComplex rc = cycle_complex(6);
    // Frame is the cycle 1-2-3-4-6-5 with colour classes {1,3,6} and {2,4,5}.
    const std::vector<Vertex> w{1, 2, 3, 4, 5, 6};
    const std::vector<Vertex> z{2, 4, 5};
    const std::vector<int> mult{v1, v2, v3};
    for (int j = 0; j < 3; ++j) {
        std::vector<Vertex> x;
        for (Vertex u : w)
            if (u != z[j]) x.push_back(u);
        for (int t = 1; t < mult[j]; ++t) rc.reflect_step(w, x);
    }
    return rc;
}

/** Complex together with the two sides used when feeding it to subdivide. */
struct SidedComplex {
    ReflectionComplex complex;
    std::vector<Vertex> j1, j2;
    /** Tree vertex -> (j1 copy, j2 copy) rung. */
    std::map<Vertex, std::pair<Vertex, Vertex>> rung;
};

/**
 * Box product of a tree with a single edge: the base square covers the first
 * BFS edge of the tree, and every further tree edge reflects the parent's
 * square across the parent's rung.  j1 collects the copies of the tree on one
 * side of the product, j2 the copies on the other side.
 */
inline SidedComplex tree_box_e(const FrameGraph& tree) {
    auto edges = detail::bfs_edges(tree);
    SidedComplex out{ReflectionComplex(2, kHardGroundCap), {}, {}, {}};
    out.complex.reflect_step({1, 2}, {2});
    out.complex.reflect_step({1, 2, 3}, {1, 3});
    // Square 1-2-3-4 over the first tree edge: rungs {1,2} and {4,3}.
    auto [r0, c0] = edges[0];
    out.rung[r0] = {1, 2};
    out.rung[c0] = {4, 3};
    std::map<Vertex, Vertex> across;  // tree vertex -> other end of its defining square
    across[r0] = c0;
    across[c0] = r0;
    for (std::size_t i = 1; i < edges.size(); ++i) {
        auto [p, c] = edges[i];
        Vertex q = across.at(p);
        std::vector<Vertex> l{out.rung.at(p).first, out.rung.at(p).second,
                              out.rung.at(q).first, out.rung.at(q).second};
        std::sort(l.begin(), l.end());
        std::vector<Vertex> x{out.rung.at(p).first, out.rung.at(p).second};
        std::sort(x.begin(), x.end());
        auto cm = out.complex.reflect_step(l, x);
        out.rung[c] = {cm.at(out.rung.at(q).first), cm.at(out.rung.at(q).second)};
        across[c] = p;
    }
    for (const auto& [v, uw] : out.rung) {
        out.j1.push_back(uw.first);
        out.j2.push_back(uw.second);
    }
    std::sort(out.j1.begin(), out.j1.end());
    std::sort(out.j2.begin(), out.j2.end());
    return out;
}

/**
 * Hypercube complex of dimension n, built by repeatedly subdividing the
 * previous cube with the square gadget tree_box_e(path_graph(2)).
 */
inline ReflectionComplex hypercube_complex(int n) {
    if (n < 1) throw ParameterError("hypercube dimension must be at least 1");
    if (n > 5) throw SizeCapError("hypercube complexes are capped at dimension 5");
    ReflectionComplex q(2, kHardGroundCap);
    auto box = tree_box_e(path_graph(2));
    for (int i = 2; i <= n; ++i) {
        Subdivision sd = subdivide(q, box.complex, box.j1, box.j2, std::nullopt,
                                   kHardGroundCap);
        q = sd.hat;
    }
    return q;
}

/**
 * Certificate for the dimension-n hypercube frame: the square gadget's
 * constructive certificate is transported along the same subdivision chain
 * that builds the complex.
 */
inline Certificate hypercube_certificate(int n) {
    if (n < 1) throw ParameterError("hypercube dimension must be at least 1");
    if (n > 5) throw SizeCapError("hypercube complexes are capped at dimension 5");
    ReflectionComplex q(2, kHardGroundCap);
    Certificate cert = thick_certificate_from_trace(q);
    auto box = tree_box_e(path_graph(2));
    Certificate box_cert = thick_certificate_from_trace(box.complex);
    for (int i = 2; i <= n; ++i) {
        Subdivision sd = subdivide(q, box.complex, box.j1, box.j2, std::nullopt,
                                   kHardGroundCap);
        cert = certificate_transport_subdivision(sd, cert, box_cert);
        q = sd.hat;
    }
    return cert;
}

/**
 * Grid complex with the given side lengths (each at least 2): a path complex
 * for the first axis, then one subdivision per further axis with the
 * path-box gadget of that axis.
 */
inline ReflectionComplex grid_complex(const std::vector<int>& dims) {
    if (dims.empty()) throw ParameterError("grid needs at least one dimension");
    for (int d : dims)
        if (d < 2) throw ParameterError("grid side lengths must be at least 2");
    ReflectionComplex g = tree_complex(path_graph(dims[0])).complex;
    for (std::size_t i = 1; i < dims.size(); ++i) {
        auto box = tree_box_e(path_graph(dims[i]));
        Subdivision sd = subdivide(g, box.complex, box.j1, box.j2, std::nullopt,
                                   kHardGroundCap);
        g = sd.hat;
    }
    return g;
}

/** Certificate for the grid frame, transported along the same chain. */
inline Certificate grid_certificate(const std::vector<int>& dims) {
    if (dims.empty()) throw ParameterError("grid needs at least one dimension");
    for (int d : dims)
        if (d < 2) throw ParameterError("grid side lengths must be at least 2");
    ReflectionComplex g = tree_complex(path_graph(dims[0])).complex;
    Certificate cert = thick_certificate_from_trace(g);
    for (std::size_t i = 1; i < dims.size(); ++i) {
        auto box = tree_box_e(path_graph(dims[i]));
        Certificate box_cert = thick_certificate_from_trace(box.complex);
        Subdivision sd = subdivide(g, box.complex, box.j1, box.j2, std::nullopt,
                                   kHardGroundCap);
        cert = certificate_transport_subdivision(sd, cert, box_cert);
        g = sd.hat;
    }
    return cert;
}

/**
 * k-uniform tight path on n vertices: consecutive windows of k vertices are
 * edges, each step reflecting the previous window across its last k-1
 * vertices.
 */
inline ReflectionComplex tight_path(int k, int n) {
    if (k < 2) throw ParameterError("tight paths need arity at least 2");
    if (n < k) throw ParameterError("tight paths need at least k vertices");
    ReflectionComplex rc(k, kHardGroundCap);
    for (int i = 1; i + k <= n; ++i) {
        std::vector<Vertex> l, x;
        for (int j = i; j < i + k; ++j) l.push_back(j);
        for (int j = i + 1; j < i + k; ++j) x.push_back(j);
        rc.reflect_step(l, x);
    }
    return rc;
}

/**
 * k-uniform forest-like complex: each step reflects an existing edge across
 * one of its subsets, gluing a fresh edge along that subset.
 */
inline ReflectionComplex k_forest(int k, const std::vector<TraceStep>& steps) {
    if (k < 2) throw ParameterError("k-forests need arity at least 2");
    ReflectionComplex rc(k, kHardGroundCap);
    for (const auto& st : steps) {
        if (static_cast<int>(st.L.size()) != k)
            throw ParameterError("k-forest steps must reflect a single edge");
        rc.reflect_step(st.L, st.X);
    }
    return rc;
}

/** Worked k-forest example: two extra edges glued to the base edge. */
inline ReflectionComplex k_forest_example(int k) {
    std::vector<Vertex> base;
    for (int i = 1; i <= k; ++i) base.push_back(i);
    return k_forest(k, {TraceStep{base, {}}, TraceStep{base, {1}}});
}

/** Complex together with the partition class of every frame vertex. */
struct PartiteComplex {
    ReflectionComplex complex;
    std::map<Vertex, int> class_of;  // 1-based class index
};

/**
 * Complete multipartite frame with the given class sizes, one vertex per
 * class forming the base edge.  Class j is replicated by reflecting the
 * phase-start vertex set across everything except the class-j seed; the
 * reflected set spans no edge, so the result stays in the disjoint-edge
 * class.
 */
inline PartiteComplex complete_k_partite(const std::vector<int>& sizes) {
    const int k = static_cast<int>(sizes.size());
    if (k < 2) throw ParameterError("complete multipartite frames need at least 2 classes");
    for (int s : sizes)
        if (s < 1) throw ParameterError("class sizes must be at least 1");
    PartiteComplex out{ReflectionComplex(k, kHardGroundCap), {}};
    for (int j = 1; j <= k; ++j) out.class_of[j] = j;
    for (int j = 1; j <= k; ++j) {
        std::vector<Vertex> w = out.complex.ground().vertices();
        std::vector<Vertex> x;
        for (Vertex u : w)
            if (u != j) x.push_back(u);
        for (int t = 1; t < sizes[j - 1]; ++t) {
            auto cm = out.complex.reflect_step(w, x);
            out.class_of[cm.at(j)] = j;
        }
    }
    return out;
}

inline PartiteComplex complete_bipartite(int p, int q) {
    return complete_k_partite({p, q});
}

/** Square complex as a two-step trace; shared base for scheme examples. */
inline ReflectionComplex square_complex() {
    ReflectionComplex rc(2, kHardGroundCap);
    rc.reflect_step({1, 2}, {2});
    rc.reflect_step({1, 2, 3}, {1, 3});
    return rc;
}

/** Square complex trace extended by a step whose reflected set is the whole edge. */
inline ReflectionComplex square_complex_padded() {
    ReflectionComplex rc = square_complex();
    rc.reflect_step({1, 2}, {1, 2});
    return rc;
}

}  // namespace sidcert
