#ifndef SIDCERT_BHYPER_HPP
#define SIDCERT_BHYPER_HPP

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "sidcert/graph.hpp"

namespace sidcert {

using SubsetPair = std::pair<Subset, Subset>;

inline SubsetPair ordered_pair(Subset a, Subset b) {
    return a <= b ? SubsetPair{a, b} : SubsetPair{b, a};
}

/**
 * A hypergraph with a symmetric binary relation on subsets of the vertex
 * set.  Second-type edges and relation pairs (the ones produced by the
 * starred gluing) are tracked separately as metadata; equality ignores the
 * metadata.
 */
class BHypergraph {
public:
    GroundSet verts;
    std::set<Subset> edges;
    std::set<SubsetPair> relation;

    // Metadata: which edges / pairs arose as second-type objects.
    std::set<Subset> second_edges;
    std::set<SubsetPair> second_relation;

    bool operator==(const BHypergraph& o) const {
        return verts == o.verts && edges == o.edges && relation == o.relation;
    }
    bool operator!=(const BHypergraph& o) const { return !(*this == o); }

    bool has_edge(Subset e) const { return edges.count(e) != 0; }

    void add_relation(Subset a, Subset b, bool second = false) {
        auto p = ordered_pair(a, b);
        relation.insert(p);
        if (second) second_relation.insert(p);
    }

    Vertex max_vertex() const {
        Vertex m = 0;
        for (Vertex v : verts.vertices())
            if (v > m) m = v;
        return m;
    }
};

/** Size-k edges of M as a k-uniform hypergraph on all of V(M). */
inline FrameGraph frame_of(const BHypergraph& m, int k, int cap = kDefaultGroundCap) {
    std::set<Subset> es;
    for (Subset e : m.edges)
        if (popcount(e) == k) es.insert(e);
    return FrameGraph(m.verts, k, std::move(es), cap);
}

/** The sub-b-hypergraph spanned on W: edges inside W, relation pairs inside W. */
inline BHypergraph sub_on(const BHypergraph& m, Subset w, int cap = kDefaultGroundCap) {
    m.verts.check_mask(w);
    BHypergraph out;
    out.verts = GroundSet(m.verts.elements(w), cap);
    auto remask = [&](Subset s) { return out.verts.subset(m.verts.elements(s)); };
    for (Subset e : m.edges)
        if (subset_le(e, w)) out.edges.insert(remask(e));
    for (Subset e : m.second_edges)
        if (subset_le(e, w)) out.second_edges.insert(remask(e));
    for (const auto& [a, b] : m.relation)
        if (subset_le(a, w) && subset_le(b, w))
            out.relation.insert(ordered_pair(remask(a), remask(b)));
    for (const auto& [a, b] : m.second_relation)
        if (subset_le(a, w) && subset_le(b, w))
            out.second_relation.insert(ordered_pair(remask(a), remask(b)));
    return out;
}

struct GlueResult {
    BHypergraph complex;
    std::map<Vertex, Vertex> tau2; // second factor's vertices into the result
};

/**
 * Gluing along a common label set, given as matched vertex pairs
 * (φ1(f), φ2(f)).  The first factor keeps its identifiers; unmatched
 * vertices of the second factor get consecutive fresh integers above the
 * first factor's maximum, in ascending order of their source identifiers.
 */
inline GlueResult glue(const BHypergraph& m1, const BHypergraph& m2,
                       const std::vector<std::pair<Vertex, Vertex>>& matches,
                       int cap = kDefaultGroundCap) {
    std::map<Vertex, Vertex> tau2;
    std::set<Vertex> used1;
    for (const auto& [v1, v2] : matches) {
        if (!m1.verts.contains(v1) || !m2.verts.contains(v2))
            throw InvalidMapError("glue match references missing vertices");
        if (!used1.insert(v1).second || tau2.count(v2))
            throw InvalidMapError("glue matches must be injective on both sides");
        tau2[v2] = v1;
    }
    Vertex next = m1.max_vertex();
    std::vector<Vertex> result_verts = m1.verts.vertices();
    for (Vertex v : m2.verts.vertices()) { // ground order is ascending for complexes
        if (!tau2.count(v)) {
            tau2[v] = ++next;
            result_verts.push_back(next);
        }
    }

    GlueResult out;
    out.tau2 = tau2;
    out.complex.verts = GroundSet(result_verts, cap);
    const GroundSet& rg = out.complex.verts;

    auto map2 = [&](Subset s) {
        Subset r = 0;
        for (Vertex v : m2.verts.elements(s)) r |= rg.singleton(tau2.at(v));
        return r;
    };

    // First-factor masks stay valid: its vertices occupy the same positions.
    out.complex.edges = m1.edges;
    out.complex.second_edges = m1.second_edges;
    out.complex.relation = m1.relation;
    out.complex.second_relation = m1.second_relation;
    for (Subset e : m2.edges) out.complex.edges.insert(map2(e));
    for (Subset e : m2.second_edges) out.complex.second_edges.insert(map2(e));
    for (const auto& [a, b] : m2.relation)
        out.complex.relation.insert(ordered_pair(map2(a), map2(b)));
    for (const auto& [a, b] : m2.second_relation)
        out.complex.second_relation.insert(ordered_pair(map2(a), map2(b)));
    return out;
}

/**
 * Starred gluing: in addition to the plain gluing, every pair of edges
 * K1 ∈ E1, K2 ∈ E2 containing the glued label set contributes the
 * second-type edge τ1(K1) ∪ τ2(K2) and the relation pair (τ1(K1), τ2(K2)).
 */
inline GlueResult glue_star(const BHypergraph& m1, const BHypergraph& m2,
                            const std::vector<std::pair<Vertex, Vertex>>& matches,
                            int cap = kDefaultGroundCap) {
    GlueResult out = glue(m1, m2, matches, cap);
    const GroundSet& rg = out.complex.verts;

    Subset f1 = 0, f2 = 0;
    for (const auto& [v1, v2] : matches) {
        f1 |= m1.verts.singleton(v1);
        f2 |= m2.verts.singleton(v2);
    }
    auto map2 = [&](Subset s) {
        Subset r = 0;
        for (Vertex v : m2.verts.elements(s)) r |= rg.singleton(out.tau2.at(v));
        return r;
    };
    for (Subset k1 : m1.edges) {
        if (!subset_le(f1, k1)) continue;
        for (Subset k2 : m2.edges) {
            if (!subset_le(f2, k2)) continue;
            Subset t1 = k1, t2 = map2(k2);
            out.complex.edges.insert(t1 | t2);
            out.complex.second_edges.insert(t1 | t2);
            out.complex.add_relation(t1, t2, true);
        }
    }
    return out;
}

struct ReflectResult {
    BHypergraph complex;
    std::map<Vertex, Vertex> tau2; // restriction of the copy map to L
};

/**
 * Reflection r_{L,X}: starred gluing of M with its own sub-b-hypergraph on
 * the edge L, identified along X ⊆ L.
 */
inline ReflectResult reflect(const BHypergraph& m, Subset l, Subset x,
                             int cap = kDefaultGroundCap) {
    if (!m.has_edge(l)) throw NotAnEdgeError("reflection set " + m.verts.render(l) + " is not an edge");
    if (!subset_le(x, l))
        throw InvalidSubsetError("reflection base " + m.verts.render(x) + " is not contained in " +
                                 m.verts.render(l));
    BHypergraph n = sub_on(m, l, cap);
    std::vector<std::pair<Vertex, Vertex>> matches;
    for (Vertex v : m.verts.elements(x)) matches.push_back({v, v});
    GlueResult g = glue_star(m, n, matches, cap);
    ReflectResult out;
    out.complex = std::move(g.complex);
    for (Vertex v : m.verts.elements(l)) out.tau2[v] = g.tau2.at(v);
    return out;
}

struct TraceStep {
    std::vector<Vertex> L;
    std::vector<Vertex> X;
    bool operator==(const TraceStep& o) const { return L == o.L && X == o.X; }
};

/** The arity-k complex with a single edge on {1,...,k} and empty relation. */
inline BHypergraph trivial_bhypergraph(int k, int cap = kDefaultGroundCap) {
    if (k < 2) throw ArityError("arity must be at least 2");
    BHypergraph m;
    m.verts = range_ground(k, cap);
    m.edges.insert(m.verts.full());
    return m;
}

/**
 * A complex built from the trivial arity-k complex by a sequence of
 * reflections.  The trace is the construction recipe; the base is its
 * replay.  Vertex naming is deterministic, so replaying the trace always
 * reproduces the base bit for bit.
 */
class ReflectionComplex {
public:
    ReflectionComplex() = default;

    explicit ReflectionComplex(int arity, int cap = kDefaultGroundCap)
        : arity_(arity), cap_(cap), base_(trivial_bhypergraph(arity, cap)) {}

    ReflectionComplex(int arity, const std::vector<TraceStep>& trace, int cap = kDefaultGroundCap)
        : ReflectionComplex(arity, cap) {
        for (const auto& s : trace) reflect_step(s.L, s.X);
    }

    int arity() const { return arity_; }
    int cap() const { return cap_; }
    const std::vector<TraceStep>& trace() const { return trace_; }
    const BHypergraph& base() const { return base_; }
    const GroundSet& ground() const { return base_.verts; }

    FrameGraph frame() const { return frame_of(base_, arity_, cap_); }

    /** Applies r_{L,X} and records the step. Returns the copy map on L. */
    std::map<Vertex, Vertex> reflect_step(const std::vector<Vertex>& l_ids,
                                          const std::vector<Vertex>& x_ids) {
        Subset l = base_.verts.subset(l_ids);
        Subset x = base_.verts.subset(x_ids);
        ReflectResult r = reflect(base_, l, x, cap_);
        base_ = std::move(r.complex);
        trace_.push_back({l_ids, x_ids});
        return r.tau2;
    }

    bool operator==(const ReflectionComplex& o) const {
        return arity_ == o.arity_ && trace_ == o.trace_ && base_ == o.base_;
    }

private:
    int arity_ = 2;
    int cap_ = kDefaultGroundCap;
    std::vector<TraceStep> trace_;
    BHypergraph base_;
};

struct ReducibilityReport {
    bool reducible = true;
    Subset failing = 0; // first edge (in mask order) without a valid split
    // For every edge larger than k, the chosen split (A1, A2).
    std::map<Subset, SubsetPair> splits;
};

/**
 * Checks k-reducibility: the whole vertex set is an edge and every edge
 * larger than k splits into two strictly smaller edges whose pair is in the
 * relation.  Splits are chosen smallest-first for determinism.
 */
inline ReducibilityReport is_k_reducible(const BHypergraph& m, int k) {
    ReducibilityReport rep;
    if (!m.has_edge(m.verts.full())) {
        rep.reducible = false;
        rep.failing = m.verts.full();
        return rep;
    }
    for (Subset t : m.edges) {
        if (popcount(t) <= k) continue;
        std::optional<SubsetPair> best;
        for (const auto& [a, b] : m.relation) {
            if ((a | b) != t) continue;
            if (!m.has_edge(a) || !m.has_edge(b)) continue;
            if (popcount(a) >= popcount(t) || popcount(b) >= popcount(t)) continue;
            if (!best || ordered_pair(a, b) < *best) best = ordered_pair(a, b);
        }
        if (!best) {
            rep.reducible = false;
            rep.failing = t;
            return rep;
        }
        rep.splits[t] = *best;
    }
    return rep;
}

} // namespace sidcert

#endif
