#ifndef SIDCERT_GRAPH_HPP
#define SIDCERT_GRAPH_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "sidcert/setfun.hpp"

namespace sidcert {

/**
 * A k-uniform hypergraph over an integer-labelled ground set.  For k = 2 this
 * is an ordinary graph.  Frames of complexes, trees fed to the catalog, and
 * the left-hand side of homomorphism counts are all FrameGraphs.
 */
class FrameGraph {
public:
    FrameGraph() = default;

    FrameGraph(GroundSet verts, int arity, std::set<Subset> edges, int cap = kDefaultGroundCap)
        : verts_(std::move(verts)), arity_(arity), edges_(std::move(edges)) {
        (void)cap;
        if (arity_ < 2) throw ArityError("frame arity must be at least 2");
        for (Subset e : edges_) {
            verts_.check_mask(e);
            if (popcount(e) != arity_)
                throw InvalidSubsetError("edge " + verts_.render(e) + " does not have arity " +
                                         std::to_string(arity_));
        }
    }

    const GroundSet& ground() const { return verts_; }
    int arity() const { return arity_; }
    const std::set<Subset>& edges() const { return edges_; }
    int vertex_count() const { return verts_.size(); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    bool has_edge(Subset e) const { return edges_.count(e) != 0; }

    /** Edges contained in X (the spanned sub-hypergraph). */
    std::vector<Subset> edges_within(Subset x) const {
        std::vector<Subset> out;
        for (Subset e : edges_)
            if (subset_le(e, x)) out.push_back(e);
        return out;
    }

    /** Degree of the vertex at bit position b within the spanned part on X. */
    int degree_within(int bit, Subset x) const {
        int d = 0;
        Subset v = Subset(1) << bit;
        for (Subset e : edges_)
            if ((e & v) && subset_le(e, x)) ++d;
        return d;
    }

    int degree(int bit) const { return degree_within(bit, verts_.full()); }

    bool operator==(const FrameGraph& o) const {
        return verts_ == o.verts_ && arity_ == o.arity_ && edges_ == o.edges_;
    }

private:
    GroundSet verts_;
    int arity_ = 2;
    std::set<Subset> edges_;
};

inline FrameGraph make_graph(const std::vector<Vertex>& vs,
                             const std::vector<std::vector<Vertex>>& edges, int arity = 2,
                             int cap = kDefaultGroundCap) {
    GroundSet g(vs, cap);
    std::set<Subset> es;
    for (const auto& e : edges) es.insert(g.subset(e));
    return FrameGraph(std::move(g), arity, std::move(es), cap);
}

namespace detail {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    /** Returns false if x and y were already connected. */
    bool unite(int x, int y) {
        int a = find(x), b = find(y);
        if (a == b) return false;
        parent_[a] = b;
        return true;
    }

private:
    std::vector<int> parent_;
};

} // namespace detail

/** Whether the graph spanned on X is a forest (2-uniform frames only). */
inline bool spans_forest(const FrameGraph& h, Subset x) {
    if (h.arity() != 2) throw ArityError("spans_forest requires a 2-uniform frame");
    detail::UnionFind uf(h.ground().size());
    for (Subset e : h.edges_within(x)) {
        auto bits = bit_positions(e);
        if (!uf.unite(bits[0], bits[1])) return false;
    }
    return true;
}

inline bool is_connected(const FrameGraph& h) {
    int n = h.ground().size();
    if (n == 0) return true;
    detail::UnionFind uf(n);
    int comps = n;
    for (Subset e : h.edges()) {
        auto bits = bit_positions(e);
        for (size_t i = 1; i < bits.size(); ++i)
            if (uf.unite(bits[0], bits[i])) --comps;
    }
    return comps == 1;
}

inline bool is_tree(const FrameGraph& h) {
    return h.arity() == 2 && is_connected(h) &&
           h.edge_count() == h.vertex_count() - 1;
}

/**
 * Proper 2-coloring with colors {1,2}.  The smallest vertex of every
 * component receives color 1, which makes the coloring vector
 * lexicographically smallest among proper colorings.
 */
inline std::map<Vertex, int> bipartition(const FrameGraph& h) {
    if (h.arity() != 2) throw ArityError("bipartition requires a 2-uniform frame");
    int n = h.ground().size();
    std::vector<int> color(n, 0);
    std::vector<std::vector<int>> adj(n);
    for (Subset e : h.edges()) {
        auto bits = bit_positions(e);
        adj[bits[0]].push_back(bits[1]);
        adj[bits[1]].push_back(bits[0]);
    }
    for (int start = 0; start < n; ++start) {
        if (color[start] != 0) continue;
        color[start] = 1;
        std::vector<int> queue{start};
        while (!queue.empty()) {
            int u = queue.back();
            queue.pop_back();
            for (int w : adj[u]) {
                if (color[w] == 0) {
                    color[w] = 3 - color[u];
                    queue.push_back(w);
                } else if (color[w] == color[u]) {
                    throw BipartitionError("frame is not bipartite");
                }
            }
        }
    }
    std::map<Vertex, int> out;
    for (int i = 0; i < n; ++i) out[h.ground().vertex_at(i)] = color[i];
    return out;
}

/**
 * s_H(X) = -1_X + Σ_{e ∈ E(F)} 1_e where F is the part of H spanned on X.
 */
inline SetFunction s_vector(const FrameGraph& h, Subset x) {
    SetFunction f(h.ground());
    f.add(x, -1);
    for (Subset e : h.edges_within(x)) f.add(e, 1);
    return f;
}

/**
 * h_H(X) = -1_X + Σ_{e ∈ E(F)} 1_e - Σ_{v ∈ X} (deg_F(v) - 1)·1_{v} with F
 * the graph spanned on X and degrees taken in F.  2-uniform frames only.
 */
inline SetFunction h_vector(const FrameGraph& h, Subset x) {
    if (h.arity() != 2) throw ArityError("h_vector requires a 2-uniform frame");
    SetFunction f(h.ground());
    f.add(x, -1);
    for (Subset e : h.edges_within(x)) f.add(e, 1);
    for (int b : bit_positions(x)) {
        int d = h.degree_within(b, x);
        f.add(Subset(1) << b, Rational(1 - d));
    }
    return f;
}

/**
 * Box product of two graphs.  Vertices are numbered 1..n1*n2 with the pair
 * (i-th of a, j-th of b) at position (i-1)*n2 + j.
 */
inline FrameGraph box_product(const FrameGraph& a, const FrameGraph& b, int cap = kDefaultGroundCap) {
    if (a.arity() != 2 || b.arity() != 2) throw ArityError("box_product requires 2-uniform graphs");
    int n1 = a.vertex_count(), n2 = b.vertex_count();
    auto id = [&](int i, int j) { return Vertex(i * n2 + j + 1); };
    std::vector<Vertex> vs;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) vs.push_back(id(i, j));
    GroundSet g(vs, cap);
    std::set<Subset> es;
    for (Subset e : a.edges()) {
        auto bits = bit_positions(e);
        for (int j = 0; j < n2; ++j)
            es.insert(g.subset({id(bits[0], j), id(bits[1], j)}));
    }
    for (Subset e : b.edges()) {
        auto bits = bit_positions(e);
        for (int i = 0; i < n1; ++i)
            es.insert(g.subset({id(i, bits[0]), id(i, bits[1])}));
    }
    return FrameGraph(std::move(g), 2, std::move(es), cap);
}

/**
 * A finite target structure for homomorphism counts and measures.  Labels
 * are free-form strings; edges are k-element subsets given by label.
 */
class TargetGraph {
public:
    TargetGraph() = default;

    TargetGraph(std::vector<std::string> labels, int arity,
                const std::vector<std::vector<std::string>>& edges)
        : labels_(std::move(labels)), arity_(arity) {
        if (arity_ < 2) throw ArityError("target arity must be at least 2");
        for (size_t i = 0; i < labels_.size(); ++i) {
            if (!index_.emplace(labels_[i], static_cast<int>(i)).second)
                throw ParameterError("duplicate target vertex label \"" + labels_[i] + "\"");
        }
        for (const auto& e : edges) {
            std::vector<int> idx;
            for (const auto& l : e) idx.push_back(index_of(l));
            std::sort(idx.begin(), idx.end());
            if (static_cast<int>(idx.size()) != arity_ ||
                std::adjacent_find(idx.begin(), idx.end()) != idx.end())
                throw InvalidSubsetError("target edge must consist of " + std::to_string(arity_) +
                                         " distinct vertices");
            edges_.insert(idx);
        }
        if (arity_ == 2) {
            adj_.assign(labels_.size(), 0);
            for (const auto& e : edges_) {
                adj_[e[0]] |= Subset(1) << e[1];
                adj_[e[1]] |= Subset(1) << e[0];
            }
        }
    }

    int size() const { return static_cast<int>(labels_.size()); }
    int arity() const { return arity_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::set<std::vector<int>>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    int index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end())
            throw InvalidSubsetError("label \"" + label + "\" not a target vertex");
        return it->second;
    }

    bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1; }

    bool has_edge_sorted(const std::vector<int>& sorted_idx) const {
        return edges_.count(sorted_idx) != 0;
    }

    bool operator==(const TargetGraph& o) const {
        return labels_ == o.labels_ && arity_ == o.arity_ && edges_ == o.edges_;
    }

private:
    std::vector<std::string> labels_;
    int arity_ = 2;
    std::set<std::vector<int>> edges_;
    std::map<std::string, int> index_;
    std::vector<Subset> adj_;
};

/** Target path with vertices "1".."n" (or given labels) in a row. */
inline TargetGraph target_path(const std::vector<std::string>& labels) {
    std::vector<std::vector<std::string>> edges;
    for (size_t i = 0; i + 1 < labels.size(); ++i) edges.push_back({labels[i], labels[i + 1]});
    return TargetGraph(labels, 2, edges);
}

} // namespace sidcert

#endif
