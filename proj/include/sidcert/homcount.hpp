#ifndef SIDCERT_HOMCOUNT_HPP
#define SIDCERT_HOMCOUNT_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "sidcert/graph.hpp"
#include "sidcert/measures.hpp"

namespace sidcert {

struct HomomorphismSet {
    FrameGraph source;
    TargetGraph target;
    std::vector<Tuple> maps; // aligned to the source ground's vertex order
};

namespace detail {

/** Static vertex order: placed-neighbor preference, then degree, then id. */
inline std::vector<int> hom_order(const FrameGraph& h) {
    const int n = h.ground().size();
    std::vector<int> order;
    std::vector<bool> placed(n, false);
    auto related = [&](int a, int b) {
        for (Subset e : h.edges())
            if ((e >> a & 1) && (e >> b & 1)) return true;
        return false;
    };
    for (int step = 0; step < n; ++step) {
        int best = -1, best_nbrs = -1, best_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (placed[v]) continue;
            int nbrs = 0;
            for (int u = 0; u < n; ++u)
                if (placed[u] && related(u, v)) ++nbrs;
            int deg = h.degree(v);
            if (nbrs > best_nbrs || (nbrs == best_nbrs && deg > best_deg)) {
                best = v;
                best_nbrs = nbrs;
                best_deg = deg;
            }
        }
        order.push_back(best);
        placed[best] = true;
    }
    return order;
}

template <typename Visit>
inline Integer hom_backtrack(const FrameGraph& h, const TargetGraph& g, Visit&& visit) {
    if (h.arity() != g.arity()) throw ArityError("pattern and target arities differ");
    const int n = h.ground().size();
    const int tn = g.size();
    std::vector<int> order = hom_order(h);
    std::vector<int> pos_in_order(n);
    for (int i = 0; i < n; ++i) pos_in_order[order[i]] = i;

    // Edges become checkable at the order position placing their last vertex.
    std::vector<std::vector<std::vector<int>>> ready(n + 1);
    for (Subset e : h.edges()) {
        int last = 0;
        std::vector<int> bits = bit_positions(e);
        for (int b : bits) last = std::max(last, pos_in_order[b]);
        ready[last].push_back(bits);
    }

    Integer count = 0;
    Tuple val(n, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            ++count;
            visit(val);
            return;
        }
        int v = order[i];
        for (int c = 0; c < tn; ++c) {
            val[v] = static_cast<uint8_t>(c);
            bool ok = true;
            for (const auto& bits : ready[i]) {
                std::vector<int> image;
                for (int b : bits) image.push_back(val[b]);
                std::sort(image.begin(), image.end());
                if (std::adjacent_find(image.begin(), image.end()) != image.end() ||
                    !g.has_edge_sorted(image)) {
                    ok = false;
                    break;
                }
            }
            if (ok) rec(i + 1);
        }
    };
    if (n > 0 && tn > 0) rec(0);
    if (n == 0) count = 1;
    return count;
}

} // namespace detail

inline Integer count_hom(const FrameGraph& h, const TargetGraph& g,
                         const Integer& cap = Integer(10000000)) {
    if (int_pow(Integer(g.size()), h.ground().size()) > cap)
        throw SizeCapError("homomorphism search space exceeds the cap");
    return detail::hom_backtrack(h, g, [](const Tuple&) {});
}

/** Oracle twin of count_hom: checks every map in V(G)^{V(H)} directly. */
inline Integer count_hom_naive(const FrameGraph& h, const TargetGraph& g,
                               const Integer& cap = Integer(1000000)) {
    if (h.arity() != g.arity()) throw ArityError("pattern and target arities differ");
    const int n = h.ground().size();
    const int tn = g.size();
    if (int_pow(Integer(tn), n) > cap)
        throw SizeCapError("naive enumeration space exceeds the cap");
    std::vector<std::vector<int>> edges;
    for (Subset e : h.edges()) edges.push_back(bit_positions(e));
    Integer count = 0;
    Tuple val(n, 0);
    while (true) {
        bool ok = true;
        for (const auto& bits : edges) {
            std::vector<int> image;
            for (int b : bits) image.push_back(val[b]);
            std::sort(image.begin(), image.end());
            if (std::adjacent_find(image.begin(), image.end()) != image.end() ||
                !g.has_edge_sorted(image)) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
        int i = n - 1;
        while (i >= 0 && val[i] == tn - 1) val[i--] = 0;
        if (i < 0) break;
        ++val[i];
    }
    return n == 0 ? Integer(1) : count;
}

inline HomomorphismSet enumerate_hom(const FrameGraph& h, const TargetGraph& g,
                                     const Integer& cap = Integer(10000000)) {
    if (int_pow(Integer(g.size()), h.ground().size()) > cap)
        throw SizeCapError("homomorphism search space exceeds the cap");
    HomomorphismSet out{h, g, {}};
    detail::hom_backtrack(h, g, [&](const Tuple& t) { out.maps.push_back(t); });
    std::sort(out.maps.begin(), out.maps.end());
    return out;
}

/** Exact homomorphism density t(H,G) = |Hom(H,G)| / |V(G)|^{|V(H)|}. */
inline Rational density(const FrameGraph& h, const TargetGraph& g,
                        const Integer& cap = Integer(10000000)) {
    Integer homs = count_hom(h, g, cap);
    return Rational(homs) / Rational(int_pow(Integer(g.size()), h.ground().size()));
}

struct SidorenkoReport {
    Rational lhs{0};   // t(H,G)
    Rational rhs{0};   // t(e,G)^{|E(H)|}
    Integer homs{0};
    bool holds = false;
};

/** Exact comparison t(H,G) ≥ t(e,G)^{|E(H)|}. */
inline SidorenkoReport sidorenko_check(const FrameGraph& h, const TargetGraph& g,
                                       const Integer& cap = Integer(10000000)) {
    if (g.edge_count() == 0) throw EmptyTargetError("target has no edges");
    SidorenkoReport rep;
    rep.homs = count_hom(h, g, cap);
    rep.lhs = Rational(rep.homs) / Rational(int_pow(Integer(g.size()), h.ground().size()));
    Rational te = Rational(factorial(g.arity()) * g.edge_count()) /
                  Rational(int_pow(Integer(g.size()), g.arity()));
    rep.rhs = rat_pow(te, static_cast<unsigned long>(h.edge_count()));
    rep.holds = rep.lhs >= rep.rhs;
    return rep;
}

/** D(tau(H,G)) = −log t(H,G). */
inline EntropyReport d_tau(const FrameGraph& h, const TargetGraph& g,
                           const Integer& cap = Integer(10000000)) {
    Integer homs = count_hom(h, g, cap);
    if (homs == 0) throw SupportError("no homomorphisms; entropy undefined");
    EntropyReport rep;
    rep.value = log_rational(Rational(int_pow(Integer(g.size()), h.ground().size())) /
                             Rational(homs));
    rep.terms = homs.convert_to<size_t>();
    return rep;
}

struct SweepViolation {
    int n = 0;
    std::string edges;
    Rational lhs{0}, rhs{0};
};

struct SweepReport {
    size_t targets = 0;
    std::map<int, size_t> per_size;
    std::vector<SweepViolation> violations;
};

namespace detail {

inline std::vector<std::vector<int>> edge_slots(int n, int k) {
    std::vector<std::vector<int>> slots;
    std::vector<int> idx(k);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            slots.push_back(idx);
            return;
        }
        for (int v = start; v < n; ++v) {
            idx[depth] = v;
            rec(v + 1, depth + 1);
        }
    };
    rec(0, 0);
    return slots;
}

} // namespace detail

/**
 * Runs sidorenko_check against every labeled target with at least one
 * edge on k..max_vertices vertices, exhaustively over edge subsets.
 */
inline SweepReport sweep_targets(const FrameGraph& h, int max_vertices,
                                 const Integer& cap = Integer(10000000)) {
    const int k = h.arity();
    if (max_vertices < k) throw ParameterError("sweep needs at least arity-many vertices");
    SweepReport rep;
    for (int n = k; n <= max_vertices; ++n) {
        std::vector<std::vector<int>> slots = detail::edge_slots(n, k);
        if (slots.size() > 20) throw SizeCapError("sweep edge-slot count exceeds 20");
        std::vector<std::string> labels;
        for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
        for (Subset mask = 1; mask < (Subset(1) << slots.size()); ++mask) {
            std::vector<std::vector<std::string>> edges;
            for (size_t j = 0; j < slots.size(); ++j) {
                if (!(mask >> j & 1)) continue;
                std::vector<std::string> e;
                for (int v : slots[j]) e.push_back(labels[v]);
                edges.push_back(e);
            }
            TargetGraph g(labels, k, edges);
            SidorenkoReport r = sidorenko_check(h, g, cap);
            ++rep.targets;
            ++rep.per_size[n];
            if (!r.holds) {
                std::string desc;
                for (const auto& e : edges) {
                    desc += desc.empty() ? "{" : " {";
                    for (size_t i = 0; i < e.size(); ++i)
                        desc += (i ? "," : "") + e[i];
                    desc += "}";
                }
                rep.violations.push_back({n, desc, r.lhs, r.rhs});
            }
        }
    }
    return rep;
}

/**
 * Seeded random nonempty k-uniform targets on n labeled vertices.  Edge sets
 * are drawn as uniform nonzero subsets of the edge slots, derived directly
 * from the raw generator stream so runs reproduce exactly for a given seed.
 */
inline std::vector<TargetGraph> random_targets(int n, int k, int count, std::uint64_t seed) {
    if (n < k) throw ParameterError("targets need at least arity-many vertices");
    std::vector<std::vector<int>> slots = detail::edge_slots(n, k);
    if (slots.size() > 20) throw SizeCapError("edge-slot count exceeds 20");
    std::vector<std::string> labels;
    for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    std::mt19937_64 rng(seed);
    std::vector<TargetGraph> out;
    const std::uint64_t top = (std::uint64_t(1) << slots.size()) - 1;
    for (int c = 0; c < count; ++c) {
        std::uint64_t mask = 1 + rng() % top;
        std::vector<std::vector<std::string>> edges;
        for (size_t j = 0; j < slots.size(); ++j) {
            if (!(mask >> j & 1)) continue;
            std::vector<std::string> e;
            for (int v : slots[j]) e.push_back(labels[v]);
            edges.push_back(e);
        }
        out.emplace_back(labels, k, edges);
    }
    return out;
}

/** Disjoint union with the second ground shifted past the first. */
inline FrameGraph disjoint_union(const FrameGraph& a, const FrameGraph& b,
                                 int cap = kDefaultGroundCap) {
    if (a.arity() != b.arity()) throw ArityError("disjoint union needs equal arities");
    const int na = a.ground().size();
    std::vector<Vertex> verts;
    for (int i = 1; i <= na + b.ground().size(); ++i) verts.push_back(i);
    GroundSet gs(verts, cap);
    std::set<Subset> es;
    for (Subset e : a.edges()) es.insert(e);
    for (Subset e : b.edges()) es.insert(e << na);
    return FrameGraph(std::move(gs), a.arity(), std::move(es), cap);
}

/** Backtracking isomorphism test for small frames (≤ 24 vertices). */
inline bool is_isomorphic(const FrameGraph& a, const FrameGraph& b) {
    const int n = a.ground().size();
    if (n != b.ground().size() || a.arity() != b.arity() || a.edge_count() != b.edge_count())
        return false;
    if (n > 24) throw SizeCapError("isomorphism test is capped at 24 vertices");
    std::vector<int> da(n), db(n);
    for (int i = 0; i < n; ++i) da[i] = a.degree(i);
    for (int i = 0; i < n; ++i) db[i] = b.degree(i);
    {
        auto sa = da, sb = db;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }
    std::vector<int> order = detail::hom_order(a);
    std::vector<int> pos_in_order(n);
    for (int i = 0; i < n; ++i) pos_in_order[order[i]] = i;
    std::vector<std::vector<Subset>> ready(n);
    for (Subset e : a.edges()) {
        int last = 0;
        for (int bpos : bit_positions(e)) last = std::max(last, pos_in_order[bpos]);
        ready[last].push_back(e);
    }
    std::vector<int> image(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(int)> rec = [&](int i) {
        if (i == n) return true;
        int v = order[i];
        for (int c = 0; c < n; ++c) {
            if (used[c] || db[c] != da[v]) continue;
            image[v] = c;
            bool ok = true;
            for (Subset e : ready[i]) {
                Subset img = 0;
                for (int bpos : bit_positions(e)) img |= Subset(1) << image[bpos];
                if (!b.edges().count(img)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                used[c] = true;
                if (rec(i + 1)) return true;
                used[c] = false;
            }
        }
        image[v] = -1;
        return false;
    };
    return rec(0);
}

} // namespace sidcert

#endif
