#ifndef SIDCERT_CERTIFY_HPP
#define SIDCERT_CERTIFY_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sidcert/bhyper.hpp"
#include "sidcert/lp.hpp"
#include "sidcert/setfun.hpp"

namespace sidcert {

inline constexpr int kFullModeCap = 10;       // 4^|V| cone generators
inline constexpr int kRestrictedModeCap = 16; // pruned generators

/**
 * Membership of a target in  W + Q_V  where W is spanned by t-vectors of
 * the ci pairs and difference vectors 1_A - 1_B of the iso pairs, and Q_V
 * is the line through 1_emptyset plus the cone of all t_{A,B} and 1_A.
 */
struct MembershipProblem {
    GroundSet ground;
    SetFunction target;
    std::set<SubsetPair> ci_pairs;
    std::set<SubsetPair> iso_pairs;
};

struct Certificate {
    SetFunction target;
    std::map<SubsetPair, Rational> subspace_t;   // free coefficients, pairs in W
    std::map<SubsetPair, Rational> subspace_iso; // free coefficients on 1_A - 1_B
    Rational line{0};                            // free coefficient on 1_emptyset
    std::map<SubsetPair, Rational> cone_pairs;   // nonnegative, t_{A,B}
    std::map<Subset, Rational> cone_indicators;  // nonnegative, 1_A

    SetFunction recombine(const GroundSet& g) const {
        SetFunction out(g);
        out.add(0, line);
        for (const auto& [p, c] : subspace_t) out += c * t_vector(g, p.first, p.second);
        for (const auto& [p, c] : subspace_iso) {
            out.add(p.first, c);
            out.add(p.second, -c);
        }
        for (const auto& [p, c] : cone_pairs) out += c * t_vector(g, p.first, p.second);
        for (const auto& [a, c] : cone_indicators) out.add(a, c);
        return out;
    }

    void merge(const Certificate& o) {
        line += o.line;
        for (const auto& [p, c] : o.subspace_t) subspace_t[p] += c;
        for (const auto& [p, c] : o.subspace_iso) subspace_iso[p] += c;
        for (const auto& [p, c] : o.cone_pairs) cone_pairs[p] += c;
        for (const auto& [a, c] : o.cone_indicators) cone_indicators[a] += c;
    }

    void prune_zeros() {
        auto drop = [](auto& m) {
            for (auto it = m.begin(); it != m.end();)
                it = (it->second == 0) ? m.erase(it) : std::next(it);
        };
        drop(subspace_t);
        drop(subspace_iso);
        drop(cone_pairs);
        drop(cone_indicators);
    }

    /** Applies a vertex relabeling to every generator subset. */
    Certificate relabeled(const GroundSet& old_g, const GroundSet& new_g,
                          const std::map<Vertex, Vertex>& map) const {
        auto rem = [&](Subset s) {
            Subset r = 0;
            for (Vertex v : old_g.elements(s)) r |= new_g.singleton(map.at(v));
            return r;
        };
        Certificate out;
        out.line = line;
        for (const auto& [p, c] : subspace_t)
            out.subspace_t[ordered_pair(rem(p.first), rem(p.second))] += c;
        for (const auto& [p, c] : subspace_iso)
            out.subspace_iso[ordered_pair(rem(p.first), rem(p.second))] += c;
        for (const auto& [p, c] : cone_pairs)
            out.cone_pairs[ordered_pair(rem(p.first), rem(p.second))] += c;
        for (const auto& [a, c] : cone_indicators) out.cone_indicators[rem(a)] += c;
        return out;
    }
};

struct FarkasRefutation {
    SetFunction functional; // the separating y
};

enum class MemberStatus { Certified, Refuted, Inconclusive };

struct MembershipOutcome {
    MemberStatus status = MemberStatus::Inconclusive;
    std::optional<Certificate> certificate;
    std::optional<FarkasRefutation> refutation;
};

enum class SolveMode { Restricted, Full };

namespace detail {

struct ColRef {
    enum Kind { SubspaceT, SubspaceIso, Line, ConePair, ConeInd } kind;
    Subset a = 0, b = 0;
};

inline bool nested(Subset a, Subset b) { return subset_le(a, b) || subset_le(b, a); }

} // namespace detail

/**
 * Exact LP decision of target ∈ W + Q_V.  Full mode enumerates one row per
 * subset and every cone generator; its failure yields a Farkas refutation.
 * Restricted mode draws cone generators from a universe of subsets (by
 * default the sets named by the problem itself) and is sound but
 * incomplete: failure reports Inconclusive.
 */
inline MembershipOutcome decide_membership(const MembershipProblem& p, SolveMode mode,
                                           const std::set<Subset>& universe = {},
                                           int full_cap = kFullModeCap,
                                           int restricted_cap = kRestrictedModeCap) {
    const GroundSet& g = p.ground;
    const int n = g.size();
    if (mode == SolveMode::Full && n > full_cap)
        throw SizeCapError("full membership mode is capped at " + std::to_string(full_cap) +
                           " vertices (got " + std::to_string(n) + ")");
    if (mode == SolveMode::Restricted && n > restricted_cap)
        throw SizeCapError("restricted membership mode is capped at " +
                           std::to_string(restricted_cap) + " vertices");

    std::vector<detail::ColRef> refs;
    std::vector<LPColumn> cols;
    std::map<Subset, int> row_of; // used in restricted mode
    std::vector<Subset> row_mask;

    auto row = [&](Subset s) {
        if (mode == SolveMode::Full) return static_cast<int>(s);
        auto it = row_of.find(s);
        if (it != row_of.end()) return it->second;
        int r = static_cast<int>(row_mask.size());
        row_of[s] = r;
        row_mask.push_back(s);
        return r;
    };
    auto push_fn = [&](const SetFunction& f, detail::ColRef ref, bool nonneg) {
        LPColumn c;
        c.nonneg = nonneg;
        for (const auto& [s, v] : f.entries()) c.entries[row(s)] = v;
        refs.push_back(ref);
        cols.push_back(std::move(c));
    };
    auto push_pair = [&](Subset a, Subset b, detail::ColRef::Kind k, bool nonneg) {
        push_fn(t_vector(g, a, b), {k, a, b}, nonneg);
    };

    for (const auto& [a, b] : p.ci_pairs) push_pair(a, b, detail::ColRef::SubspaceT, false);
    for (const auto& [a, b] : p.iso_pairs) {
        SetFunction f(g);
        f.add(a, 1);
        f.add(b, -1);
        push_fn(f, {detail::ColRef::SubspaceIso, a, b}, false);
    }
    push_fn(indicator(g, 0), {detail::ColRef::Line, 0, 0}, false);

    if (mode == SolveMode::Full) {
        const Subset top = g.full();
        for (Subset a = 1; a <= top; ++a) {
            for (Subset b = a + 1; b <= top; ++b)
                if (!detail::nested(a, b)) push_pair(a, b, detail::ColRef::ConePair, true);
            push_fn(indicator(g, a), {detail::ColRef::ConeInd, a, 0}, true);
        }
    } else {
        std::set<Subset> uni = universe;
        if (uni.empty()) {
            uni.insert(0);
            uni.insert(g.full());
            for (int i = 0; i < n; ++i) uni.insert(Subset(1) << i);
            auto feed = [&](const std::set<SubsetPair>& ps) {
                for (const auto& [a, b] : ps) {
                    uni.insert(a);
                    uni.insert(b);
                    uni.insert(a | b);
                    uni.insert(a & b);
                }
            };
            feed(p.ci_pairs);
            feed(p.iso_pairs);
            for (const auto& [s, v] : p.target.entries()) uni.insert(s);
        }
        std::vector<Subset> u(uni.begin(), uni.end());
        for (size_t i = 0; i < u.size(); ++i)
            for (size_t j = i + 1; j < u.size(); ++j)
                if (!detail::nested(u[i], u[j]))
                    push_pair(u[i], u[j], detail::ColRef::ConePair, true);
        for (Subset a : u)
            if (a != 0) push_fn(indicator(g, a), {detail::ColRef::ConeInd, a, 0}, true);
    }

    int nrows;
    std::vector<Rational> rhs;
    if (mode == SolveMode::Full) {
        nrows = 1 << n;
        rhs.assign(nrows, Rational(0));
        for (const auto& [s, v] : p.target.entries()) rhs[static_cast<int>(s)] = v;
    } else {
        for (const auto& [s, v] : p.target.entries()) row(s);
        nrows = static_cast<int>(row_mask.size());
        rhs.assign(nrows, Rational(0));
        for (const auto& [s, v] : p.target.entries()) rhs[row_of.at(s)] = v;
    }

    FeasibilityResult lp = solve_exact_feasibility(nrows, cols, rhs);
    MembershipOutcome out;
    if (lp.feasible) {
        Certificate cert;
        cert.target = p.target;
        for (size_t j = 0; j < cols.size(); ++j) {
            const Rational& v = lp.x[j];
            if (v == 0) continue;
            const auto& r = refs[j];
            switch (r.kind) {
                case detail::ColRef::SubspaceT: cert.subspace_t[ordered_pair(r.a, r.b)] += v; break;
                case detail::ColRef::SubspaceIso:
                    cert.subspace_iso[ordered_pair(r.a, r.b)] += v;
                    break;
                case detail::ColRef::Line: cert.line += v; break;
                case detail::ColRef::ConePair: cert.cone_pairs[ordered_pair(r.a, r.b)] += v; break;
                case detail::ColRef::ConeInd: cert.cone_indicators[r.a] += v; break;
            }
        }
        cert.prune_zeros();
        out.status = MemberStatus::Certified;
        out.certificate = std::move(cert);
        return out;
    }
    if (mode == SolveMode::Restricted) {
        out.status = MemberStatus::Inconclusive;
        return out;
    }
    FarkasRefutation ref{SetFunction(g)};
    for (int i = 0; i < nrows; ++i)
        if (lp.farkas[i] != 0) ref.functional.add(static_cast<Subset>(i), lp.farkas[i]);
    out.status = MemberStatus::Refuted;
    out.refutation = std::move(ref);
    return out;
}

/**
 * Exact recombination check.  Structural violations (generators outside
 * the problem's subspace families or outside the ground set) throw; a
 * numerically wrong certificate or a negative cone coefficient returns
 * false.
 */
inline bool verify_certificate(const MembershipProblem& p, const Certificate& c) {
    const GroundSet& g = p.ground;
    auto in_ground = [&](Subset s) {
        if (!subset_le(s, g.full()))
            throw MalformedCertificateError("certificate generator outside the ground set");
    };
    for (const auto& [pr, v] : c.subspace_t) {
        in_ground(pr.first | pr.second);
        if (!p.ci_pairs.count(pr) && !p.ci_pairs.count({pr.second, pr.first}))
            throw MalformedCertificateError("subspace t-generator " + g.render(pr.first) + "," +
                                            g.render(pr.second) + " is not a declared pair");
    }
    for (const auto& [pr, v] : c.subspace_iso) {
        in_ground(pr.first | pr.second);
        if (!p.iso_pairs.count(pr) && !p.iso_pairs.count({pr.second, pr.first}))
            throw MalformedCertificateError("subspace iso-generator is not a declared pair");
    }
    for (const auto& [pr, v] : c.cone_pairs) {
        in_ground(pr.first | pr.second);
        if (v < 0) return false;
    }
    for (const auto& [a, v] : c.cone_indicators) {
        in_ground(a);
        if (v < 0) return false;
    }
    if (!(c.target == p.target)) return false;
    return c.recombine(g) == p.target;
}

/**
 * Checks the Farkas conditions exhaustively over all subsets: y(emptyset)=0,
 * y(A) >= 0 for all A, <y, t_{A,B}> >= 0 for every non-nested pair,
 * orthogonality to the declared subspace, and <y, target> < 0.
 */
inline bool verify_refutation(const MembershipProblem& p, const FarkasRefutation& r,
                              int full_cap = kFullModeCap) {
    const GroundSet& g = p.ground;
    const int n = g.size();
    if (n > full_cap) throw SizeCapError("refutation verification is capped like full mode");
    const Subset top = g.full();
    std::vector<Rational> y(size_t(top) + 1, Rational(0));
    for (const auto& [s, v] : r.functional.entries()) y[size_t(s)] = v;
    auto pair_val = [&](Subset a, Subset b) { return y[a | b] - y[a] - y[b] + y[a & b]; };

    if (y[0] != 0) return false;
    for (Subset a = 1; a <= top; ++a)
        if (y[a] < 0) return false;
    for (Subset a = 1; a <= top; ++a)
        for (Subset b = a + 1; b <= top; ++b)
            if (!detail::nested(a, b) && pair_val(a, b) < 0) return false;
    for (const auto& [a, b] : p.ci_pairs)
        if (pair_val(a, b) != 0) return false;
    for (const auto& [a, b] : p.iso_pairs)
        if (y[a] != y[b]) return false;
    return inner(r.functional, p.target) < 0;
}

// ---------------------------------------------------------------------------
// Constructive certificates for the reflection classes.
// ---------------------------------------------------------------------------

/** Per-step replay data for a trace, in the final ground's coordinates. */
struct TraceReplay {
    std::vector<BHypergraph> stages;                // stages[t] = after t steps
    std::vector<std::map<Vertex, Vertex>> copy_maps; // per step, on L
    std::vector<Subset> l_masks, x_masks;           // per step
};

inline TraceReplay replay_trace(const ReflectionComplex& m) {
    TraceReplay out;
    ReflectionComplex rc(m.arity(), m.cap());
    out.stages.push_back(rc.base());
    const GroundSet final_ground = m.ground();
    for (const auto& step : m.trace()) {
        Subset l = rc.ground().subset(step.L);
        Subset x = rc.ground().subset(step.X);
        out.copy_maps.push_back(rc.reflect_step(step.L, step.X));
        // Ground sets only append fresh vertices, so masks are stable.
        out.l_masks.push_back(l);
        out.x_masks.push_back(x);
        out.stages.push_back(rc.base());
    }
    if (!(rc.base() == m.base()))
        throw ParseError("trace replay failed to reproduce the complex");
    (void)final_ground;
    return out;
}

struct ClassReport {
    bool in_class = true;
    int failing_step = -1; // 0-based trace index
};

/** Frame of the complex at an intermediate stage, over the final ground. */
inline FrameGraph stage_frame(const TraceReplay& r, const GroundSet& final_ground, int t,
                              int arity) {
    std::set<Subset> es;
    for (Subset e : r.stages[t].edges)
        if (popcount(e) == arity) es.insert(e);
    // Re-encode onto the final ground (masks are already compatible).
    return FrameGraph(final_ground, arity, std::move(es), kHardGroundCap);
}

/** Every step's X spans a forest in the frame current at that step. */
inline ClassReport in_class_C(const ReflectionComplex& m) {
    if (m.arity() != 2) throw ArityError("the forest class is defined for arity 2");
    TraceReplay r = replay_trace(m);
    for (size_t t = 0; t < m.trace().size(); ++t) {
        FrameGraph f = stage_frame(r, m.ground(), static_cast<int>(t), 2);
        if (!spans_forest(f, r.x_masks[t])) return {false, static_cast<int>(t)};
    }
    return {};
}

/** Every step's X spans pairwise disjoint k-edges in the current frame. */
inline ClassReport in_class_Ck(const ReflectionComplex& m) {
    TraceReplay r = replay_trace(m);
    for (size_t t = 0; t < m.trace().size(); ++t) {
        FrameGraph f = stage_frame(r, m.ground(), static_cast<int>(t), m.arity());
        std::vector<Subset> spanned = f.edges_within(r.x_masks[t]);
        Subset seen = 0;
        for (Subset e : spanned) {
            if (e & seen) return {false, static_cast<int>(t)};
            seen |= e;
        }
    }
    return {};
}

/** Cone-and-line decomposition of a negated structure vector. */
struct ConeDecomposition {
    Rational line{0};
    std::map<SubsetPair, Rational> cone_pairs;
    std::map<Subset, Rational> cone_indicators;
};

namespace detail {

/** Components of the subgraph spanned on x, sorted by lowest vertex bit. */
inline std::vector<Subset> spanned_components(const FrameGraph& f, Subset x) {
    const int n = f.ground().size();
    UnionFind uf(n);
    for (Subset e : f.edges_within(x)) {
        auto bits = bit_positions(e);
        for (size_t i = 1; i < bits.size(); ++i) uf.unite(bits[0], bits[i]);
    }
    std::map<int, Subset> comp;
    for (int b : bit_positions(x)) comp[uf.find(b)] |= Subset(1) << b;
    std::vector<Subset> out;
    for (const auto& [root, mask] : comp) out.push_back(mask);
    std::sort(out.begin(), out.end(),
              [](Subset a, Subset b) { return (a & -a) < (b & -b); });
    return out;
}

/** Chains component decompositions together: t-terms between prefixes. */
inline void merge_components(const std::vector<Subset>& comps, ConeDecomposition& d) {
    d.line += Rational(1 - static_cast<long>(comps.size()));
    Subset prefix = 0;
    for (Subset c : comps) {
        if (prefix != 0) d.cone_pairs[ordered_pair(prefix, c)] += 1;
        prefix |= c;
    }
}

} // namespace detail

/**
 * Writes -h_F(X) as a nonnegative combination of t-vectors plus a multiple
 * of 1_emptyset, for X spanning a forest: trees are peeled leaf by leaf
 * and components are chained with disjoint t-terms.
 */
inline ConeDecomposition forest_decomposition(const FrameGraph& f, Subset x) {
    if (!spans_forest(f, x))
        throw NotAForestError("set " + f.ground().render(x) + " does not span a forest");
    ConeDecomposition d;
    std::vector<Subset> comps = detail::spanned_components(f, x);
    for (Subset comp : comps) {
        Subset rem = comp;
        while (f.edges_within(rem).size() >= 2) {
            // Smallest leaf of the remaining tree.
            int leaf = -1, nbr = -1;
            for (int b : bit_positions(rem)) {
                if (f.degree_within(b, rem) == 1) {
                    leaf = b;
                    for (Subset e : f.edges_within(rem))
                        if (e & (Subset(1) << b)) nbr = bit_positions(e & ~(Subset(1) << b))[0];
                    break;
                }
            }
            Subset lv = Subset(1) << leaf;
            Subset edge = lv | (Subset(1) << nbr);
            d.cone_pairs[ordered_pair(rem & ~lv, edge)] += 1;
            rem &= ~lv;
        }
    }
    detail::merge_components(comps, d);
    return d;
}

/**
 * Same for -s_F(X) when the edges spanned on X are pairwise disjoint:
 * isolated points contribute indicator generators, blocks are chained.
 */
inline ConeDecomposition zk_decomposition(const FrameGraph& f, Subset x) {
    std::vector<Subset> edges = f.edges_within(x);
    Subset covered = 0;
    for (Subset e : edges) {
        if (e & covered)
            throw NotInClassError("set " + f.ground().render(x) +
                                  " spans intersecting edges");
        covered |= e;
    }
    ConeDecomposition d;
    std::vector<Subset> comps = edges;
    for (int b : bit_positions(x & ~covered)) {
        comps.push_back(Subset(1) << b);
        d.cone_indicators[Subset(1) << b] += 1;
    }
    std::sort(comps.begin(), comps.end(),
              [](Subset a, Subset b) { return (a & -a) < (b & -b); });
    detail::merge_components(comps, d);
    return d;
}

namespace detail {

enum class CertStyle { ThickH, WeakS };

/**
 * The inductive certificate for one edge of a staged complex.  An edge is
 * either inherited, a relabeled copy, or a second-type union K1 ∪ τ2(K2);
 * the last case contributes the relation pair, the two sub-certificates
 * and a decomposition of the negated vector on the gluing set.
 */
class TraceCertifier {
public:
    TraceCertifier(const ReflectionComplex& m, CertStyle style)
        : m_(m), style_(style), replay_(replay_trace(m)),
          frame_(frame_of(m.base(), m.arity(), m.cap())) {}

    Certificate run() {
        int last = static_cast<int>(m_.trace().size());
        Certificate c = cert_edge(last, m_.ground().full());
        c.target = style_ == CertStyle::ThickH ? h_vector(frame_, m_.ground().full())
                                               : s_vector(frame_, m_.ground().full());
        c.prune_zeros();
        return c;
    }

private:
    const ReflectionComplex& m_;
    CertStyle style_;
    TraceReplay replay_;
    FrameGraph frame_;
    std::map<std::pair<int, Subset>, Certificate> memo_;

    ConeDecomposition decompose(Subset x) const {
        return style_ == CertStyle::ThickH ? forest_decomposition(frame_, x)
                                           : zk_decomposition(frame_, x);
    }

    Certificate cert_edge(int t, Subset k) {
        auto key = std::make_pair(t, k);
        auto hit = memo_.find(key);
        if (hit != memo_.end()) return hit->second;
        Certificate out = compute(t, k);
        memo_[key] = out;
        return out;
    }

    Certificate compute(int t, Subset k) {
        if (t == 0) return {}; // single-edge base: the target vector is zero
        const BHypergraph& prev = replay_.stages[t - 1];
        if (prev.edges.count(k)) return cert_edge(t - 1, k);

        const std::map<Vertex, Vertex>& tau2 = replay_.copy_maps[t - 1];
        Subset l = replay_.l_masks[t - 1];
        Subset x = replay_.x_masks[t - 1];
        const GroundSet& g = m_.ground();

        // Copied edge: pull back through the copy map.
        std::map<Vertex, Vertex> inv;
        for (const auto& [from, to] : tau2) inv[to] = from;
        bool in_image = true;
        Subset pre = 0;
        for (Vertex v : g.elements(k)) {
            auto it = inv.find(v);
            if (it == inv.end()) { in_image = false; break; }
            pre |= g.singleton(it->second);
        }
        if (in_image && subset_le(pre, l) && prev.edges.count(pre))
            return cert_edge(t - 1, pre).relabeled(g, g, tau2);

        // Second-type edge: locate the smallest generating pair.
        auto map2 = [&](Subset s) {
            Subset r = 0;
            for (Vertex v : g.elements(s)) r |= g.singleton(tau2.at(v));
            return r;
        };
        std::optional<std::pair<Subset, Subset>> best; // (K1, K2) in prev
        for (Subset k1 : prev.edges) {
            if (!subset_le(x, k1)) continue;
            for (Subset k2 : prev.edges) {
                if (!subset_le(x, k2) || !subset_le(k2, l)) continue;
                if ((k1 | map2(k2)) != k) continue;
                if (!best || std::make_pair(k1, k2) < *best) best = {k1, k2};
            }
        }
        if (!best)
            throw MalformedCertificateError("edge " + g.render(k) +
                                            " has no generating relation pair");
        auto [k1, k2] = *best;
        Certificate out = cert_edge(t - 1, k1);
        out.merge(cert_edge(t - 1, k2).relabeled(g, g, tau2));
        ConeDecomposition d = decompose(x);
        out.line += d.line;
        for (const auto& [pr, c] : d.cone_pairs) out.cone_pairs[pr] += c;
        for (const auto& [a, c] : d.cone_indicators) out.cone_indicators[a] += c;
        out.subspace_t[ordered_pair(k1, map2(k2))] -= 1;
        return out;
    }
};

} // namespace detail

/**
 * Constructive thickness certificate (arity 2, forest-class trace): writes
 * h_H(V) over W_B + Q_V by replaying the construction, without an LP.
 */
inline Certificate thick_certificate_from_trace(const ReflectionComplex& m) {
    ClassReport rep = in_class_C(m);
    if (!rep.in_class)
        throw NotInClassError("trace step " + std::to_string(rep.failing_step) +
                              " reflects across a set that spans a cycle");
    return detail::TraceCertifier(m, detail::CertStyle::ThickH).run();
}

/** Constructive weak certificate (any arity, disjoint-edge-class trace). */
inline Certificate weak_certificate_from_trace(const ReflectionComplex& m) {
    ClassReport rep = in_class_Ck(m);
    if (!rep.in_class)
        throw NotInClassError("trace step " + std::to_string(rep.failing_step) +
                              " reflects across a set spanning intersecting edges");
    return detail::TraceCertifier(m, detail::CertStyle::WeakS).run();
}

inline Certificate certificate_from_trace(const ReflectionComplex& m) {
    return m.arity() == 2 ? thick_certificate_from_trace(m) : weak_certificate_from_trace(m);
}

/** Target and declared pairs for thickness of a complex. */
inline MembershipProblem thickness_problem(const ReflectionComplex& m) {
    if (m.arity() != 2) throw ArityError("thickness is defined for arity 2; use weak thickness");
    MembershipProblem p;
    p.ground = m.ground();
    p.target = h_vector(m.frame(), m.ground().full());
    p.ci_pairs = m.base().relation;
    return p;
}

inline MembershipProblem weak_thickness_problem(const ReflectionComplex& m) {
    MembershipProblem p;
    p.ground = m.ground();
    p.target = s_vector(m.frame(), m.ground().full());
    p.ci_pairs = m.base().relation;
    return p;
}

/** Subsets named along the construction: the restricted-mode universe. */
inline std::set<Subset> complex_universe(const ReflectionComplex& m, const SetFunction& target) {
    std::set<Subset> u;
    u.insert(0);
    u.insert(m.ground().full());
    for (int i = 0; i < m.ground().size(); ++i) u.insert(Subset(1) << i);
    for (Subset e : m.base().edges) u.insert(e);
    for (const auto& [a, b] : m.base().relation) {
        u.insert(a);
        u.insert(b);
        u.insert(a | b);
        u.insert(a & b);
    }
    for (const auto& [s, v] : target.entries()) u.insert(s);
    return u;
}

/**
 * Converts a thickness certificate into a weak one: the difference
 * s_H(V) - h_H(V) is the sum of (deg(v)-1)-weighted vertex indicators,
 * all nonnegative whenever the frame has no isolated vertex.
 */
inline Certificate weak_from_thick(const Certificate& thick, const FrameGraph& frame) {
    Certificate out = thick;
    const GroundSet& g = frame.ground();
    for (int b = 0; b < g.size(); ++b) {
        int d = frame.degree(b);
        if (d == 0)
            throw NotInClassError("frame has an isolated vertex; weak transport undefined");
        if (d > 1) out.cone_indicators[Subset(1) << b] += Rational(d - 1);
    }
    out.target = s_vector(frame, g.full());
    out.prune_zeros();
    return out;
}

/**
 * Thickness decision: constructive route first, then restricted LP, then
 * full LP when the ground is small enough.
 */
inline MembershipOutcome is_thick(const ReflectionComplex& m,
                                  std::optional<SolveMode> forced = std::nullopt) {
    MembershipProblem p = thickness_problem(m);
    if (!forced) {
        if (in_class_C(m).in_class) {
            MembershipOutcome out;
            out.status = MemberStatus::Certified;
            out.certificate = thick_certificate_from_trace(m);
            return out;
        }
        MembershipOutcome r =
            decide_membership(p, SolveMode::Restricted, complex_universe(m, p.target));
        if (r.status == MemberStatus::Certified) return r;
        if (m.ground().size() <= kFullModeCap) return decide_membership(p, SolveMode::Full);
        return r;
    }
    return decide_membership(p, *forced,
                             *forced == SolveMode::Restricted
                                 ? complex_universe(m, p.target)
                                 : std::set<Subset>{});
}

inline MembershipOutcome is_weakly_thick(const ReflectionComplex& m,
                                         std::optional<SolveMode> forced = std::nullopt) {
    MembershipProblem p = weak_thickness_problem(m);
    if (!forced) {
        if (in_class_Ck(m).in_class) {
            MembershipOutcome out;
            out.status = MemberStatus::Certified;
            out.certificate = weak_certificate_from_trace(m);
            return out;
        }
        if (m.arity() == 2 && in_class_C(m).in_class) {
            MembershipOutcome out;
            out.status = MemberStatus::Certified;
            out.certificate = weak_from_thick(thick_certificate_from_trace(m), m.frame());
            return out;
        }
        MembershipOutcome r =
            decide_membership(p, SolveMode::Restricted, complex_universe(m, p.target));
        if (r.status == MemberStatus::Certified) return r;
        if (m.ground().size() <= kFullModeCap) return decide_membership(p, SolveMode::Full);
        return r;
    }
    return decide_membership(p, *forced,
                             *forced == SolveMode::Restricted
                                 ? complex_universe(m, p.target)
                                 : std::set<Subset>{});
}

/**
 * Decides s_H(A) ∈ C_f + I_f + Q_V for a frame graph and declared
 * conditionally-independent and isomorphic pairs; a certificate implies
 * the Sidorenko inequality for the graph spanned on A.
 */
inline MembershipOutcome general_certificate(const GroundSet& g, const FrameGraph& h, Subset a,
                                             const std::set<SubsetPair>& ci_pairs,
                                             const std::set<SubsetPair>& iso_pairs,
                                             SolveMode mode = SolveMode::Full) {
    g.check_mask(a);
    MembershipProblem p;
    p.ground = g;
    p.target = s_vector(h, a);
    p.ci_pairs = ci_pairs;
    p.iso_pairs = iso_pairs;
    return decide_membership(p, mode);
}

} // namespace sidcert

#endif
