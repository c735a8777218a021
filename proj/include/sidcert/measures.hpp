#ifndef SIDCERT_MEASURES_HPP
#define SIDCERT_MEASURES_HPP

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sidcert/bhyper.hpp"
#include "sidcert/graph.hpp"
#include "sidcert/rational.hpp"

namespace sidcert {

using Tuple = std::vector<uint8_t>; // indices into the target's vertex order

/**
 * An exact probability distribution on V(G)^S for a finite coordinate set
 * S.  Coordinates are named (usually by complex vertices), kept strictly
 * increasing; masses are positive rationals summing to exactly one.
 */
struct DistTable {
    TargetGraph target;
    std::vector<Vertex> coords;
    std::map<Tuple, Rational> probs;

    void validate() const {
        if (!std::is_sorted(coords.begin(), coords.end()) ||
            std::adjacent_find(coords.begin(), coords.end()) != coords.end())
            throw ParameterError("distribution coordinates must be strictly increasing");
        Rational total = 0;
        for (const auto& [t, p] : probs) {
            if (t.size() != coords.size())
                throw ParameterError("distribution tuple arity mismatch");
            for (uint8_t v : t)
                if (v >= target.size()) throw ParameterError("tuple entry outside the target");
            if (p <= 0) throw ParameterError("distribution masses must be positive");
            total += p;
        }
        if (total != 1) throw ParameterError("distribution masses must sum to 1");
    }

    int pos_of(Vertex c) const {
        auto it = std::lower_bound(coords.begin(), coords.end(), c);
        if (it == coords.end() || *it != c)
            throw ParameterError("coordinate " + std::to_string(c) + " not in distribution");
        return static_cast<int>(it - coords.begin());
    }
};

/** Positional equality of two tables, ignoring coordinate names. */
inline bool same_distribution(const DistTable& a, const DistTable& b) {
    return a.coords.size() == b.coords.size() && a.probs == b.probs;
}

/** Uniform distribution on ordered edge tuples: all k! orders of each edge. */
inline DistTable uniform_edge(const TargetGraph& g) {
    if (g.edge_count() == 0) throw EmptyTargetError("target has no edges");
    DistTable out;
    out.target = g;
    for (int i = 1; i <= g.arity(); ++i) out.coords.push_back(i);
    Rational mass(1);
    mass /= Rational(Integer(g.edge_count()) * factorial(g.arity()));
    for (const auto& e : g.edges()) {
        std::vector<int> perm = e;
        do {
            Tuple t(perm.begin(), perm.end());
            out.probs[t] = mass;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    out.validate();
    return out;
}

/** Degree-proportional vertex distribution: the vertex marginal of an edge. */
inline DistTable kappa(const TargetGraph& g) {
    if (g.edge_count() == 0) throw EmptyTargetError("target has no edges");
    DistTable out;
    out.target = g;
    out.coords = {1};
    Integer denom = Integer(g.arity()) * g.edge_count();
    for (int v = 0; v < g.size(); ++v) {
        Integer deg = 0;
        for (const auto& e : g.edges()) deg += std::count(e.begin(), e.end(), v);
        if (deg != 0) out.probs[{static_cast<uint8_t>(v)}] = Rational(deg) / Rational(denom);
    }
    out.validate();
    return out;
}

/**
 * Pushforward along tuple restriction.  `beta` names the result's
 * coordinates and maps each injectively to a source coordinate.
 */
inline DistTable marginal(const DistTable& mu, const std::map<Vertex, Vertex>& beta) {
    std::set<Vertex> imaged;
    std::vector<int> src_pos;
    DistTable out;
    out.target = mu.target;
    for (const auto& [label, coord] : beta) {
        if (!imaged.insert(coord).second)
            throw InvalidMapError("marginal map must be injective");
        out.coords.push_back(label);
        src_pos.push_back(mu.pos_of(coord));
    }
    for (const auto& [t, p] : mu.probs) {
        Tuple r(src_pos.size());
        for (size_t i = 0; i < src_pos.size(); ++i) r[i] = t[src_pos[i]];
        out.probs[r] += p;
    }
    out.validate();
    return out;
}

/** Marginal keeping the named coordinates under their own names. */
inline DistTable marginal(const DistTable& mu, const std::vector<Vertex>& keep) {
    std::map<Vertex, Vertex> beta;
    for (Vertex c : keep) beta[c] = c;
    return marginal(mu, beta);
}

/**
 * Conditionally independent coupling of two tables over a joint vertex
 * factor: beta1 and beta2 carry a common label set into the two
 * coordinate sets, and the glued marginals must agree exactly.  Unglued
 * coordinates of the second table get fresh names past the first's.
 */
inline DistTable ci_coupling(const DistTable& m1, const DistTable& m2,
                             const std::map<Vertex, Vertex>& beta1,
                             const std::map<Vertex, Vertex>& beta2) {
    if (!(m1.target == m2.target)) throw ParameterError("couplings need a common target");
    {
        auto it1 = beta1.begin();
        auto it2 = beta2.begin();
        for (; it1 != beta1.end() && it2 != beta2.end(); ++it1, ++it2)
            if (it1->first != it2->first)
                throw InvalidMapError("glue maps must share one label set");
        if (it1 != beta1.end() || it2 != beta2.end())
            throw InvalidMapError("glue maps must share one label set");
    }
    DistTable shared = marginal(m1, beta1);
    if (!same_distribution(shared, marginal(m2, beta2)))
        throw JointFactorMismatchError("glued marginals differ; not a joint vertex factor");

    std::vector<int> key1; // positions of the glued coords in m1, label order
    for (const auto& [label, coord] : beta1) key1.push_back(m1.pos_of(coord));
    std::set<Vertex> glued2;
    for (const auto& [label, coord] : beta2) glued2.insert(coord);

    DistTable out;
    out.target = m1.target;
    out.coords = m1.coords;
    Vertex next = out.coords.empty() ? 1 : out.coords.back() + 1;
    std::vector<int> fresh_src; // positions in m2 of the unglued coords
    for (size_t i = 0; i < m2.coords.size(); ++i)
        if (!glued2.count(m2.coords[i])) {
            out.coords.push_back(next++);
            fresh_src.push_back(static_cast<int>(i));
        }

    std::vector<int> key2;
    for (const auto& [label, coord] : beta2) key2.push_back(m2.pos_of(coord));
    std::map<Tuple, std::vector<const std::pair<const Tuple, Rational>*>> by_key;
    for (const auto& entry : m2.probs) {
        Tuple k(key2.size());
        for (size_t i = 0; i < key2.size(); ++i) k[i] = entry.first[key2[i]];
        by_key[k].push_back(&entry);
    }
    for (const auto& [t1, p1] : m1.probs) {
        Tuple k(key1.size());
        for (size_t i = 0; i < key1.size(); ++i) k[i] = t1[key1[i]];
        const Rational& denom = shared.probs.at(k);
        auto group = by_key.find(k);
        if (group == by_key.end()) continue;
        for (const auto* entry : group->second) {
            Tuple t = t1;
            for (int sp : fresh_src) t.push_back(entry->first[sp]);
            out.probs[t] = p1 * entry->second / denom;
        }
    }
    out.validate();
    return out;
}

struct EntropyReport {
    HighFloat value{0};
    size_t terms = 0;
};

/** Relative entropy D(mu || nu); requires matching coordinates. */
inline EntropyReport relative_entropy(const DistTable& mu, const DistTable& nu) {
    if (mu.coords != nu.coords || !(mu.target == nu.target))
        throw ParameterError("relative entropy needs a common coordinate space");
    EntropyReport rep;
    for (const auto& [t, p] : mu.probs) {
        auto it = nu.probs.find(t);
        if (it == nu.probs.end())
            throw SupportError("support is not absolutely continuous w.r.t. the reference");
        rep.value += to_float(p) * log_rational(p / it->second);
        ++rep.terms;
    }
    return rep;
}

/** D(mu) against the uniform distribution on V(G)^S. */
inline EntropyReport entropy_D(const DistTable& mu) {
    EntropyReport rep;
    Integer space = int_pow(Integer(mu.target.size()), static_cast<int>(mu.coords.size()));
    for (const auto& [t, p] : mu.probs) {
        rep.value += to_float(p) * log_rational(p * Rational(space));
        ++rep.terms;
    }
    return rep;
}

/** Entropy drop of a uniform random edge: D_e = log(n^k / (k! |E|)). */
inline HighFloat d_edge(const TargetGraph& g) {
    if (g.edge_count() == 0) throw EmptyTargetError("target has no edges");
    Rational r = Rational(int_pow(Integer(g.size()), g.arity())) /
                 Rational(factorial(g.arity()) * g.edge_count());
    return log_rational(r);
}

/** Entropy drop of the degree-proportional vertex distribution. */
inline HighFloat d_vertex(const TargetGraph& g) { return entropy_D(kappa(g)).value; }

/**
 * The coupling-structure measure of a reflection complex: starts from a
 * uniform random edge and, per trace step (L, X), couples the current
 * table with a fresh copy of its own L-marginal over the X-marginal.
 * The result is supported in Hom of the frame, with every frame-edge
 * marginal equal to the uniform edge.
 */
inline DistTable evaluate_scheme(const ReflectionComplex& m, const TargetGraph& g,
                                 const Integer& state_cap = Integer(10000000)) {
    if (g.arity() != m.arity())
        throw ArityError("scheme evaluation needs matching arities");
    if (int_pow(Integer(g.size()), m.ground().size()) > state_cap)
        throw SizeCapError("scheme state space exceeds the configured cap");

    DistTable nu = uniform_edge(g);
    ReflectionComplex rc(m.arity(), m.cap());
    for (const auto& step : m.trace()) {
        std::map<Vertex, Vertex> cm = rc.reflect_step(step.L, step.X);
        DistTable nuL = marginal(nu, step.L);
        DistTable nuX = marginal(nu, step.X);

        std::vector<int> x_in_nu, x_in_L;
        for (Vertex v : nuX.coords) {
            x_in_nu.push_back(nu.pos_of(v));
            x_in_L.push_back(nuL.pos_of(v));
        }
        std::vector<std::pair<Vertex, int>> fresh; // (fresh coord, position in nuL)
        for (const auto& [src, dst] : cm)
            if (src != dst) fresh.emplace_back(dst, nuL.pos_of(src));
        std::sort(fresh.begin(), fresh.end());

        std::map<Tuple, std::vector<const std::pair<const Tuple, Rational>*>> by_key;
        for (const auto& entry : nuL.probs) {
            Tuple k(x_in_L.size());
            for (size_t i = 0; i < x_in_L.size(); ++i) k[i] = entry.first[x_in_L[i]];
            by_key[k].push_back(&entry);
        }

        DistTable next;
        next.target = nu.target;
        next.coords = nu.coords;
        for (const auto& [f, sp] : fresh) next.coords.push_back(f);
        for (const auto& [t, p] : nu.probs) {
            Tuple k(x_in_nu.size());
            for (size_t i = 0; i < x_in_nu.size(); ++i) k[i] = t[x_in_nu[i]];
            const Rational& denom = nuX.probs.at(k);
            for (const auto* entry : by_key.at(k)) {
                Tuple t2 = t;
                for (const auto& [f, sp] : fresh) t2.push_back(entry->first[sp]);
                next.probs[t2] = p * entry->second / denom;
                if (Integer(next.probs.size()) > state_cap)
                    throw SizeCapError("scheme support exceeds the configured cap");
            }
        }
        nu = std::move(next);
    }
    nu.validate();
    return nu;
}

/**
 * Exact conditional-independence test for a coordinate pair (A, B):
 * mu_{A∪B}(x) · mu_{A∩B}(x) = mu_A(x) · mu_B(x) wherever either side is
 * positive.
 */
inline bool check_ci_pair(const DistTable& mu, const std::vector<Vertex>& a,
                          const std::vector<Vertex>& b) {
    std::set<Vertex> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::vector<Vertex> both;
    std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(both));
    std::vector<Vertex> meet;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(meet));

    DistTable mU = marginal(mu, both);
    DistTable mA = marginal(mu, std::vector<Vertex>(sa.begin(), sa.end()));
    DistTable mB = marginal(mu, std::vector<Vertex>(sb.begin(), sb.end()));
    DistTable mI = marginal(mu, meet);

    std::vector<int> a_meet, b_meet; // positions of the meet inside A and B
    for (Vertex v : meet) {
        a_meet.push_back(mA.pos_of(v));
        b_meet.push_back(mB.pos_of(v));
    }
    std::map<Tuple, std::vector<const std::pair<const Tuple, Rational>*>> a_by_key;
    for (const auto& entry : mA.probs) {
        Tuple k(a_meet.size());
        for (size_t i = 0; i < a_meet.size(); ++i) k[i] = entry.first[a_meet[i]];
        a_by_key[k].push_back(&entry);
    }
    std::vector<int> u_from_a(mA.coords.size()), u_from_b(mB.coords.size());
    for (size_t i = 0; i < mA.coords.size(); ++i) u_from_a[i] = mU.pos_of(mA.coords[i]);
    for (size_t i = 0; i < mB.coords.size(); ++i) u_from_b[i] = mU.pos_of(mB.coords[i]);

    for (const auto& [tb, pb] : mB.probs) {
        Tuple k(b_meet.size());
        for (size_t i = 0; i < b_meet.size(); ++i) k[i] = tb[b_meet[i]];
        auto group = a_by_key.find(k);
        if (group == a_by_key.end()) continue;
        const Rational& pm = mI.probs.at(k);
        for (const auto* ea : group->second) {
            Tuple tu(mU.coords.size());
            for (size_t i = 0; i < ea->first.size(); ++i) tu[u_from_a[i]] = ea->first[i];
            for (size_t i = 0; i < tb.size(); ++i) tu[u_from_b[i]] = tb[i];
            auto it = mU.probs.find(tu);
            Rational pu = it == mU.probs.end() ? Rational(0) : it->second;
            if (pu * pm != ea->second * pb) return false;
        }
    }
    return true;
}

struct WitnessReport {
    HighFloat d_mu{0}, bound{0}, d_e{0}, d_v{0};
    bool ok = false;
};

/**
 * Witness test: a measure supported on Hom(H,G) with D(mu) ≤ |E|·D_e
 * certifies the correlation inequality for H in G.
 */
inline WitnessReport witness_check(const DistTable& mu, const FrameGraph& h,
                                   const TargetGraph& g, double tol = 1e-9) {
    if (mu.coords != h.ground().vertices())
        throw ParameterError("measure coordinates must be the frame's vertices");
    if (!(mu.target == g)) throw ParameterError("measure target mismatch");
    std::vector<std::vector<int>> edge_pos;
    for (Subset e : h.edges_within(h.ground().full())) {
        std::vector<int> pos;
        for (int b : bit_positions(e)) pos.push_back(b);
        edge_pos.push_back(pos);
    }
    for (const auto& [t, p] : mu.probs) {
        for (const auto& pos : edge_pos) {
            std::vector<int> image;
            for (int b : pos) image.push_back(t[b]);
            std::sort(image.begin(), image.end());
            if (std::adjacent_find(image.begin(), image.end()) != image.end() ||
                !g.has_edge_sorted(image))
                throw SupportError("measure support leaves Hom of the frame");
        }
    }
    WitnessReport rep;
    rep.d_mu = entropy_D(mu).value;
    rep.d_e = d_edge(g);
    rep.d_v = d_vertex(g);
    rep.bound = HighFloat(h.edge_count()) * rep.d_e;
    rep.ok = rep.d_mu <= rep.bound + HighFloat(tol);
    return rep;
}

struct ForestBoundReport {
    HighFloat d_mu{0}, bound{0};
    bool ok = false;
};

/**
 * Entropy lower bound for measures with uniform-edge marginals on a
 * forest: D(mu) ≥ |E|·D_e − (2|E| − |V|)·D_v.
 */
inline ForestBoundReport forest_bound_check(const DistTable& mu, const FrameGraph& h,
                                            double tol = 1e-9) {
    if (h.arity() != 2 || !spans_forest(h, h.ground().full()))
        throw NotAForestError("forest bound needs a 2-uniform forest frame");
    if (mu.coords != h.ground().vertices())
        throw ParameterError("measure coordinates must be the frame's vertices");
    DistTable tau = uniform_edge(mu.target);
    DistTable kap = kappa(mu.target);
    for (Subset e : h.edges_within(h.ground().full())) {
        if (!same_distribution(marginal(mu, h.ground().elements(e)), tau))
            throw JointFactorMismatchError("an edge marginal is not the uniform edge");
    }
    for (Vertex v : h.ground().vertices()) {
        if (h.degree(h.ground().index_of(v)) == 0) continue;
        if (!same_distribution(marginal(mu, std::vector<Vertex>{v}), kap))
            throw JointFactorMismatchError("a vertex marginal is not degree-proportional");
    }
    ForestBoundReport rep;
    rep.d_mu = entropy_D(mu).value;
    int ecount = h.edge_count();
    int vcount = h.ground().size();
    rep.bound = HighFloat(ecount) * d_edge(mu.target) -
                HighFloat(2 * ecount - vcount) * d_vertex(mu.target);
    rep.ok = rep.d_mu >= rep.bound - HighFloat(tol);
    return rep;
}

struct SupermodularityReport {
    bool ci_ok = true, pairs_ok = true, s_ok = true;
    HighFloat max_ci_abs{0}, min_pair{0}, s_value{0};
    size_t pairs_checked = 0;
};

/**
 * Numeric probe of the supermodularity mechanism: with g(B) the entropy
 * drop of the scheme measure's B-marginal, relation pairs must pair to
 * zero, arbitrary pairs nonnegatively, and the pairing with the frame's
 * structure vector must be nonnegative.
 */
inline SupermodularityReport supermodularity_probe(const ReflectionComplex& m,
                                                   const TargetGraph& g, int samples = 256,
                                                   double tol = 1e-9,
                                                   const Integer& state_cap = Integer(10000000)) {
    const int n = m.ground().size();
    if (n > 16) throw SizeCapError("supermodularity probe is capped at 16 coordinates");
    DistTable mu = evaluate_scheme(m, g, state_cap);
    Integer tsize(g.size());

    std::vector<HighFloat> gv(size_t(1) << n);
    for (Subset mask = 0; mask < (Subset(1) << n); ++mask) {
        std::vector<int> pos = bit_positions(mask);
        std::map<Tuple, Rational> acc;
        for (const auto& [t, p] : mu.probs) {
            Tuple r(pos.size());
            for (size_t i = 0; i < pos.size(); ++i) r[i] = t[pos[i]];
            acc[r] += p;
        }
        HighFloat d{0};
        Integer space = int_pow(tsize, static_cast<int>(pos.size()));
        for (const auto& [t, p] : acc) d += to_float(p) * log_rational(p * Rational(space));
        gv[mask] = d;
    }
    auto pairing = [&](Subset a, Subset b) { return gv[a | b] - gv[a] - gv[b] + gv[a & b]; };

    SupermodularityReport rep;
    HighFloat eps(tol);
    for (const auto& [a, b] : m.base().relation) {
        HighFloat v = pairing(a, b);
        if (abs(v) > rep.max_ci_abs) rep.max_ci_abs = abs(v);
    }
    rep.ci_ok = rep.max_ci_abs <= eps;

    auto consider = [&](Subset a, Subset b) {
        if (subset_le(a, b) || subset_le(b, a)) return;
        HighFloat v = pairing(a, b);
        if (rep.pairs_checked == 0 || v < rep.min_pair) rep.min_pair = v;
        ++rep.pairs_checked;
    };
    if (n <= 8) {
        Subset top = m.ground().full();
        for (Subset a = 1; a <= top; ++a)
            for (Subset b = a + 1; b <= top; ++b) consider(a, b);
    } else {
        std::mt19937_64 rng(12345);
        std::uniform_int_distribution<Subset> dist(1, m.ground().full());
        for (int i = 0; i < samples; ++i) consider(dist(rng), dist(rng));
    }
    rep.pairs_ok = rep.pairs_checked == 0 || rep.min_pair >= -eps;

    SetFunction s = s_vector(m.frame(), m.ground().full());
    for (const auto& [mask, c] : s.entries()) rep.s_value += to_float(c) * gv[mask];
    rep.s_ok = rep.s_value >= -eps;
    return rep;
}

} // namespace sidcert

#endif
