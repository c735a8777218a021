#ifndef SIDCERT_SUBDIVISION_HPP
#define SIDCERT_SUBDIVISION_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sidcert/certify.hpp"

namespace sidcert {

/**
 * Result of substituting a two-sided gadget complex for every edge of a
 * 2-uniform host complex.  Host vertices blow up to copies of one gadget
 * side, host edges to full gadget copies; `gamma` maps host subsets to
 * their blow-ups and `frame_embeddings` give, per host frame edge, the
 * embedding of the gadget's vertex set into the result.
 */
struct Subdivision {
    ReflectionComplex host;
    ReflectionComplex insert;
    Subset j1, j2; // gadget sides, as masks over the result's ground
    ReflectionComplex hat;
    std::map<Vertex, int> host_coloring; // construction-induced 2-coloring

    std::vector<std::map<Vertex, Vertex>> host_copy; // per host step
    std::vector<std::map<Vertex, Vertex>> hat_copy;  // per host step
    std::vector<Subset> host_prev_full;              // pre-step vertex mask
    std::vector<Subset> host_x;                      // per step, host coords
    std::map<Subset, std::map<Vertex, Vertex>> frame_embeddings;

    mutable std::map<std::pair<int, Subset>, Subset> gamma_memo;

    /** Blow-up of a host subset at a given host stage, as a hat mask. */
    Subset gamma_at(int stage, Subset s) const {
        if (stage == 0) {
            Subset out = 0;
            if (s & 1) out |= j1;
            if (s & 2) out |= j2;
            if (s == 3) out |= insert.ground().full();
            return out;
        }
        auto key = std::make_pair(stage, s);
        auto hit = gamma_memo.find(key);
        if (hit != gamma_memo.end()) return hit->second;
        const auto& tau2 = host_copy[stage - 1];
        const auto& hattau2 = hat_copy[stage - 1];
        const GroundSet& hg = host.ground();
        Subset old_part = s & host_prev_full[stage - 1];
        Subset copied_src = 0;
        for (const auto& [from, to] : tau2)
            if (s & hg.singleton(to)) copied_src |= hg.singleton(from);
        Subset out = gamma_at(stage - 1, old_part);
        Subset inner = gamma_at(stage - 1, copied_src);
        for (Vertex v : hat.ground().elements(inner)) out |= hat.ground().singleton(hattau2.at(v));
        gamma_memo[key] = out;
        return out;
    }

    Subset gamma(Subset host_mask) const {
        return gamma_at(static_cast<int>(host.trace().size()), host_mask);
    }
};

/**
 * Substitutes `insert` for every edge of the 2-uniform `host`, gluing
 * consecutive gadget copies along the sides j1 and j2.  The host's
 * construction is replayed on blown-up sets, so the result is again a
 * reflection complex.  An explicit host bipartition, when given, must
 * agree with the construction-induced coloring up to a global swap.
 */
inline Subdivision subdivide(const ReflectionComplex& host, const ReflectionComplex& insert,
                             const std::vector<Vertex>& j1_ids, const std::vector<Vertex>& j2_ids,
                             std::optional<std::map<Vertex, int>> bipart = std::nullopt,
                             int cap = kHardGroundCap) {
    if (host.arity() != 2 || insert.arity() != 2)
        throw ArityError("edge substitution requires 2-uniform complexes");
    Subset j1 = insert.ground().subset(j1_ids);
    Subset j2 = insert.ground().subset(j2_ids);
    if (j1 == 0 || j2 == 0) throw ParameterError("gadget sides must be nonempty");
    if (j1 & j2) throw DisjointnessError("gadget sides must be disjoint");

    // Construction-induced host coloring: base vertices 1,2 get the two
    // classes and every copy inherits its source's class.
    std::map<Vertex, int> color{{1, 1}, {2, 2}};
    {
        ReflectionComplex probe(2, host.cap());
        for (const auto& step : host.trace()) {
            auto cm = probe.reflect_step(step.L, step.X);
            for (const auto& [from, to] : cm)
                if (!color.count(to)) color[to] = color.at(from);
        }
    }
    if (bipart) {
        bool same = true, flipped = true;
        for (const auto& [v, c] : color) {
            auto it = bipart->find(v);
            if (it == bipart->end()) throw BipartitionError("bipartition misses a host vertex");
            same &= (it->second == c);
            flipped &= (it->second == 3 - c);
        }
        if (!same && !flipped)
            throw BipartitionError("bipartition disagrees with the host construction");
        if (flipped && !same) std::swap(j1, j2);
    }

    Subdivision sd{host,
                   insert,
                   j1,
                   j2,
                   ReflectionComplex(2, insert.trace(), cap),
                   color,
                   {},
                   {},
                   {},
                   {},
                   {},
                   {}};

    // Base gadget copy: the identity embedding for the host base edge.
    {
        std::map<Vertex, Vertex> id;
        for (Vertex v : insert.ground().vertices()) id[v] = v;
        sd.frame_embeddings[host.ground().subset({1, 2})] = std::move(id);
    }

    ReflectionComplex hprobe(2, host.cap());
    for (size_t i = 0; i < host.trace().size(); ++i) {
        const TraceStep& step = host.trace()[i];
        Subset prev_full = hprobe.ground().full();
        std::set<Subset> prev_frame;
        for (Subset e : hprobe.base().edges)
            if (popcount(e) == 2) prev_frame.insert(e);

        sd.host_prev_full.push_back(prev_full);
        sd.host_x.push_back(hprobe.ground().subset(step.X));
        sd.host_copy.push_back(hprobe.reflect_step(step.L, step.X));

        Subset gl = sd.gamma_at(static_cast<int>(i), host.ground().subset(step.L));
        Subset gx = sd.gamma_at(static_cast<int>(i), host.ground().subset(step.X));
        std::vector<Vertex> gl_ids = sd.hat.ground().elements(gl);
        std::vector<Vertex> gx_ids = sd.hat.ground().elements(gx);
        sd.hat_copy.push_back(sd.hat.reflect_step(gl_ids, gx_ids));

        // New frame edges are copies; compose their embeddings.
        const auto& tau2 = sd.host_copy.back();
        const auto& hattau2 = sd.hat_copy.back();
        for (Subset f : hprobe.base().edges) {
            if (popcount(f) != 2 || prev_frame.count(f)) continue;
            Subset pre = 0;
            for (const auto& [from, to] : tau2)
                if (f & host.ground().singleton(to)) pre |= host.ground().singleton(from);
            if (popcount(pre) != 2 || !prev_frame.count(pre))
                throw ParseError("unexpected non-copied frame edge during substitution");
            std::map<Vertex, Vertex> emb;
            for (const auto& [nv, hv] : sd.frame_embeddings.at(pre)) emb[nv] = hattau2.at(hv);
            sd.frame_embeddings[f] = std::move(emb);
        }
    }
    return sd;
}

/**
 * Transports thickness certificates of the host and the gadget to one for
 * the substituted complex: host generators are blown up (with a closure
 * correction when a blob exceeds the union of its parts), the gadget
 * certificate is embedded once per host frame edge, and shared side blobs
 * are compensated by forest decompositions weighted by degree minus one.
 * The result is recombined exactly before being returned.
 */
inline Certificate certificate_transport_subdivision(const Subdivision& sd,
                                                     const Certificate& cert_host,
                                                     const Certificate& cert_insert) {
    const GroundSet& hg = sd.hat.ground();
    FrameGraph host_frame = sd.host.frame();
    FrameGraph hat_frame = sd.hat.frame();
    if (!(cert_host.target == h_vector(host_frame, sd.host.ground().full())))
        throw MalformedCertificateError("host certificate does not target its structure vector");
    if (!(cert_insert.target == h_vector(sd.insert.frame(), sd.insert.ground().full())))
        throw MalformedCertificateError("gadget certificate does not target its structure vector");
    if (!cert_host.subspace_iso.empty() || !cert_insert.subspace_iso.empty())
        throw MalformedCertificateError("substitution transport does not take iso generators");

    Certificate out;
    out.line = cert_host.line;
    for (const auto& [a, c] : cert_host.cone_indicators) out.cone_indicators[sd.gamma(a)] += c;
    for (const auto& [p, c] : cert_host.subspace_t)
        out.subspace_t[ordered_pair(sd.gamma(p.first), sd.gamma(p.second))] += c;
    for (const auto& [p, c] : cert_host.cone_pairs) {
        Subset ga = sd.gamma(p.first), gb = sd.gamma(p.second);
        Subset gu = sd.gamma(p.first | p.second);
        if (!detail::nested(ga, gb)) out.cone_pairs[ordered_pair(ga, gb)] += c;
        Subset closure = gu & ~(ga | gb);
        if (closure) {
            out.cone_pairs[ordered_pair(closure, ga | gb)] += c;
            out.cone_indicators[closure] += c;
            out.line -= c;
        }
    }

    for (const auto& [edge, emb] : sd.frame_embeddings)
        out.merge(cert_insert.relabeled(sd.insert.ground(), hg, emb));

    for (Vertex v : sd.host.ground().vertices()) {
        int d = host_frame.degree(sd.host.ground().index_of(v));
        if (d <= 1) continue;
        ConeDecomposition dec =
            forest_decomposition(hat_frame, sd.gamma(sd.host.ground().singleton(v)));
        out.line += Rational(d - 1) * dec.line;
        for (const auto& [p, c] : dec.cone_pairs) out.cone_pairs[p] += Rational(d - 1) * c;
        for (const auto& [a, c] : dec.cone_indicators)
            out.cone_indicators[a] += Rational(d - 1) * c;
    }

    out.target = h_vector(hat_frame, hg.full());
    out.prune_zeros();
    if (!verify_certificate(thickness_problem(sd.hat), out))
        throw MalformedCertificateError("transported certificate failed recombination");
    return out;
}

} // namespace sidcert

#endif
