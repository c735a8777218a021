#pragma once

// JSON serialization for every artifact the CLI reads or writes: ground
// sets, set functions, complexes, raw b-hypergraphs, frame and target
// graphs, membership problems, certificates, refutations and distribution
// tables.  All rationals are "p/q" strings, all collections are emitted in
// their canonical sorted order, so output is reproducible byte for byte.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sidcert/bhyper.hpp"
#include "sidcert/certify.hpp"
#include "sidcert/error.hpp"
#include "sidcert/graph.hpp"
#include "sidcert/measures.hpp"
#include "sidcert/setfun.hpp"

namespace sidcert {
namespace io {

using json = nlohmann::ordered_json;

inline json vertices_to_json(const GroundSet& g) {
    json out = json::array();
    for (Vertex v : g.vertices()) out.push_back(v);
    return out;
}

inline GroundSet vertices_from_json(const json& j, int cap = kHardGroundCap) {
    if (!j.is_array()) throw ParseError("vertex list must be an array");
    std::vector<Vertex> verts;
    for (const auto& v : j) verts.push_back(v.get<Vertex>());
    return GroundSet(verts, cap);
}

inline json subset_to_json(const GroundSet& g, Subset s) {
    json out = json::array();
    for (Vertex v : g.elements(s)) out.push_back(v);
    return out;
}

inline Subset subset_from_json(const GroundSet& g, const json& j) {
    if (!j.is_array()) throw ParseError("subset must be an array of vertices");
    std::vector<Vertex> verts;
    for (const auto& v : j) verts.push_back(v.get<Vertex>());
    return g.subset(verts);
}

inline json setfun_to_json(const SetFunction& f) {
    json entries = json::array();
    for (const auto& [s, v] : f.entries())
        entries.push_back({{"subset", subset_to_json(f.ground(), s)},
                           {"value", format_rational(v)}});
    return {{"vertices", vertices_to_json(f.ground())}, {"entries", entries}};
}

inline SetFunction setfun_from_json(const json& j) {
    SetFunction f(vertices_from_json(j.at("vertices")));
    for (const auto& e : j.at("entries"))
        f.add(subset_from_json(f.ground(), e.at("subset")),
              parse_rational(e.at("value").get<std::string>()));
    return f;
}

inline json complex_to_json(const ReflectionComplex& m) {
    json trace = json::array();
    for (const auto& st : m.trace()) {
        json l = json::array(), x = json::array();
        for (Vertex v : st.L) l.push_back(v);
        for (Vertex v : st.X) x.push_back(v);
        trace.push_back({{"L", l}, {"X", x}});
    }
    return {{"arity", m.arity()}, {"trace", trace}};
}

inline ReflectionComplex complex_from_json(const json& j, int cap = kHardGroundCap) {
    if (!j.contains("arity")) throw ParseError("complex file needs an arity field");
    ReflectionComplex m(j.at("arity").get<int>(), cap);
    if (j.contains("trace")) {
        for (const auto& st : j.at("trace")) {
            std::vector<Vertex> l, x;
            for (const auto& v : st.at("L")) l.push_back(v.get<Vertex>());
            for (const auto& v : st.at("X")) x.push_back(v.get<Vertex>());
            m.reflect_step(l, x);
        }
    }
    return m;
}

inline json pair_set_to_json(const GroundSet& g, const std::set<SubsetPair>& pairs) {
    json out = json::array();
    for (const auto& [a, b] : pairs)
        out.push_back({{"A", subset_to_json(g, a)}, {"B", subset_to_json(g, b)}});
    return out;
}

inline std::set<SubsetPair> pair_set_from_json(const GroundSet& g, const json& j) {
    std::set<SubsetPair> out;
    for (const auto& p : j)
        out.insert(ordered_pair(subset_from_json(g, p.at("A")),
                                subset_from_json(g, p.at("B"))));
    return out;
}

inline json bhyper_to_json(const BHypergraph& m) {
    json edges = json::array();
    for (Subset e : m.edges) edges.push_back(subset_to_json(m.verts, e));
    json out = {{"vertices", vertices_to_json(m.verts)},
                {"edges", edges},
                {"relation", pair_set_to_json(m.verts, m.relation)}};
    if (!m.second_edges.empty()) {
        json se = json::array();
        for (Subset e : m.second_edges) se.push_back(subset_to_json(m.verts, e));
        out["second_edges"] = se;
    }
    if (!m.second_relation.empty())
        out["second_relation"] = pair_set_to_json(m.verts, m.second_relation);
    return out;
}

inline BHypergraph bhyper_from_json(const json& j, int cap = kHardGroundCap) {
    BHypergraph m;
    m.verts = vertices_from_json(j.at("vertices"), cap);
    for (const auto& e : j.at("edges")) m.edges.insert(subset_from_json(m.verts, e));
    if (j.contains("relation"))
        m.relation = pair_set_from_json(m.verts, j.at("relation"));
    if (j.contains("second_edges"))
        for (const auto& e : j.at("second_edges"))
            m.second_edges.insert(subset_from_json(m.verts, e));
    if (j.contains("second_relation"))
        m.second_relation = pair_set_from_json(m.verts, j.at("second_relation"));
    return m;
}

inline json framegraph_to_json(const FrameGraph& h) {
    json edges = json::array();
    for (Subset e : h.edges()) edges.push_back(subset_to_json(h.ground(), e));
    return {{"vertices", vertices_to_json(h.ground())},
            {"arity", h.arity()},
            {"edges", edges}};
}

inline FrameGraph framegraph_from_json(const json& j, int cap = kHardGroundCap) {
    GroundSet g = vertices_from_json(j.at("vertices"), cap);
    std::set<Subset> edges;
    for (const auto& e : j.at("edges")) edges.insert(subset_from_json(g, e));
    return FrameGraph(g, j.at("arity").get<int>(), edges, cap);
}

inline json target_to_json(const TargetGraph& g) {
    json labels = json::array();
    for (const auto& l : g.labels()) labels.push_back(l);
    json edges = json::array();
    for (const auto& e : g.edges()) {
        json row = json::array();
        for (int v : e) row.push_back(g.labels()[v]);
        edges.push_back(row);
    }
    return {{"labels", labels}, {"arity", g.arity()}, {"edges", edges}};
}

inline TargetGraph target_from_json(const json& j) {
    std::vector<std::string> labels;
    for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
    std::vector<std::vector<std::string>> edges;
    for (const auto& e : j.at("edges")) {
        std::vector<std::string> row;
        for (const auto& v : e) row.push_back(v.get<std::string>());
        edges.push_back(row);
    }
    return TargetGraph(labels, j.at("arity").get<int>(), edges);
}

inline json problem_to_json(const MembershipProblem& p) {
    return {{"vertices", vertices_to_json(p.ground)},
            {"target", setfun_to_json(p.target)},
            {"ci_pairs", pair_set_to_json(p.ground, p.ci_pairs)},
            {"iso_pairs", pair_set_to_json(p.ground, p.iso_pairs)}};
}

inline MembershipProblem problem_from_json(const json& j) {
    MembershipProblem p;
    p.ground = vertices_from_json(j.at("vertices"));
    p.target = setfun_from_json(j.at("target"));
    if (p.target.ground() != p.ground)
        throw ParseError("problem target must live on the problem ground set");
    p.ci_pairs = pair_set_from_json(p.ground, j.at("ci_pairs"));
    p.iso_pairs = pair_set_from_json(p.ground, j.at("iso_pairs"));
    return p;
}

inline json weighted_pairs_to_json(const GroundSet& g,
                                   const std::map<SubsetPair, Rational>& m) {
    json out = json::array();
    for (const auto& [pr, c] : m)
        out.push_back({{"A", subset_to_json(g, pr.first)},
                       {"B", subset_to_json(g, pr.second)},
                       {"coeff", format_rational(c)}});
    return out;
}

inline std::map<SubsetPair, Rational> weighted_pairs_from_json(const GroundSet& g,
                                                               const json& j) {
    std::map<SubsetPair, Rational> out;
    for (const auto& p : j)
        out[ordered_pair(subset_from_json(g, p.at("A")), subset_from_json(g, p.at("B")))] =
            parse_rational(p.at("coeff").get<std::string>());
    return out;
}

inline json certificate_to_json(const Certificate& c) {
    const GroundSet& g = c.target.ground();
    json inds = json::array();
    for (const auto& [s, v] : c.cone_indicators)
        inds.push_back({{"A", subset_to_json(g, s)}, {"coeff", format_rational(v)}});
    return {{"target", setfun_to_json(c.target)},
            {"line", format_rational(c.line)},
            {"subspace_pairs", weighted_pairs_to_json(g, c.subspace_t)},
            {"subspace_iso", weighted_pairs_to_json(g, c.subspace_iso)},
            {"cone_pairs", weighted_pairs_to_json(g, c.cone_pairs)},
            {"cone_indicators", inds}};
}

inline Certificate certificate_from_json(const json& j) {
    Certificate c;
    c.target = setfun_from_json(j.at("target"));
    const GroundSet& g = c.target.ground();
    c.line = parse_rational(j.at("line").get<std::string>());
    c.subspace_t = weighted_pairs_from_json(g, j.at("subspace_pairs"));
    c.subspace_iso = weighted_pairs_from_json(g, j.at("subspace_iso"));
    c.cone_pairs = weighted_pairs_from_json(g, j.at("cone_pairs"));
    for (const auto& e : j.at("cone_indicators"))
        c.cone_indicators[subset_from_json(g, e.at("A"))] =
            parse_rational(e.at("coeff").get<std::string>());
    return c;
}

inline json refutation_to_json(const FarkasRefutation& r) {
    return {{"functional", setfun_to_json(r.functional)}};
}

inline FarkasRefutation refutation_from_json(const json& j) {
    return FarkasRefutation{setfun_from_json(j.at("functional"))};
}

/** Self-contained certification result: the problem plus its outcome. */
inline json outcome_to_json(const MembershipProblem& p, const MembershipOutcome& o) {
    json out = {{"problem", problem_to_json(p)}};
    switch (o.status) {
        case MemberStatus::Certified:
            out["status"] = "certified";
            out["certificate"] = certificate_to_json(*o.certificate);
            break;
        case MemberStatus::Refuted:
            out["status"] = "refuted";
            out["refutation"] = refutation_to_json(*o.refutation);
            break;
        case MemberStatus::Inconclusive:
            out["status"] = "inconclusive";
            break;
    }
    return out;
}

inline json disttable_to_json(const DistTable& d) {
    json coords = json::array();
    for (Vertex v : d.coords) coords.push_back(v);
    json rows = json::array();
    for (const auto& [t, p] : d.probs) {
        json tup = json::array();
        for (auto v : t) tup.push_back(int(v));
        rows.push_back({{"tuple", tup}, {"prob", format_rational(p)}});
    }
    return {{"target", target_to_json(d.target)}, {"coords", coords}, {"rows", rows}};
}

inline DistTable disttable_from_json(const json& j) {
    DistTable d;
    d.target = target_from_json(j.at("target"));
    for (const auto& v : j.at("coords")) d.coords.push_back(v.get<Vertex>());
    for (const auto& r : j.at("rows")) {
        Tuple t;
        for (const auto& v : r.at("tuple")) t.push_back(uint8_t(v.get<int>()));
        d.probs[t] = parse_rational(r.at("prob").get<std::string>());
    }
    d.validate();
    return d;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out << dump(j);
    if (!out) throw ParseError("failed writing " + path);
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON in " + path);
    return j;
}

}  // namespace io
}  // namespace sidcert
