#pragma once

// Command-line front end.  run_cli drives the whole toolkit in-process so
// tests exercise exactly the code paths of the installed binary: certify,
// verify-cert, scheme, sidorenko, sidorenko-sweep and catalog, with the
// documented exit-code contract (0 pass, 1 refuted or failed, 2
// inconclusive, 3 input error).

#include <algorithm>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sidcert/catalog.hpp"
#include "sidcert/certify.hpp"
#include "sidcert/homcount.hpp"
#include "sidcert/io.hpp"
#include "sidcert/measures.hpp"
#include "sidcert/subdivision.hpp"

namespace sidcert {
namespace cli {

inline int status_exit(MemberStatus s) {
    switch (s) {
        case MemberStatus::Certified: return 0;
        case MemberStatus::Refuted: return 1;
        case MemberStatus::Inconclusive: return 2;
    }
    return 3;
}

namespace detail {

inline bool is_chain_json(const io::json& j) {
    return j.contains("kind") && j.at("kind") == "subdivision-chain";
}

inline bool is_complex_json(const io::json& j) {
    return j.contains("arity") && !j.contains("vertices");
}

/** Replays a subdivision-chain file into its final complex. */
inline ReflectionComplex chain_complex(const io::json& j, int cap) {
    ReflectionComplex q = io::complex_from_json(j.at("base"), cap);
    for (const auto& st : j.at("steps")) {
        ReflectionComplex ins = io::complex_from_json(st.at("insert"), cap);
        std::vector<Vertex> j1, j2;
        for (const auto& v : st.at("j1")) j1.push_back(v.get<Vertex>());
        for (const auto& v : st.at("j2")) j2.push_back(v.get<Vertex>());
        q = subdivide(q, ins, j1, j2, std::nullopt, cap).hat;
    }
    return q;
}

/** Replays a chain and transports the base certificate across every step. */
inline std::pair<ReflectionComplex, Certificate> chain_certificate(const io::json& j, int cap) {
    ReflectionComplex q = io::complex_from_json(j.at("base"), cap);
    Certificate cert = thick_certificate_from_trace(q);
    for (const auto& st : j.at("steps")) {
        ReflectionComplex ins = io::complex_from_json(st.at("insert"), cap);
        std::vector<Vertex> j1, j2;
        for (const auto& v : st.at("j1")) j1.push_back(v.get<Vertex>());
        for (const auto& v : st.at("j2")) j2.push_back(v.get<Vertex>());
        Subdivision sd = subdivide(q, ins, j1, j2, std::nullopt, cap);
        cert = certificate_transport_subdivision(sd, cert, thick_certificate_from_trace(ins));
        q = sd.hat;
    }
    return {q, cert};
}

/** Loads the frame graph of a complex, chain or plain graph file. */
inline FrameGraph load_frame(const io::json& j, int cap) {
    if (is_chain_json(j)) return chain_complex(j, cap).frame();
    if (is_complex_json(j)) return io::complex_from_json(j, cap).frame();
    if (j.contains("vertices") && j.contains("edges")) return io::framegraph_from_json(j, cap);
    throw ParseError("expected a complex, subdivision-chain or graph file");
}

inline std::string float_str(const HighFloat& x) {
    std::ostringstream os;
    os.precision(15);
    os << x;
    return os.str();
}

}  // namespace detail

inline int cmd_certify(const std::string& input, const std::string& out,
                       const std::string& mode, bool weak, int max_ground) {
    io::json j = io::read_json_file(input);
    std::optional<SolveMode> forced;
    if (mode == "restricted") forced = SolveMode::Restricted;
    else if (mode == "full") forced = SolveMode::Full;
    else if (mode != "auto" && mode != "constructive")
        throw ParameterError("unknown mode " + mode);

    MembershipProblem problem;
    MembershipOutcome outcome;
    if (detail::is_chain_json(j)) {
        if (forced) {
            ReflectionComplex q = detail::chain_complex(j, max_ground);
            problem = weak ? weak_thickness_problem(q) : thickness_problem(q);
            outcome = decide_membership(
                problem, *forced,
                *forced == SolveMode::Restricted ? complex_universe(q, problem.target)
                                                 : std::set<Subset>{});
        } else {
            auto [q, cert] = detail::chain_certificate(j, max_ground);
            if (weak) cert = weak_from_thick(cert, q.frame());
            problem = weak ? weak_thickness_problem(q) : thickness_problem(q);
            outcome.status = MemberStatus::Certified;
            outcome.certificate = std::move(cert);
        }
    } else if (detail::is_complex_json(j)) {
        ReflectionComplex m = io::complex_from_json(j, max_ground);
        bool want_weak = weak || m.arity() != 2;
        problem = want_weak ? weak_thickness_problem(m) : thickness_problem(m);
        if (mode == "constructive") {
            try {
                outcome.status = MemberStatus::Certified;
                outcome.certificate = want_weak
                                          ? (m.arity() == 2 && !in_class_Ck(m).in_class
                                                 ? weak_from_thick(thick_certificate_from_trace(m),
                                                                   m.frame())
                                                 : weak_certificate_from_trace(m))
                                          : thick_certificate_from_trace(m);
            } catch (const NotInClassError& e) {
                std::cout << "constructive route unavailable: " << e.what() << "\n";
                outcome = MembershipOutcome{};
                outcome.status = MemberStatus::Inconclusive;
            }
        } else {
            outcome = want_weak ? is_weakly_thick(m, forced) : is_thick(m, forced);
        }
    } else {
        BHypergraph m = io::bhyper_from_json(j, max_ground);
        if (m.edges.empty()) throw ParseError("input has no edges");
        int k = 64;
        for (Subset e : m.edges) k = std::min(k, popcount(e));
        ReducibilityReport red = is_k_reducible(m, k);
        if (!red.reducible) {
            std::cout << "not " << k << "-reducible: edge " << m.verts.render(red.failing)
                      << " has no related split into smaller edges\n";
            return 3;
        }
        std::set<Subset> frame_edges;
        for (Subset e : m.edges)
            if (popcount(e) == k) frame_edges.insert(e);
        FrameGraph frame(m.verts, k, frame_edges, max_ground);
        bool want_weak = weak || k != 2;
        problem.ground = m.verts;
        problem.target = want_weak ? s_vector(frame, m.verts.full())
                                   : h_vector(frame, m.verts.full());
        problem.ci_pairs = m.relation;
        if (mode == "constructive") {
            std::cout << "constructive route needs a trace; raw input is undecided\n";
            outcome.status = MemberStatus::Inconclusive;
        } else if (forced) {
            outcome = decide_membership(problem, *forced);
        } else {
            outcome = decide_membership(problem, SolveMode::Restricted);
            if (outcome.status != MemberStatus::Certified &&
                problem.ground.size() <= kFullModeCap)
                outcome = decide_membership(problem, SolveMode::Full);
        }
    }

    io::write_json_file(out, io::outcome_to_json(problem, outcome));
    switch (outcome.status) {
        case MemberStatus::Certified: std::cout << "certified; wrote " << out << "\n"; break;
        case MemberStatus::Refuted: std::cout << "refuted; wrote " << out << "\n"; break;
        case MemberStatus::Inconclusive:
            std::cout << "inconclusive; wrote " << out << "\n";
            break;
    }
    return status_exit(outcome.status);
}

inline int cmd_verify_cert(const std::string& input) {
    io::json j = io::read_json_file(input);
    MembershipProblem p = io::problem_from_json(j.at("problem"));
    std::string status = j.at("status").get<std::string>();
    if (status == "certified") {
        bool ok = false;
        std::string reason;
        try {
            ok = verify_certificate(p, io::certificate_from_json(j.at("certificate")));
        } catch (const Error& e) {
            reason = e.what();
        }
        if (ok) {
            std::cout << "certificate verifies\n";
            return 0;
        }
        std::cout << "certificate rejected" << (reason.empty() ? "" : ": " + reason) << "\n";
        return 1;
    }
    if (status == "refuted") {
        bool ok = false;
        std::string reason;
        try {
            ok = verify_refutation(p, io::refutation_from_json(j.at("refutation")));
        } catch (const Error& e) {
            reason = e.what();
        }
        if (ok) {
            std::cout << "refutation verifies\n";
            return 0;
        }
        std::cout << "refutation rejected" << (reason.empty() ? "" : ": " + reason) << "\n";
        return 1;
    }
    std::cout << "file records an inconclusive run; nothing to verify\n";
    return 2;
}

inline int cmd_scheme(const std::string& input, const std::string& target_path,
                      const std::string& out, bool check_witness, double tol,
                      long long max_state, int samples, int max_ground) {
    io::json j = io::read_json_file(input);
    ReflectionComplex m = detail::is_chain_json(j) ? detail::chain_complex(j, max_ground)
                                                   : io::complex_from_json(j, max_ground);
    TargetGraph g = io::target_from_json(io::read_json_file(target_path));
    DistTable mu = evaluate_scheme(m, g, Integer(max_state));
    if (!out.empty()) {
        io::write_json_file(out, io::disttable_to_json(mu));
        std::cout << "measure written to " << out << "\n";
    }
    std::cout << "support size " << mu.probs.size() << "\n";
    if (!check_witness) return 0;

    FrameGraph frame = m.frame();
    bool all_ok = true;
    DistTable tau = uniform_edge(g);
    bool edges_ok = true;
    for (Subset e : frame.edges())
        if (!same_distribution(marginal(mu, frame.ground().elements(e)), tau)) edges_ok = false;
    std::cout << (edges_ok ? "PASS" : "FAIL") << " edge marginals uniform on edges\n";
    DistTable kap = kappa(g);
    bool verts_ok = true;
    for (Vertex v : frame.ground().vertices())
        if (!same_distribution(marginal(mu, std::vector<Vertex>{v}), kap)) verts_ok = false;
    std::cout << (verts_ok ? "PASS" : "FAIL") << " vertex marginals degree-proportional\n";
    WitnessReport w = witness_check(mu, frame, g, tol);
    std::cout << (w.ok ? "PASS" : "FAIL") << " witness entropy D = " << detail::float_str(w.d_mu)
              << " <= " << detail::float_str(w.bound) << "\n";
    SupermodularityReport sp = supermodularity_probe(m, g, samples, tol, Integer(max_state));
    std::cout << (sp.ci_ok ? "PASS" : "FAIL")
              << " relation pairs pair to zero, max |.| = " << detail::float_str(sp.max_ci_abs)
              << "\n";
    std::cout << (sp.pairs_ok ? "PASS" : "FAIL") << " sampled pairs (" << sp.pairs_checked
              << ") pair nonnegatively, min = " << detail::float_str(sp.min_pair) << "\n";
    std::cout << (sp.s_ok ? "PASS" : "FAIL")
              << " structure pairing = " << detail::float_str(sp.s_value) << "\n";
    all_ok = edges_ok && verts_ok && w.ok && sp.ci_ok && sp.pairs_ok && sp.s_ok;
    std::cout << (all_ok ? "PASS" : "FAIL") << " overall\n";
    return all_ok ? 0 : 1;
}

inline int cmd_sidorenko(const std::string& h_path, const std::string& target_path,
                         long long cap, int max_ground) {
    FrameGraph h = detail::load_frame(io::read_json_file(h_path), max_ground);
    TargetGraph g = io::target_from_json(io::read_json_file(target_path));
    SidorenkoReport r = sidorenko_check(h, g, Integer(cap));
    std::cout << "t(H,G) = " << format_rational(r.lhs)
              << ", edge-density power = " << format_rational(r.rhs) << "\n";
    std::cout << (r.holds ? "PASS" : "FAIL") << " correlation inequality\n";
    return r.holds ? 0 : 1;
}

inline int cmd_sweep(const std::string& h_path, int max_g_vertices, int random_vertices,
                     int random_count, std::uint64_t seed, long long cap, int max_ground) {
    FrameGraph h = detail::load_frame(io::read_json_file(h_path), max_ground);
    SweepReport rep = sweep_targets(h, max_g_vertices, Integer(cap));
    for (const auto& [n, c] : rep.per_size)
        std::cout << c << " targets on " << n << " vertices\n";
    if (random_count > 0) {
        auto targets = random_targets(random_vertices, h.arity(), random_count, seed);
        for (const auto& g : targets) {
            SidorenkoReport r = sidorenko_check(h, g, Integer(cap));
            ++rep.targets;
            if (!r.holds) {
                std::string desc;
                for (const auto& e : g.edges()) {
                    desc += desc.empty() ? "{" : " {";
                    for (size_t i = 0; i < e.size(); ++i)
                        desc += (i ? "," : "") + g.labels()[e[i]];
                    desc += "}";
                }
                rep.violations.push_back({random_vertices, desc, r.lhs, r.rhs});
            }
        }
        std::cout << random_count << " seeded targets on " << random_vertices << " vertices\n";
    }
    std::cout << rep.targets << " targets checked, " << rep.violations.size()
              << " violations\n";
    for (const auto& v : rep.violations)
        std::cout << "violation on " << v.n << " vertices, edges " << v.edges << ": t = "
                  << format_rational(v.lhs) << " < " << format_rational(v.rhs) << "\n";
    return rep.violations.empty() ? 0 : 1;
}

struct CatalogEntry {
    std::string name;
    std::string params;
    std::string summary;
    int min_args;
    int max_args;  // -1: unbounded
    std::function<io::json(const std::vector<int>&)> build;
};

inline io::json hypercube_chain_json(int n) {
    if (n < 1) throw ParameterError("hypercube dimension must be at least 1");
    if (n > 5) throw SizeCapError("hypercube complexes are capped at dimension 5");
    auto box = tree_box_e(path_graph(2));
    io::json steps = io::json::array();
    for (int i = 2; i <= n; ++i) {
        io::json j1 = io::json::array(), j2 = io::json::array();
        for (Vertex v : box.j1) j1.push_back(v);
        for (Vertex v : box.j2) j2.push_back(v);
        steps.push_back({{"insert", io::complex_to_json(box.complex)}, {"j1", j1}, {"j2", j2}});
    }
    return {{"kind", "subdivision-chain"},
            {"base", io::complex_to_json(ReflectionComplex(2, kHardGroundCap))},
            {"steps", steps}};
}

inline io::json grid_chain_json(const std::vector<int>& dims) {
    if (dims.empty()) throw ParameterError("grid needs at least one dimension");
    for (int d : dims)
        if (d < 2) throw ParameterError("grid side lengths must be at least 2");
    io::json steps = io::json::array();
    for (std::size_t i = 1; i < dims.size(); ++i) {
        auto box = tree_box_e(path_graph(dims[i]));
        io::json j1 = io::json::array(), j2 = io::json::array();
        for (Vertex v : box.j1) j1.push_back(v);
        for (Vertex v : box.j2) j2.push_back(v);
        steps.push_back({{"insert", io::complex_to_json(box.complex)}, {"j1", j1}, {"j2", j2}});
    }
    return {{"kind", "subdivision-chain"},
            {"base", io::complex_to_json(tree_complex(path_graph(dims[0])).complex)},
            {"steps", steps}};
}

inline const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = {
        {"arrangeable-example", "", "4-cycle with a pendant vertex via arrangeable moves", 0, 0,
         [](const std::vector<int>&) { return io::complex_to_json(tree_arrangeable_example()); }},
        {"bipartite-side", "v1 v2 v3", "blow-up of a 6-cycle: three left vertices, vj copies "
         "of the j-th right vertex", 3, 3,
         [](const std::vector<int>& p) {
             return io::complex_to_json(bipartite_3side(p[0], p[1], p[2]));
         }},
        {"complete-partite", "a1 a2 [a3 ...]", "complete multipartite frame, arity = number "
         "of classes", 2, -1,
         [](const std::vector<int>& p) {
             return io::complex_to_json(complete_k_partite(p).complex);
         }},
        {"cycle", "n", "even cycle on n vertices", 1, 1,
         [](const std::vector<int>& p) { return io::complex_to_json(cycle_complex(p[0])); }},
        {"edge", "[k]", "single edge of the given arity (default 2)", 0, 1,
         [](const std::vector<int>& p) {
             return io::complex_to_json(ReflectionComplex(p.empty() ? 2 : p[0], kHardGroundCap));
         }},
        {"grid", "d1 d2 [d3 ...]", "grid graph as a subdivision chain of path boxes", 1, -1,
         [](const std::vector<int>& p) { return grid_chain_json(p); }},
        {"hypercube", "n", "n-cube as a subdivision chain of squares (n <= 5)", 1, 1,
         [](const std::vector<int>& p) { return hypercube_chain_json(p[0]); }},
        {"k-forest-example", "k", "three k-edges glued along a subset chain", 1, 1,
         [](const std::vector<int>& p) { return io::complex_to_json(k_forest_example(p[0])); }},
        {"path", "n", "path on n vertices", 1, 1,
         [](const std::vector<int>& p) {
             return io::complex_to_json(tree_complex(path_graph(p[0])).complex);
         }},
        {"reflection-tree-example", "", "4-cycle from a path by one whole-ground reflection",
         0, 0,
         [](const std::vector<int>&) {
             return io::complex_to_json(
                 reflection_tree(path_graph(3), {TraceStep{{1, 2, 3}, {1, 3}}}));
         }},
        {"square-padded", "", "4-cycle trace extended by a no-op reflection", 0, 0,
         [](const std::vector<int>&) { return io::complex_to_json(square_complex_padded()); }},
        {"star", "m", "star with m leaves", 1, 1,
         [](const std::vector<int>& p) {
             return io::complex_to_json(tree_complex(star_graph(p[0])).complex);
         }},
        {"tight-path", "k n", "k-uniform tight path on n vertices", 2, 2,
         [](const std::vector<int>& p) { return io::complex_to_json(tight_path(p[0], p[1])); }},
        {"tree-box-path", "n", "path-n times edge box product (ladder)", 1, 1,
         [](const std::vector<int>& p) {
             return io::complex_to_json(tree_box_e(path_graph(p[0])).complex);
         }},
    };
    return entries;
}

inline int cmd_catalog_list() {
    for (const auto& e : catalog_entries())
        std::cout << e.name << (e.params.empty() ? "" : " " + e.params) << "  -  " << e.summary
                  << "\n";
    return 0;
}

inline int cmd_catalog_emit(const std::string& name, const std::vector<int>& params,
                            const std::string& out) {
    if (name == "bipartite-side" && params.size() > 3) {
        std::cout << "bipartite frames with four or more vertices on one side are not "
                     "supported by this catalog\n";
        return 3;
    }
    for (const auto& e : catalog_entries()) {
        if (e.name != name) continue;
        if (static_cast<int>(params.size()) < e.min_args ||
            (e.max_args >= 0 && static_cast<int>(params.size()) > e.max_args))
            throw ParameterError(name + " expects parameters: " +
                                 (e.params.empty() ? "(none)" : e.params));
        io::write_json_file(out, e.build(params));
        std::cout << "wrote " << name << " to " << out << "\n";
        return 0;
    }
    throw ParameterError("unknown catalog entry " + name + "; see catalog list");
}

/** Parses and runs one invocation; args exclude the program name. */
inline int run_cli(std::vector<std::string> args) {
    CLI::App app{"certification toolkit for correlation inequalities of bipartite graphs"};
    app.require_subcommand(1);

    std::string input, mode = "auto", target_path;
    std::string cert_out = "certificate.json", measure_out, emit_out = "complex.json";
    bool weak = false, check_witness = false;
    int max_ground = kHardGroundCap;
    double tol = 1e-9;
    long long max_state = 10000000, hom_cap = 10000000;
    int samples = 200, max_g_vertices = 4, random_vertices = 0, random_count = 0;
    std::uint64_t seed = 0;
    std::string cat_name;
    std::vector<int> cat_params;

    auto* certify = app.add_subcommand("certify", "decide thickness of a complex or raw input");
    certify->add_option("input", input, "complex, subdivision-chain or b-hypergraph file")
        ->required();
    certify->add_option("--out", cert_out, "output certificate file");
    certify->add_option("--mode", mode, "auto|constructive|restricted|full");
    certify->add_flag("--weak", weak, "certify the weak (structure-vector) form");
    certify->add_option("--max-ground", max_ground, "vertex cap for parsed inputs");

    auto* verify = app.add_subcommand("verify-cert", "independently verify a certificate file");
    verify->add_option("input", input, "certificate file")->required();

    auto* scheme = app.add_subcommand("scheme", "evaluate the coupling scheme measure");
    scheme->add_option("input", input, "complex or subdivision-chain file")->required();
    scheme->add_option("--target", target_path, "target graph file")->required();
    scheme->add_option("--out", measure_out, "measure output file");
    scheme->add_flag("--check-witness", check_witness, "run witness and pairing checks");
    scheme->add_option("--tol", tol, "numeric tolerance");
    scheme->add_option("--max-state", max_state, "support size cap");
    scheme->add_option("--samples", samples, "sampled pairs for the pairing probe");
    scheme->add_option("--max-ground", max_ground, "vertex cap for parsed inputs");

    auto* sidorenko = app.add_subcommand("sidorenko", "compare t(H,G) with the edge power");
    sidorenko->add_option("input", input, "frame: complex, chain or graph file")->required();
    sidorenko->add_option("--target", target_path, "target graph file")->required();
    sidorenko->add_option("--max-state", hom_cap, "homomorphism enumeration cap");
    sidorenko->add_option("--max-ground", max_ground, "vertex cap for parsed inputs");

    auto* sweep = app.add_subcommand("sidorenko-sweep", "sweep all small targets");
    sweep->add_option("input", input, "frame: complex, chain or graph file")->required();
    sweep->add_option("--max-g-vertices", max_g_vertices, "largest exhaustive target size");
    sweep->add_option("--random-vertices", random_vertices, "size for seeded random targets");
    sweep->add_option("--random-count", random_count, "number of seeded random targets");
    sweep->add_option("--seed", seed, "seed for the random targets");
    sweep->add_option("--max-state", hom_cap, "homomorphism enumeration cap");
    sweep->add_option("--max-ground", max_ground, "vertex cap for parsed inputs");

    auto* catalog = app.add_subcommand("catalog", "list or emit ready-made complexes");
    auto* cat_list = catalog->add_subcommand("list", "list catalog entries");
    auto* cat_emit = catalog->add_subcommand("emit", "write a catalog entry to a file");
    cat_emit->add_option("name", cat_name, "catalog entry name")->required();
    cat_emit->add_option("params", cat_params, "integer parameters");
    cat_emit->add_option("--out", emit_out, "output file");
    catalog->require_subcommand(1);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (certify->parsed()) return cmd_certify(input, cert_out, mode, weak, max_ground);
        if (verify->parsed()) return cmd_verify_cert(input);
        if (scheme->parsed())
            return cmd_scheme(input, target_path, measure_out, check_witness, tol, max_state,
                              samples, max_ground);
        if (sidorenko->parsed()) return cmd_sidorenko(input, target_path, hom_cap, max_ground);
        if (sweep->parsed())
            return cmd_sweep(input, max_g_vertices, random_vertices, random_count, seed, hom_cap,
                             max_ground);
        if (catalog->parsed()) {
            if (cat_list->parsed()) return cmd_catalog_list();
            if (cat_emit->parsed()) return cmd_catalog_emit(cat_name, cat_params, emit_out);
        }
    } catch (const Error& e) {
        std::cout << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}

}  // namespace cli
}  // namespace sidcert
