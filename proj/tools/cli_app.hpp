#pragma once

// rainbow-subdiv command line. run() is separate from main() so tests can
// drive it with captured streams.
//
// Exit codes: 0 success, 1 honest algorithmic failure, 2 usage or input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bench.hpp"
#include "rainbow/density.hpp"
#include "rainbow/expander.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/graph_io.hpp"
#include "rainbow/instances.hpp"
#include "rainbow/ladder.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/rainbow_search.hpp"
#include "rainbow/serialize.hpp"
#include "rainbow/subdivision.hpp"

namespace rainbow::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

namespace detail {

inline Json document()
{
    Json j;
    j["schema"] = json_schema_version;
    return j;
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::invalid_argument("cannot write '" + path + "'");
    }
    f << text;
}

inline std::string join(const std::vector<std::uint32_t>& xs)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i ? " " : "") + std::to_string(xs[i]);
    }
    return s;
}

inline Vertex checked_vertex(const ColouredGraph& g, std::int64_t v, const char* what)
{
    if (v < 0 || static_cast<std::uint64_t>(v) >= g.vertex_count()) {
        throw std::invalid_argument(std::string(what) + " " + std::to_string(v) + " out of range");
    }
    return static_cast<Vertex>(v);
}

} // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Rainbow clique subdivisions in properly edge-coloured graphs", "rainbow-subdiv"};
    app.require_subcommand(1);

    // gen ------------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "Generate an instance");
    gen->require_subcommand(1);
    std::string gen_out;
    unsigned gen_m = 0;
    std::size_t gen_n = 0;
    double gen_p = 1;
    std::string gen_rule = "greedy";
    std::uint64_t gen_seed = 0;
    auto* gen_cube = gen->add_subcommand("hypercube", "Hypercube Q_m coloured by coordinate");
    gen_cube->add_option("--m", gen_m, "Dimension")->required();
    auto* gen_random = gen->add_subcommand("random", "G(n, p) with a proper colouring");
    gen_random->add_option("--n", gen_n, "Vertices")->required();
    gen_random->add_option("--p", gen_p, "Edge probability")->required();
    gen_random->add_option("--rule", gen_rule, "greedy or fanned")->check(CLI::IsMember({"greedy", "fanned"}));
    gen_random->add_option("--seed", gen_seed, "Seed")->required();
    auto* gen_rc = gen->add_subcommand("rainbow-complete", "K_n with all colours distinct");
    gen_rc->add_option("--n", gen_n, "Vertices")->required();
    auto* gen_of = gen->add_subcommand("one-factorized", "K_n coloured by a 1-factorization");
    gen_of->add_option("--n", gen_n, "Vertices (even)")->required();
    for (auto* sub : {gen_cube, gen_random, gen_rc, gen_of}) {
        sub->add_option("--out", gen_out, "Output file (default stdout)");
    }

    // shared flags -----------------------------------------------------------
    std::string file;
    bool json = false;
    auto add_file = [&](CLI::App* sub) {
        sub->add_option("file", file, "Graph file")->required();
        sub->add_flag("--json", json, "JSON output");
    };

    auto* check = app.add_subcommand("check", "Validate a graph and print its statistics");
    add_file(check);

    auto* minimal = app.add_subcommand("extract-minimal", "Extract a d-minimal subgraph");
    add_file(minimal);
    std::string d_text;
    minimal->add_option("--d", d_text, "Target average degree (rational)")->required();

    auto* cover = app.add_subcommand("cover", "Cover the edges by expanders");
    add_file(cover);
    std::string eps_text = "1/4", lambda_text;
    bool paper_mode = false;
    cover->add_option("--eps", eps_text, "eps (rational)");
    cover->add_option("--lambda", lambda_text, "lambda (rational; default eps / (2 ln n))");
    cover->add_flag("--paper-mode", paper_mode, "Require lambda <= eps / (2 ln n)");

    auto* connect = app.add_subcommand("connect", "Rainbow path between two vertices");
    add_file(connect);
    std::int64_t cx = 0, cy = 0;
    std::vector<std::int64_t> avoid_vertices, avoid_colours;
    std::uint64_t seed = 0;
    std::optional<std::int64_t> max_len;
    unsigned connect_t = 2;
    bool full_route = false;
    std::string run_eps = "1/40";
    connect->add_option("--x", cx, "Start vertex")->required();
    connect->add_option("--y", cy, "End vertex")->required();
    connect->add_option("--avoid-vertices", avoid_vertices, "Forbidden vertices")->delimiter(',');
    connect->add_option("--avoid-colours", avoid_colours, "Forbidden colours")->delimiter(',');
    connect->add_option("--seed", seed, "Seed")->required();
    connect->add_option("--t", connect_t, "t used for the ladder's L (default 2)");
    connect->add_flag("--full-route", full_route, "Do not stop when y is reached directly from x");

    auto* subdiv = app.add_subcommand("find-subdivision", "Find a rainbow K_t-subdivision");
    add_file(subdiv);
    unsigned t = 0;
    std::vector<std::int64_t> branch;
    std::string cert_out;
    subdiv->add_option("--t", t, "Number of branch vertices")->required();
    subdiv->add_option("--seed", seed, "Seed")->required();
    subdiv->add_option("--branch", branch, "Branch vertices")->delimiter(',');
    subdiv->add_option("--out", cert_out, "Also write the certificate to this file");

    for (auto* sub : {connect, subdiv}) {
        auto* pm = sub->add_flag("--paper-mode", paper_mode, "Paper parameters");
        auto* ml = sub->add_option("--max-len", max_len, "Per-segment path length cap");
        sub->add_option("--eps", run_eps, "eps (rational, default 1/40)");
        pm->excludes(ml);
    }

    auto* verify = app.add_subcommand("verify", "Verify a subdivision certificate");
    std::string cert_file;
    std::size_t verify_t = 0, verify_len = 0;
    verify->add_option("file", file, "Graph file")->required();
    verify->add_option("cert", cert_file, "Certificate JSON")->required();
    verify->add_option("--t", verify_t, "Number of branch vertices")->required();
    verify->add_option("--max-len", verify_len, "Maximum path length")->required();

    auto* cycle = app.add_subcommand("rainbow-cycle", "Exhaustive rainbow cycle search");
    add_file(cycle);
    std::optional<std::size_t> cycle_len;
    cycle->add_option("--max-len", cycle_len, "Longest cycle searched (default n)");

    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark grid and print CSV");
    std::string spec_file, bench_out;
    bool timing = false;
    bench_cmd->add_option("spec", spec_file, "Grid spec (JSON)")->required();
    bench_cmd->add_option("--out", bench_out, "Output file (default stdout)");
    bench_cmd->add_flag("--timing", timing, "Add a wall-time column");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg;
        const int rc = app.exit(e, msg, msg);
        (rc == 0 ? out : err) << msg.str();
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (gen->parsed()) {
            ColouredGraph g;
            std::vector<std::string> comments;
            if (gen_cube->parsed()) {
                g = gen_hypercube(gen_m);
                comments.push_back("hypercube m=" + std::to_string(gen_m));
            } else if (gen_random->parsed()) {
                const auto rule = gen_rule == "fanned" ? ColouringRule::fanned : ColouringRule::greedy;
                g = gen_random_proper(gen_n, gen_p, rule, gen_seed);
                std::ostringstream c;
                c << "random n=" << gen_n << " p=" << gen_p << " rule=" << gen_rule << " seed=" << gen_seed;
                comments.push_back(c.str());
            } else if (gen_rc->parsed()) {
                g = gen_rainbow_complete(gen_n);
                comments.push_back("rainbow-complete n=" + std::to_string(gen_n));
            } else {
                g = gen_one_factorized_complete(gen_n);
                comments.push_back("one-factorized n=" + std::to_string(gen_n));
            }
            detail::write_text(gen_out, serialize_graph(g, comments), out);
            return exit_ok;
        }

        if (bench_cmd->parsed()) {
            std::ifstream in(spec_file);
            if (!in) {
                throw std::invalid_argument("cannot open '" + spec_file + "'");
            }
            Json spec;
            try {
                spec = Json::parse(in);
            } catch (const Json::exception& e) {
                throw std::invalid_argument(std::string("malformed bench spec: ") + e.what());
            }
            detail::write_text(bench_out, bench::run(spec, timing), out);
            return exit_ok;
        }

        const auto g = load_graph_file(file);
        const SubgraphView view(g);

        if (check->parsed()) {
            std::size_t min_degree = 0, max_degree = 0;
            if (g.vertex_count() > 0) {
                const auto stats = degree_stats(view);
                min_degree = stats.min;
                max_degree = stats.max;
            }
            if (json) {
                auto j = detail::document();
                j["vertices"] = g.vertex_count();
                j["edges"] = g.edge_count();
                j["colours"] = g.colour_count();
                j["average_degree"] = to_string(view.average_degree());
                j["min_degree"] = min_degree;
                j["max_degree"] = max_degree;
                j["proper"] = true;
                out << j.dump(2) << '\n';
            } else {
                out << "vertices " << g.vertex_count() << "\nedges " << g.edge_count() << "\ncolours "
                    << g.colour_count() << "\naverage degree " << to_string(view.average_degree())
                    << "\nminimum degree " << min_degree << "\nmaximum degree " << max_degree << "\nproper yes\n";
            }
            return exit_ok;
        }

        if (minimal->parsed()) {
            const auto d = parse_rational(d_text);
            const auto m = extract_d_minimal(view, d);
            std::optional<bool> confirmed;
            if (m.subgraph.vertex_count() <= default_oracle_cap) {
                confirmed = brute_d_minimal_check(m.subgraph, d).holds;
            }
            if (json) {
                auto j = detail::document();
                j["d"] = to_string(d);
                j["vertices"] = m.subgraph.vertices();
                j["edges"] = m.subgraph.edge_count();
                j["average_degree"] = to_string(m.subgraph.average_degree());
                j["oracle_confirmed"] = confirmed ? Json(*confirmed) : Json(nullptr);
                out << j.dump(2) << '\n';
            } else {
                out << "vertices " << detail::join(m.subgraph.vertices()) << "\nedges " << m.subgraph.edge_count()
                    << "\naverage degree " << to_string(m.subgraph.average_degree()) << "\noracle "
                    << (confirmed ? (*confirmed ? "confirmed" : "REFUTED") : "skipped (over 16 vertices)") << '\n';
            }
            return confirmed == false ? exit_failure : exit_ok;
        }

        if (cover->parsed()) {
            const auto eps = parse_rational(eps_text);
            const auto lambda = lambda_text.empty() ? paper_lambda(eps, g.vertex_count()) : parse_rational(lambda_text);
            if (paper_mode && !satisfies_paper_lambda(lambda, eps, g.vertex_count())) {
                throw std::invalid_argument("paper mode requires lambda <= eps / (2 ln n)");
            }
            const auto c = cover_by_expanders(view, lambda, eps);
            const Rational covered(static_cast<std::int64_t>(g.edge_count() - c.uncovered.size()),
                                   static_cast<std::int64_t>(g.edge_count()));
            if (json) {
                auto j = detail::document();
                j["eps"] = to_string(eps);
                j["lambda"] = to_string(lambda);
                j["pieces"] = Json::array();
                for (const auto& p : c.pieces) {
                    j["pieces"].push_back({{"vertices", p.subgraph.vertex_count()},
                                           {"edges", p.subgraph.edge_count()},
                                           {"d", to_string(p.params.d)},
                                           {"certification", to_string(p.certification)}});
                }
                j["uncovered"] = c.uncovered.size();
                j["covered_fraction"] = to_string(covered);
                out << j.dump(2) << '\n';
            } else {
                out << "lambda " << to_string(lambda) << "  eps " << to_string(eps) << '\n';
                for (std::size_t i = 0; i < c.pieces.size(); ++i) {
                    const auto& p = c.pieces[i];
                    out << "piece " << i << ": v=" << p.subgraph.vertex_count() << " e=" << p.subgraph.edge_count()
                        << " d=" << to_string(p.params.d) << " " << to_string(p.certification) << '\n';
                }
                out << "covered " << to_string(covered) << " (" << c.uncovered.size() << " edges uncovered)\n";
            }
            return exit_ok;
        }

        if (connect->parsed()) {
            const auto x = detail::checked_vertex(g, cx, "x");
            const auto y = detail::checked_vertex(g, cy, "y");
            AvoidSet avoid;
            for (auto v : avoid_vertices) {
                avoid.forbid_vertex(detail::checked_vertex(g, v, "avoided vertex"));
            }
            for (auto c : avoid_colours) {
                if (c < 0 || static_cast<std::uint64_t>(c) >= g.colour_count()) {
                    throw std::invalid_argument("avoided colour " + std::to_string(c) + " out of range");
                }
                avoid.forbid_colour(static_cast<Colour>(c));
            }
            const auto eps = parse_rational(run_eps);
            const auto ladder = paper_mode ? compute_ladder(g.vertex_count(), connect_t, eps)
                                           : practical_ladder(g.vertex_count(), connect_t, eps, max_len);
            ConnectOptions options;
            options.early_exit = !full_route;
            const auto r = rainbow_connect(view, x, y, avoid, ladder, seed, options);
            const bool verified = r.ok() && !check_rainbow_path(view, *r.path, x, y, avoid, ladder.path_bound());
            auto j = detail::document();
            j["status"] = verified ? "success" : "failure";
            j["ladder"] = to_json(ladder);
            j["path"] = r.ok() ? to_json(*r.path) : Json(nullptr);
            j["transcript"] = to_json(r.transcript);
            if (json || !verified) {
                out << j.dump(2) << '\n';
            } else {
                out << "path " << detail::join(r.path->vertices) << "\ncolours " << detail::join(r.path->colours)
                    << "\nlength " << r.path->length() << " (bound " << ladder.path_bound() << ")\n";
            }
            if (!verified) {
                err << "no rainbow path: failed at stage " << to_string(r.transcript.failed_stage) << '\n';
            }
            return verified ? exit_ok : exit_failure;
        }

        if (subdiv->parsed()) {
            DriverOptions o;
            o.mode = paper_mode ? Mode::paper : Mode::practical;
            o.eps = parse_rational(run_eps);
            o.max_len = max_len;
            for (auto v : branch) {
                o.branch.push_back(detail::checked_vertex(g, v, "branch vertex"));
            }
            const auto result = find_rainbow_subdivision(view, t, seed, o);
            std::optional<Verdict> verdict;
            if (result.ok()) {
                verdict = verify_subdivision(g, *result.certificate, t,
                                             static_cast<std::size_t>(result.ladder->path_bound()));
            }
            const bool success = verdict && verdict->accepted;
            auto j = detail::document();
            j["status"] = success ? "success" : "failure";
            if (json || !success) {
                const auto report = to_json(result);
                for (auto it = report.begin(); it != report.end(); ++it) {
                    j[it.key()] = it.value();
                }
                if (verdict && !verdict->accepted) {
                    j["verifier"] = verdict->reason;
                }
            } else {
                j["certificate"] = to_json(*result.certificate);
            }
            out << j.dump(2) << '\n';
            if (success && !cert_out.empty()) {
                auto c = detail::document();
                c["certificate"] = to_json(*result.certificate);
                detail::write_text(cert_out, c.dump(2) + "\n", out);
            }
            if (!success) {
                err << "no certificate: "
                    << (verdict ? "verifier rejected: " + verdict->reason
                                : std::string("failed at stage ") + to_string(result.failed_stage) + ": " +
                                      result.detail)
                    << '\n';
            }
            return success ? exit_ok : exit_failure;
        }

        if (verify->parsed()) {
            std::ifstream in(cert_file);
            if (!in) {
                throw std::invalid_argument("cannot open '" + cert_file + "'");
            }
            Json cj;
            try {
                cj = Json::parse(in);
            } catch (const Json::exception& e) {
                throw std::invalid_argument(std::string("malformed certificate: ") + e.what());
            }
            const auto v = verify_subdivision(g, certificate_from_json(cj), verify_t, verify_len);
            out << (v.accepted ? std::string("accept") : "reject: " + v.reason) << '\n';
            return v.accepted ? exit_ok : exit_failure;
        }

        if (cycle->parsed()) {
            const auto len = cycle_len.value_or(g.vertex_count());
            const auto c = brute_rainbow_cycle(view, len);
            if (json) {
                auto j = detail::document();
                j["max_len"] = len;
                j["cycle"] = c ? Json{{"vertices", c->vertices}, {"colours", c->colours}} : Json(nullptr);
                out << j.dump(2) << '\n';
            } else if (c) {
                out << "cycle " << detail::join(c->vertices) << "\ncolours " << detail::join(c->colours) << '\n';
            } else {
                out << "none\n";
            }
            return exit_ok;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

} // namespace rainbow::cli
