#pragma once

// Benchmark grids.
//
// Spec file (JSON):
//   {
//     "instances": [
//       {"kind": "random", "n": [100, 200], "p": [0.2, 0.5], "rule": "greedy", "seed": [1, 2]},
//       {"kind": "hypercube", "m": [3, 4, 5]}
//     ],
//     "tasks": ["stats", "cover", "rainbow-cycle", "connect", "subdivision"],
//     "t": 3, "max_len": 12, "eps": "1/4", "seed": 1
//   }
// Scalar parameters count as one-element lists; each instance entry expands
// to the Cartesian product of its lists (n, p, m, rule, seed) in that order.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/instances.hpp"
#include "rainbow/ladder.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/rainbow_search.hpp"
#include "rainbow/serialize.hpp"
#include "rainbow/subdivision.hpp"

namespace rainbow::bench {

struct Cell {
    GeneratorSpec spec;
    std::string label;
};

struct Settings {
    std::vector<std::string> tasks{"stats"};
    unsigned t = 3;
    std::int64_t max_len = 12;
    Rational eps{1, 4};
    std::uint64_t seed = 1;
};

namespace detail {

inline Json as_list(const Json& j, const char* key, Json fallback)
{
    if (!j.contains(key)) {
        return Json::array({std::move(fallback)});
    }
    const auto& v = j.at(key);
    return v.is_array() ? v : Json::array({v});
}

inline GeneratorKind parse_kind(const std::string& s)
{
    if (s == "hypercube") {
        return GeneratorKind::hypercube;
    }
    if (s == "random") {
        return GeneratorKind::random_proper;
    }
    if (s == "rainbow-complete") {
        return GeneratorKind::rainbow_complete;
    }
    if (s == "one-factorized") {
        return GeneratorKind::one_factorized_complete;
    }
    throw std::invalid_argument("unknown instance kind '" + s + "'");
}

inline ColouringRule parse_rule(const std::string& s)
{
    if (s == "greedy") {
        return ColouringRule::greedy;
    }
    if (s == "fanned") {
        return ColouringRule::fanned;
    }
    throw std::invalid_argument("unknown colouring rule '" + s + "'");
}

} // namespace detail

inline std::vector<Cell> expand_grid(const Json& spec, Settings& settings)
{
    static const std::vector<std::string> known_tasks{"stats", "cover", "rainbow-cycle", "connect", "subdivision"};
    std::vector<Cell> cells;
    try {
        if (spec.contains("tasks")) {
            settings.tasks = spec.at("tasks").get<std::vector<std::string>>();
            for (const auto& t : settings.tasks) {
                if (std::find(known_tasks.begin(), known_tasks.end(), t) == known_tasks.end()) {
                    throw std::invalid_argument("unknown task '" + t + "'");
                }
            }
        }
        settings.t = spec.value("t", settings.t);
        settings.max_len = spec.value("max_len", settings.max_len);
        settings.seed = spec.value("seed", settings.seed);
        if (spec.contains("eps")) {
            settings.eps = parse_rational(spec.at("eps").get<std::string>());
        }
        for (const auto& inst : spec.value("instances", Json::array())) {
            const auto kind = detail::parse_kind(inst.at("kind").get<std::string>());
            for (const auto& n : detail::as_list(inst, "n", 0)) {
                for (const auto& p : detail::as_list(inst, "p", 1.0)) {
                    for (const auto& m : detail::as_list(inst, "m", 0)) {
                        for (const auto& rule : detail::as_list(inst, "rule", "greedy")) {
                            for (const auto& seed : detail::as_list(inst, "seed", 0)) {
                                Cell c;
                                c.spec.kind = kind;
                                c.spec.n = n.get<std::size_t>();
                                c.spec.p = p.get<double>();
                                c.spec.m = m.get<unsigned>();
                                c.spec.rule = detail::parse_rule(rule.get<std::string>());
                                c.spec.seed = seed.get<std::uint64_t>();
                                std::ostringstream label;
                                label << inst.at("kind").get<std::string>();
                                if (kind == GeneratorKind::hypercube) {
                                    label << " m=" << c.spec.m;
                                } else {
                                    label << " n=" << c.spec.n;
                                }
                                if (kind == GeneratorKind::random_proper) {
                                    label << " p=" << c.spec.p << " rule=" << to_string(c.spec.rule)
                                          << " seed=" << c.spec.seed;
                                }
                                c.label = label.str();
                                cells.push_back(std::move(c));
                            }
                        }
                    }
                }
            }
        }
    } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("malformed bench spec: ") + e.what());
    }
    return cells;
}

inline bool wants(const Settings& s, const char* task)
{
    return std::find(s.tasks.begin(), s.tasks.end(), task) != s.tasks.end();
}

inline std::string run_cell(const Cell& cell, const Settings& s, bool timing)
{
    const auto start = std::chrono::steady_clock::now();
    const auto g = generate(cell.spec);
    const SubgraphView view(g);
    std::ostringstream row;
    row << '"' << cell.label << "\"," << g.vertex_count() << ',' << g.edge_count() << ','
        << to_string(view.average_degree()) << ',';

    if (wants(s, "cover") && view.average_degree() >= 1) {
        const auto cover = cover_by_expanders(view, paper_lambda(s.eps, g.vertex_count()), s.eps);
        const Rational covered(static_cast<std::int64_t>(g.edge_count() - cover.uncovered.size()),
                               static_cast<std::int64_t>(g.edge_count()));
        row << cover.pieces.size() << ',' << to_string(covered) << ',';
    } else {
        row << ",,";
    }

    if (wants(s, "rainbow-cycle")) {
        row << (brute_rainbow_cycle(view, g.vertex_count()) ? "found" : "none");
    }
    row << ',';

    if (wants(s, "connect") && g.vertex_count() >= 2) {
        const auto ladder = practical_ladder(g.vertex_count(), 2, s.eps, s.max_len);
        const Vertex x = 0, y = static_cast<Vertex>(g.vertex_count() - 1);
        const auto r = rainbow_connect(view, x, y, {}, ladder, s.seed);
        const bool verified = r.ok() && !check_rainbow_path(view, *r.path, x, y, {}, ladder.path_bound());
        row << (verified ? std::string("ok") : std::string("fail:") + to_string(r.transcript.failed_stage));
    }
    row << ',';

    if (wants(s, "subdivision") && g.vertex_count() >= s.t) {
        DriverOptions o;
        o.eps = s.eps;
        o.max_len = s.max_len;
        const auto out = find_rainbow_subdivision(view, s.t, s.seed, o);
        if (out.ok()) {
            const auto v = verify_subdivision(g, *out.certificate, s.t, static_cast<std::size_t>(out.ladder->path_bound()));
            row << (v.accepted ? "ok" : "rejected");
        } else {
            row << "fail:" << to_string(out.failed_stage);
        }
    }
    if (timing) {
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        row << ',' << ms;
    }
    return row.str();
}

inline unsigned thread_count()
{
    unsigned n = 1;
    if (const char* env = std::getenv("RS_THREADS")) {
        try {
            n = static_cast<unsigned>(std::max(1L, std::stol(env)));
        } catch (const std::exception&) {
            throw std::invalid_argument("RS_THREADS must be a positive integer");
        }
    }
    return n;
}

/// CSV report, one row per grid cell in grid order regardless of threads.
inline std::string run(const Json& spec, bool timing)
{
    Settings settings;
    const auto cells = expand_grid(spec, settings);
    std::vector<std::string> rows(cells.size());
    std::vector<std::string> errors(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < cells.size();) {
            try {
                rows[i] = run_cell(cells[i], settings, timing);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const auto threads = std::min<std::size_t>(thread_count(), std::max<std::size_t>(cells.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < threads; ++k) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& th : pool) {
        th.join();
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!errors[i].empty()) {
            throw std::invalid_argument("grid cell " + std::to_string(i) + " (" + cells[i].label + "): " + errors[i]);
        }
    }
    std::ostringstream csv;
    csv << "index,instance,n,e,d,pieces,covered_fraction,rainbow_cycle,connect,subdivision";
    if (timing) {
        csv << ",wall_ms";
    }
    csv << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        csv << i << ',' << rows[i] << '\n';
    }
    return csv.str();
}

} // namespace rainbow::bench
