#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rainbow/density.hpp"
#include "rainbow/expander.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/ladder.hpp"
#include "rainbow/rainbow_search.hpp"
#include "rainbow/rational.hpp"

namespace rainbow {

/// Path joining branch vertices branch[i] and branch[j], i < j.
struct PairPath {
    std::size_t i = 0;
    std::size_t j = 0;
    RainbowPath path;

    friend bool operator==(const PairPath&, const PairPath&) = default;
};

struct SubdivisionCertificate {
    std::vector<Vertex> branch;
    std::vector<PairPath> paths; // lexicographic in (i, j)
    std::int64_t length_bound = 0;

    friend bool operator==(const SubdivisionCertificate&, const SubdivisionCertificate&) = default;
};

struct PairFailure {
    std::size_t i = 0;
    std::size_t j = 0;
    ConnectTranscript transcript;
};

/// Used colours |C| and used vertices |F u S| after each accepted pair.
struct BookkeepingStep {
    std::size_t colours = 0;
    std::size_t vertices = 0;
};

struct BuildResult {
    SubdivisionCertificate certificate; // partial when failure is set
    std::optional<PairFailure> failure;
    std::vector<BookkeepingStep> steps;

    bool ok() const { return !failure; }
};

/// Sound but incomplete search for F with d(F) >= min_avg and
/// v(F) <= max_vertices. Exhaustive up to 16 vertices.
inline std::optional<SubgraphView> find_small_dense_subgraph(const SubgraphView& view, const Rational& min_avg,
                                                             std::size_t max_vertices)
{
    if (min_avg <= 0 || max_vertices < 2) {
        return std::nullopt;
    }
    auto found = detail::capped_dense_search(view, min_avg, max_vertices).found;
    if (!found) {
        return std::nullopt;
    }
    return view.induced(found->vertices);
}

/// Greedy builder: pairs (i, j) in lexicographic order, each joined by
/// rainbow_connect while avoiding every colour already used and every vertex
/// already used except x_i and x_j. Stops at the first pair that fails.
inline BuildResult build_subdivision(const SubgraphView& view, const std::vector<Vertex>& branch,
                                     const ParamLadder& ladder, std::uint64_t seed, const ConnectOptions& options = {})
{
    if (branch.size() < 2) {
        throw std::invalid_argument("need at least two branch vertices");
    }
    auto sorted = branch;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("branch vertices must be distinct");
    }
    for (auto v : branch) {
        if (!view.has_vertex(v)) {
            throw std::invalid_argument("branch vertex " + std::to_string(v) + " is not in the graph");
        }
    }

    BuildResult out;
    out.certificate.branch = branch;
    out.certificate.length_bound = ladder.path_bound();
    AvoidSet used; // V(union of paths) u S, and the colours of all paths
    for (auto v : branch) {
        used.forbid_vertex(v);
    }
    std::uint64_t pair_index = 0;
    for (std::size_t i = 0; i < branch.size(); ++i) {
        for (std::size_t j = i + 1; j < branch.size(); ++j, ++pair_index) {
            AvoidSet avoid = used;
            avoid.allow_vertex(branch[i]);
            avoid.allow_vertex(branch[j]);
            auto r = rainbow_connect(view, branch[i], branch[j], avoid, ladder, detail::derive_seed(seed, pair_index),
                                     options);
            if (!r.ok()) {
                out.failure = PairFailure{i, j, std::move(r.transcript)};
                return out;
            }
            used.forbid_path(*r.path);
            out.certificate.paths.push_back({i, j, std::move(*r.path)});
            out.steps.push_back({used.colour_count(), used.vertex_count()});
            if (static_cast<std::int64_t>(used.colour_count()) > ladder.L ||
                static_cast<std::int64_t>(used.vertex_count()) > ladder.L) {
                throw std::logic_error("used colours or vertices exceeded L");
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Density-increment driver

struct TraceStep {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    Rational d;
};

/// G_0 = G, then each G_{i+1} a small dense subgraph of G_i, ending at G_m.
struct IncrementTrace {
    std::vector<TraceStep> steps;
    std::int64_t K = 0;
    std::string stop_reason;

    std::size_t m() const { return steps.empty() ? 0 : steps.size() - 1; }
};

enum class DriverStage { none, branch, expander, build };

inline const char* to_string(DriverStage s)
{
    switch (s) {
    case DriverStage::none: return "none";
    case DriverStage::branch: return "branch";
    case DriverStage::expander: return "expander";
    case DriverStage::build: return "build";
    }
    return "unknown";
}

struct DriverOptions {
    Mode mode = Mode::practical;
    Rational eps{1, 40};
    std::optional<std::int64_t> max_len;  // practical mode only
    std::optional<double> c;              // paper mode; explicit n_0 when empty
    std::vector<Vertex> branch;           // empty: t highest-degree vertices of H
    ConnectOptions connect;
};

struct ExpanderSummary {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    Rational d;
    Certification certification = Certification::heuristic_unrefuted;
    std::size_t shrink_steps = 0;
};

struct SubdivisionOutcome {
    std::optional<SubdivisionCertificate> certificate;
    IncrementTrace trace;
    std::optional<ParamLadder> ladder; // recomputed at v(G_m)
    std::optional<ExpanderSummary> expander;
    DriverStage failed_stage = DriverStage::none;
    std::string detail;
    std::optional<BuildResult> build;

    bool ok() const { return certificate.has_value(); }
};

namespace detail {

inline ParamLadder driver_ladder(std::uint64_t n, unsigned t, const DriverOptions& o)
{
    return o.mode == Mode::paper ? compute_ladder(n, t, o.eps, o.c) : practical_ladder(n, t, o.eps, o.max_len);
}

inline std::vector<Vertex> top_degree_vertices(const SubgraphView& h, std::size_t t)
{
    auto vs = h.vertices();
    std::stable_sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) { return h.degree(a) > h.degree(b); });
    vs.resize(std::min(t, vs.size()));
    return vs;
}

} // namespace detail

/// Runs the density-increment loop, extracts an expander H from the final
/// G_m, picks t branch vertices in H and builds the subdivision there.
///
/// Paper mode accepts an increment F when d(F) >= (eps/12) d(G_i) and
/// v(F) <= v(G_i)/K. Practical mode additionally requires d(F) >= d(G_i) and
/// v(F) >= t, so that each step is a genuine density gain that can still hold
/// the branch vertices.
inline SubdivisionOutcome find_rainbow_subdivision(const SubgraphView& view, unsigned t, std::uint64_t seed,
                                                   const DriverOptions& options = {})
{
    if (view.vertex_count() < t || t < 2) {
        throw std::invalid_argument("need at least t >= 2 vertices");
    }
    if (!options.branch.empty()) {
        auto b = options.branch;
        std::sort(b.begin(), b.end());
        if (b.size() != t || std::adjacent_find(b.begin(), b.end()) != b.end()) {
            throw std::invalid_argument("branch override must list t distinct vertices");
        }
    }
    SubdivisionOutcome out;
    const auto base = detail::driver_ladder(view.vertex_count(), t, options);
    out.trace.K = base.K;
    const Rational eps12 = options.eps / 12;

    SubgraphView current = view;
    out.trace.steps.push_back({current.vertex_count(), current.edge_count(), current.average_degree()});
    for (;;) {
        const auto di = current.average_degree();
        if (di.numerator() == 0) {
            out.trace.stop_reason = "no edges";
            break;
        }
        const auto cap = current.vertex_count() / static_cast<std::size_t>(base.K);
        const Rational need = options.mode == Mode::paper ? eps12 * di : std::max(eps12 * di, di);
        auto f = find_small_dense_subgraph(current, need, cap);
        if (f && options.mode == Mode::practical && f->vertex_count() < t) {
            f.reset();
        }
        if (!f) {
            out.trace.stop_reason = "no small dense subgraph found";
            break;
        }
        current = *f;
        out.trace.steps.push_back({current.vertex_count(), current.edge_count(), current.average_degree()});
    }
    if (options.mode == Mode::paper) {
        Rational factor = 1;
        for (std::size_t i = 0; i < out.trace.m(); ++i) {
            factor *= eps12;
        }
        if (current.average_degree() < factor * view.average_degree()) {
            throw std::logic_error("d(G_m) fell below (eps/12)^m d(G)");
        }
    }

    if (current.vertex_count() < t) {
        out.failed_stage = DriverStage::branch;
        out.detail = "G_m has fewer than t vertices";
        return out;
    }
    const auto ladder = detail::driver_ladder(current.vertex_count(), t, options);
    out.ladder = ladder;
    if (current.edge_count() == 0) {
        out.failed_stage = DriverStage::expander;
        out.detail = "G_m has no edges";
        return out;
    }
    const auto piece = extract_expander(current, current.average_degree(), ladder.lambda_rational, options.eps,
                                        options.mode == Mode::paper);
    out.expander = ExpanderSummary{piece.subgraph.vertex_count(), piece.subgraph.edge_count(), piece.params.d,
                                   piece.certification, piece.shrink_steps};
    const auto& h = piece.subgraph;

    std::vector<Vertex> branch = options.branch;
    if (branch.empty()) {
        if (h.vertex_count() < t) {
            out.failed_stage = DriverStage::branch;
            out.detail = "expander has fewer than t vertices";
            return out;
        }
        branch = detail::top_degree_vertices(h, t);
    } else {
        for (auto v : branch) {
            if (!h.has_vertex(v)) {
                out.failed_stage = DriverStage::branch;
                out.detail = "branch vertex " + std::to_string(v) + " is not in the expander";
                return out;
            }
        }
    }

    auto built = build_subdivision(h, branch, ladder, seed, options.connect);
    if (built.ok()) {
        out.certificate = built.certificate;
    } else {
        out.failed_stage = DriverStage::build;
        out.detail = "pair (" + std::to_string(built.failure->i) + ", " + std::to_string(built.failure->j) +
                     ") failed at stage " + to_string(built.failure->transcript.failed_stage);
    }
    out.build = std::move(built);
    return out;
}

} // namespace rainbow
