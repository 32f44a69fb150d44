#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rainbow/expander.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/ladder.hpp"
#include "rainbow/rational.hpp"

namespace rainbow {

/// Vertex sequence with one colour per step.
struct RainbowPath {
    std::vector<Vertex> vertices;
    std::vector<Colour> colours;

    std::size_t length() const { return colours.size(); }
    friend bool operator==(const RainbowPath&, const RainbowPath&) = default;
};

inline RainbowPath reversed(RainbowPath p)
{
    std::reverse(p.vertices.begin(), p.vertices.end());
    std::reverse(p.colours.begin(), p.colours.end());
    return p;
}

/// Forbidden vertices F and forbidden colours C.
class AvoidSet {
public:
    void forbid_vertex(Vertex v)
    {
        grow(vertices_, v);
        if (!vertices_[v]) {
            vertices_[v] = 1;
            ++nv_;
        }
    }
    void allow_vertex(Vertex v)
    {
        if (vertex_forbidden(v)) {
            vertices_[v] = 0;
            --nv_;
        }
    }
    void forbid_colour(Colour c)
    {
        grow(colours_, c);
        if (!colours_[c]) {
            colours_[c] = 1;
            ++nc_;
        }
    }
    void forbid_path(const RainbowPath& p)
    {
        for (auto v : p.vertices) {
            forbid_vertex(v);
        }
        for (auto c : p.colours) {
            forbid_colour(c);
        }
    }

    bool vertex_forbidden(Vertex v) const { return v < vertices_.size() && vertices_[v]; }
    bool colour_forbidden(Colour c) const { return c < colours_.size() && colours_[c]; }
    std::size_t vertex_count() const { return nv_; }
    std::size_t colour_count() const { return nc_; }

    std::vector<Vertex> vertices() const { return members<Vertex>(vertices_); }
    std::vector<Colour> colours() const { return members<Colour>(colours_); }

private:
    static void grow(std::vector<char>& mask, std::size_t i)
    {
        if (i >= mask.size()) {
            mask.resize(i + 1, 0);
        }
    }
    template <typename T>
    static std::vector<T> members(const std::vector<char>& mask)
    {
        std::vector<T> out;
        for (std::size_t i = 0; i < mask.size(); ++i) {
            if (mask[i]) {
                out.push_back(static_cast<T>(i));
            }
        }
        return out;
    }

    std::vector<char> vertices_;
    std::vector<char> colours_;
    std::size_t nv_ = 0;
    std::size_t nc_ = 0;
};

/// Vertices reached by the layered rainbow search, each with its fixed witness path.
class ReachResult {
public:
    ReachResult(Vertex source, std::size_t n) : source_(source), parent_(n, UINT32_MAX), colour_(n, 0), depth_(n, -1)
    {
    }

    Vertex source() const { return source_; }
    bool reached(Vertex v) const { return v < depth_.size() && depth_[v] >= 0; }
    std::size_t size() const { return order_.size(); }
    /// Reached vertices in discovery order.
    const std::vector<Vertex>& vertices() const { return order_; }
    /// Cumulative sizes |U_0|, |U_1|, ... up to the last layer that grew.
    const std::vector<std::size_t>& layers() const { return layers_; }

    RainbowPath path_to(Vertex v) const
    {
        if (!reached(v)) {
            throw std::invalid_argument("vertex " + std::to_string(v) + " was not reached");
        }
        RainbowPath p;
        for (auto x = v; x != source_; x = parent_[x]) {
            p.vertices.push_back(x);
            p.colours.push_back(colour_[x]);
        }
        p.vertices.push_back(source_);
        return reversed(std::move(p));
    }

private:
    friend ReachResult rainbow_reach(const SubgraphView&, Vertex, const AvoidSet&, std::int64_t);

    Vertex source_;
    std::vector<Vertex> parent_;
    std::vector<Colour> colour_;
    std::vector<std::int64_t> depth_;
    std::vector<Vertex> order_;
    std::vector<std::size_t> layers_;
};

/// Layered rainbow search from `source`.
///
/// U_0 = {source}. U_{i+1} adds every w outside U_i reached by an edge uw with
/// u in U_i, w not forbidden, colour(uw) neither forbidden nor on the fixed
/// witness P(u); then P(w) = P(u) + uw. Witnesses are fixed on first discovery,
/// scanning layer vertices in discovery order and neighbours by id. This is
/// the fixed-witness relaxation: a vertex with some rainbow path can still be
/// missed when every extension clashes with stored witnesses.
inline ReachResult rainbow_reach(const SubgraphView& view, Vertex source, const AvoidSet& avoid, std::int64_t max_len)
{
    if (!view.has_vertex(source)) {
        throw std::invalid_argument("source " + std::to_string(source) + " is not in the view");
    }
    if (avoid.vertex_forbidden(source)) {
        throw std::invalid_argument("source " + std::to_string(source) + " is forbidden");
    }
    const auto& g = view.graph();
    ReachResult r(source, g.vertex_count());
    r.depth_[source] = 0;
    r.order_.push_back(source);
    r.layers_.push_back(1);

    std::vector<std::uint32_t> stamp(g.colour_count(), 0);
    std::uint32_t tick = 0;
    std::vector<Vertex> frontier{source};
    for (std::int64_t layer = 0; layer < max_len && !frontier.empty(); ++layer) {
        std::vector<Vertex> next;
        for (auto u : frontier) {
            ++tick;
            for (auto x = u; x != source; x = r.parent_[x]) {
                stamp[r.colour_[x]] = tick;
            }
            view.for_each_incident(u, [&](const Incidence& inc) {
                const auto w = inc.neighbour;
                if (r.depth_[w] >= 0 || avoid.vertex_forbidden(w) || avoid.colour_forbidden(inc.colour) ||
                    stamp[inc.colour] == tick) {
                    return;
                }
                r.depth_[w] = layer + 1;
                r.parent_[w] = u;
                r.colour_[w] = inc.colour;
                next.push_back(w);
            });
        }
        if (next.empty()) {
            break;
        }
        r.order_.insert(r.order_.end(), next.begin(), next.end());
        r.layers_.push_back(r.order_.size());
        frontier = std::move(next);
    }
    return r;
}

/// Checks that `path` runs from `from` to `to` through edges of the view with
/// the stated colours, repeats no vertex or colour, avoids `avoid` and has
/// length at most max_len. Returns a description of the first problem.
inline std::optional<std::string> check_rainbow_path(const SubgraphView& view, const RainbowPath& path, Vertex from,
                                                     Vertex to, const AvoidSet& avoid, std::int64_t max_len)
{
    if (path.vertices.empty() || path.vertices.size() != path.colours.size() + 1) {
        return "malformed path";
    }
    if (path.vertices.front() != from || path.vertices.back() != to) {
        return "wrong endpoints";
    }
    if (static_cast<std::int64_t>(path.length()) > max_len) {
        return "path longer than " + std::to_string(max_len);
    }
    const auto& g = view.graph();
    std::vector<char> seen_v(g.vertex_count(), 0), seen_c(g.colour_count(), 0);
    for (std::size_t i = 0; i < path.vertices.size(); ++i) {
        auto v = path.vertices[i];
        if (v >= g.vertex_count() || !view.has_vertex(v)) {
            return "vertex " + std::to_string(v) + " outside the graph";
        }
        if (seen_v[v]++) {
            return "vertex " + std::to_string(v) + " repeated";
        }
        if (avoid.vertex_forbidden(v)) {
            return "forbidden vertex " + std::to_string(v);
        }
        if (i == 0) {
            continue;
        }
        auto c = path.colours[i - 1];
        auto e = g.find_edge(path.vertices[i - 1], v);
        if (!e || !view.has_edge(*e) || g.edge(*e).colour != c) {
            return "no edge of colour " + std::to_string(c) + " between " + std::to_string(path.vertices[i - 1]) +
                   " and " + std::to_string(v);
        }
        if (seen_c[c]++) {
            return "colour " + std::to_string(c) + " repeated";
        }
        if (avoid.colour_forbidden(c)) {
            return "forbidden colour " + std::to_string(c);
        }
    }
    return std::nullopt;
}

/// Removes closed sub-walks: whenever a vertex recurs, everything between its
/// first visit and the recurrence is cut. The result uses a subset of the
/// walk's edges, so a rainbow walk becomes a rainbow path.
inline RainbowPath shortcut_walk(const RainbowPath& walk)
{
    RainbowPath out;
    for (std::size_t i = 0; i < walk.vertices.size(); ++i) {
        const auto v = walk.vertices[i];
        auto it = std::find(out.vertices.begin(), out.vertices.end(), v);
        if (it != out.vertices.end()) {
            auto keep = static_cast<std::size_t>(it - out.vertices.begin());
            out.vertices.resize(keep + 1);
            out.colours.resize(keep);
            continue;
        }
        if (i > 0) {
            out.colours.push_back(walk.colours[i - 1]);
        }
        out.vertices.push_back(v);
    }
    return out;
}

inline RainbowPath concatenate(RainbowPath a, const RainbowPath& b)
{
    if (a.vertices.empty()) {
        return b;
    }
    if (b.vertices.empty()) {
        return a;
    }
    if (a.vertices.back() != b.vertices.front()) {
        throw std::logic_error("walk segments do not meet");
    }
    a.vertices.insert(a.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
    a.colours.insert(a.colours.end(), b.colours.begin(), b.colours.end());
    return a;
}

// ---------------------------------------------------------------------------
// Colour split

/// Each colour goes to group 1 or 2; G_1 and G_2 are the spanning subgraphs
/// of those colours.
struct ColourSplit {
    std::vector<std::uint8_t> group_of_colour;
    std::uint64_t seed = 0;
    unsigned retries = 0;

    SubgraphView part(const SubgraphView& view, int group) const
    {
        return view.filter_edges([&](const Edge& e) { return group_of_colour[e.colour] == group; });
    }
};

/// Whether d(G_i) >= d/3 and delta(G_i) >= d(G_i)/3 for both groups.
struct SplitCheck {
    Rational d;
    Rational d1, d2;
    std::size_t delta1 = 0, delta2 = 0;
    bool ok = false;
};

inline SplitCheck check_split(const SubgraphView& view, const ColourSplit& split)
{
    SplitCheck s;
    s.d = view.average_degree();
    auto g1 = split.part(view, 1), g2 = split.part(view, 2);
    s.d1 = g1.average_degree();
    s.d2 = g2.average_degree();
    s.delta1 = view.empty() ? 0 : degree_stats(g1).min;
    s.delta2 = view.empty() ? 0 : degree_stats(g2).min;
    auto delta_ok = [](std::size_t delta, const Rational& di) {
        return Rational(3 * static_cast<std::int64_t>(delta)) >= di;
    };
    s.ok = !view.empty() && 3 * s.d1 >= s.d && 3 * s.d2 >= s.d && s.d1 > 0 && s.d2 > 0 && delta_ok(s.delta1, s.d1) &&
           delta_ok(s.delta2, s.d2);
    return s;
}

class SplitError : public std::runtime_error {
public:
    SplitError(const std::string& what, ColourSplit best) : std::runtime_error(what), best_(std::move(best)) {}
    const ColourSplit& best() const { return best_; }

private:
    ColourSplit best_;
};

namespace detail {

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt)
{
    // splitmix64 finaliser
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline double split_score(const SplitCheck& s)
{
    if (s.d <= 0 || s.d1 <= 0 || s.d2 <= 0) {
        return -1;
    }
    return std::min({to_double(s.d1 / s.d), to_double(s.d2 / s.d), static_cast<double>(s.delta1) / to_double(s.d1),
                     static_cast<double>(s.delta2) / to_double(s.d2)});
}

} // namespace detail

/// Seeded random split, retried with derived seeds until both groups satisfy
/// the density and minimum-degree inequalities. Throws SplitError carrying
/// the best split found once `budget` attempts have failed.
inline ColourSplit split_colours(const SubgraphView& view, std::uint64_t seed, unsigned budget = 64)
{
    if (view.graph().colour_count() == 0) {
        throw std::invalid_argument("colour split needs at least one colour");
    }
    std::optional<ColourSplit> best;
    double best_score = -2;
    for (unsigned attempt = 0; attempt < budget; ++attempt) {
        std::mt19937_64 rng(detail::derive_seed(seed, attempt));
        ColourSplit s;
        s.seed = seed;
        s.retries = attempt;
        s.group_of_colour.resize(view.graph().colour_count());
        for (auto& grp : s.group_of_colour) {
            grp = static_cast<std::uint8_t>(1 + (rng() >> 63));
        }
        auto check = check_split(view, s);
        if (check.ok) {
            return s;
        }
        if (auto score = detail::split_score(check); score > best_score) {
            best_score = score;
            best = s;
        }
    }
    throw SplitError("no colour split satisfied the degree inequalities within " + std::to_string(budget) +
                         " attempts",
                     *best);
}

/// If e(G') >= (1 - gamma) e(G), then v(G') >= (1 - 3 gamma) v(G), for G with
/// delta(G) >= d(G)/3. Returns whether that implication held here; throws
/// std::invalid_argument when G' is not inside G or the degree condition fails.
inline bool check_edge_to_vertex(const SubgraphView& g, const SubgraphView& sub, const Rational& gamma)
{
    if (gamma <= 0) {
        throw std::invalid_argument("gamma must be positive");
    }
    for (auto v : sub.vertices()) {
        if (!g.has_vertex(v)) {
            throw std::invalid_argument("G' has a vertex outside G");
        }
    }
    for (auto e : sub.edge_ids()) {
        if (!g.has_edge(e)) {
            throw std::invalid_argument("G' has an edge outside G");
        }
    }
    if (g.empty() || Rational(3 * static_cast<std::int64_t>(degree_stats(g).min)) < g.average_degree()) {
        throw std::invalid_argument("edge-to-vertex check needs delta(G) >= d(G)/3");
    }
    const auto e = Rational(static_cast<std::int64_t>(g.edge_count()));
    const auto v = Rational(static_cast<std::int64_t>(g.vertex_count()));
    const bool premise = Rational(static_cast<std::int64_t>(sub.edge_count())) >= (1 - gamma) * e;
    const bool conclusion = Rational(static_cast<std::int64_t>(sub.vertex_count())) >= (1 - 3 * gamma) * v;
    return !premise || conclusion;
}

// ---------------------------------------------------------------------------
// Rainbow connection

enum class ConnectStage { none, reach_x, split, cover, reach_y, meeting, verification };

inline const char* to_string(ConnectStage s)
{
    switch (s) {
    case ConnectStage::none: return "none";
    case ConnectStage::reach_x: return "reach-x";
    case ConnectStage::split: return "split";
    case ConnectStage::cover: return "cover";
    case ConnectStage::reach_y: return "reach-y";
    case ConnectStage::meeting: return "meeting";
    case ConnectStage::verification: return "verification";
    }
    return "unknown";
}

struct PieceSummary {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    Rational d;
    Certification certification = Certification::heuristic_unrefuted;
};

struct EntryPoint {
    std::size_t piece = 0;
    Vertex vertex = 0;
    std::size_t path_length = 0;
};

/// Everything the connection procedure decided, kept for failure reports and
/// for checking its bookkeeping.
struct ConnectTranscript {
    ConnectStage failed_stage = ConnectStage::none;
    std::string detail;
    bool early_exit = false;

    std::optional<ColourSplit> split;
    std::vector<PieceSummary> cover1, cover2;
    std::size_t uncovered1 = 0, uncovered2 = 0;

    std::size_t reach_x_size = 0;
    std::size_t reach_y_size = 0;
    std::vector<EntryPoint> entries_x, entries_y; // J_1 and J_2 with x_j / y_j
    std::size_t f1_vertices = 0, f1_colours = 0;
    std::size_t f2_vertices = 0, f2_colours = 0;
    std::size_t avoid_vertices = 0, avoid_colours = 0; // |F u V(F1) u V(F2)|, |C u C(F1) u C(F2)|
    std::int64_t avoid_bound = 0;                     // L + (s1 + s2)(ell + 2)

    std::vector<std::size_t> inner_reach1, inner_reach2; // |U_{1,j}|, |U_{2,j}|
    std::optional<bool> edge_to_vertex1, edge_to_vertex2; // empty when the check was skipped

    std::optional<Vertex> meeting;
    std::size_t walk_length = 0;
    std::size_t path_length = 0;
    std::int64_t length_bound = 0;
};

struct ConnectResult {
    std::optional<RainbowPath> path;
    ConnectTranscript transcript;

    bool ok() const { return path.has_value(); }
};

struct ConnectOptions {
    /// Return the witness P(y) directly when y is reached from x.
    bool early_exit = true;
    unsigned split_budget = 64;
};

namespace detail {

inline std::int64_t inner_reach_length(const ParamLadder& ladder, std::size_t piece_vertices)
{
    if (ladder.mode == Mode::practical || piece_vertices < 2) {
        return ladder.reach_len;
    }
    auto len = static_cast<std::int64_t>(
                   std::ceil(4.0 * std::log(static_cast<double>(piece_vertices)) / ladder.lambda)) +
               1;
    return std::min(len, ladder.reach_len);
}

inline PieceSummary summarize(const ExpanderPiece& p)
{
    return {p.subgraph.vertex_count(), p.subgraph.edge_count(), p.params.d, p.certification};
}

} // namespace detail

/// Joins x and y by a rainbow path avoiding `avoid`, following the two-group
/// expander argument:
///  1. S_x = rainbow reach from x (if y is already there, return P(y));
///  2. split colours into two groups satisfying the degree inequalities;
///  3. cover each group by expanders;
///  4. in every group-1 piece meeting S_x fix its lowest entry x_j and P_j;
///  5. S_y = reach from y also avoiding all P_j; entries y_j and Q_j in group-2 pieces;
///  6. inside each piece, reach from its entry avoiding everything fixed so far;
///  7. meet at the lowest z reached from both sides, concatenate
///     P_i + P'_i + Q'_j + Q_j and shortcut the walk to a path.
/// Each segment has at most ladder.reach_len edges, so the result has length
/// at most 4 ell + 4. Failures report the stage in the transcript.
inline ConnectResult rainbow_connect(const SubgraphView& view, Vertex x, Vertex y, const AvoidSet& avoid,
                                     const ParamLadder& ladder, std::uint64_t seed, const ConnectOptions& options = {})
{
    if (x == y) {
        throw std::invalid_argument("rainbow_connect needs x != y");
    }
    if (!view.has_vertex(x) || !view.has_vertex(y)) {
        throw std::invalid_argument("endpoints must lie in the view");
    }
    if (avoid.vertex_forbidden(x) || avoid.vertex_forbidden(y)) {
        throw std::invalid_argument("endpoints must not be forbidden");
    }
    if (static_cast<std::int64_t>(avoid.vertex_count()) > ladder.L ||
        static_cast<std::int64_t>(avoid.colour_count()) > ladder.L) {
        throw std::invalid_argument("avoid set larger than L = " + std::to_string(ladder.L));
    }

    ConnectResult result;
    auto& tr = result.transcript;
    tr.length_bound = ladder.path_bound();
    const auto len = ladder.reach_len;
    const auto& g = view.graph();
    auto fail = [&](ConnectStage stage, std::string why) {
        tr.failed_stage = stage;
        tr.detail = std::move(why);
        return result;
    };
    auto finish = [&](RainbowPath path) {
        if (auto problem = check_rainbow_path(view, path, x, y, avoid, tr.length_bound)) {
            return fail(ConnectStage::verification, *problem);
        }
        tr.path_length = path.length();
        result.path = std::move(path);
        return result;
    };

    // 1. reach from x
    auto reach_x = rainbow_reach(view, x, avoid, len);
    if (reach_x.reached(y)) {
        if (options.early_exit) {
            tr.early_exit = true;
            tr.reach_x_size = reach_x.size();
            return finish(reach_x.path_to(y));
        }
        AvoidSet without_y = avoid;
        without_y.forbid_vertex(y);
        reach_x = rainbow_reach(view, x, without_y, len);
    }
    tr.reach_x_size = reach_x.size();
    if (reach_x.size() <= 1) {
        return fail(ConnectStage::reach_x, "no vertex reachable from x");
    }

    // 2. colour split
    try {
        tr.split = split_colours(view, seed, options.split_budget);
    } catch (const SplitError& e) {
        tr.split = e.best();
        return fail(ConnectStage::split, e.what());
    }
    const auto g1 = tr.split->part(view, 1);
    const auto g2 = tr.split->part(view, 2);

    // 3. coverings
    const auto lambda = ladder.lambda_rational;
    const auto eps = ladder.eps;
    if (g1.average_degree() < 1 || g2.average_degree() < 1) {
        return fail(ConnectStage::cover, "a colour group has average degree below 1");
    }
    const auto cover1 = cover_by_expanders(g1, lambda, eps);
    const auto cover2 = cover_by_expanders(g2, lambda, eps);
    for (const auto& p : cover1.pieces) {
        tr.cover1.push_back(detail::summarize(p));
    }
    for (const auto& p : cover2.pieces) {
        tr.cover2.push_back(detail::summarize(p));
    }
    tr.uncovered1 = cover1.uncovered.size();
    tr.uncovered2 = cover2.uncovered.size();

    auto entries = [](const Covering& cover, const ReachResult& reach) {
        std::vector<EntryPoint> out;
        for (std::size_t j = 0; j < cover.pieces.size(); ++j) {
            for (auto v : cover.pieces[j].subgraph.vertices()) {
                if (reach.reached(v)) {
                    out.push_back({j, v, reach.path_to(v).length()});
                    break;
                }
            }
        }
        return out;
    };

    // 4. entry points x_j and paths P_j
    tr.entries_x = entries(cover1, reach_x);
    AvoidSet avoid_y = avoid;
    {
        AvoidSet f1;
        for (const auto& ep : tr.entries_x) {
            const auto p = reach_x.path_to(ep.vertex);
            f1.forbid_path(p);
            avoid_y.forbid_path(p);
        }
        tr.f1_vertices = f1.vertex_count();
        tr.f1_colours = f1.colour_count();
    }
    if (avoid_y.vertex_forbidden(y)) {
        throw std::logic_error("a P_j path passes through y");
    }

    // 5. reach from y, entry points y_j and paths Q_j
    const auto reach_y = rainbow_reach(view, y, avoid_y, len);
    tr.reach_y_size = reach_y.size();
    if (reach_y.size() <= 1) {
        return fail(ConnectStage::reach_y, "no vertex reachable from y");
    }
    tr.entries_y = entries(cover2, reach_y);
    AvoidSet all = avoid_y;
    {
        AvoidSet f2;
        for (const auto& ep : tr.entries_y) {
            const auto q = reach_y.path_to(ep.vertex);
            f2.forbid_path(q);
            all.forbid_path(q);
        }
        tr.f2_vertices = f2.vertex_count();
        tr.f2_colours = f2.colour_count();
    }
    tr.avoid_vertices = all.vertex_count();
    tr.avoid_colours = all.colour_count();
    tr.avoid_bound = ladder.L + static_cast<std::int64_t>(cover1.pieces.size() + cover2.pieces.size()) * (ladder.ell + 2);
    if (static_cast<std::int64_t>(tr.avoid_vertices) > tr.avoid_bound ||
        static_cast<std::int64_t>(tr.avoid_colours) > tr.avoid_bound) {
        throw std::logic_error("avoid-set bookkeeping exceeded L + (s1 + s2)(ell + 2)");
    }

    // 6. inner reaches inside each piece
    auto inner = [&](const Covering& cover, const std::vector<EntryPoint>& eps_list, std::vector<std::size_t>& sizes) {
        std::vector<ReachResult> out;
        for (const auto& ep : eps_list) {
            AvoidSet a = all;
            a.allow_vertex(ep.vertex);
            const auto& piece = cover.pieces[ep.piece].subgraph;
            out.push_back(rainbow_reach(piece, ep.vertex, a, detail::inner_reach_length(ladder, piece.vertex_count())));
            sizes.push_back(out.back().size());
        }
        return out;
    };
    const auto inner1 = inner(cover1, tr.entries_x, tr.inner_reach1);
    const auto inner2 = inner(cover2, tr.entries_y, tr.inner_reach2);

    // G'_i: union of the pieces induced on their reached sets
    auto reached_union = [&](const Covering& cover, const std::vector<EntryPoint>& eps_list,
                             const std::vector<ReachResult>& reaches) {
        std::vector<EdgeId> edges;
        std::vector<Vertex> verts;
        for (std::size_t k = 0; k < eps_list.size(); ++k) {
            const auto& piece = cover.pieces[eps_list[k].piece].subgraph;
            for (auto e : piece.edge_ids()) {
                if (reaches[k].reached(g.edge(e).u) && reaches[k].reached(g.edge(e).v)) {
                    edges.push_back(e);
                }
            }
            verts.insert(verts.end(), reaches[k].vertices().begin(), reaches[k].vertices().end());
        }
        return SubgraphView::from_edges(g, edges, verts);
    };
    const auto gamma = 6 * eps;
    auto diagnose = [&](const SubgraphView& gi, const SubgraphView& gp) -> std::optional<bool> {
        try {
            return check_edge_to_vertex(gi, gp, gamma);
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
    };
    const auto g1_prime = reached_union(cover1, tr.entries_x, inner1);
    const auto g2_prime = reached_union(cover2, tr.entries_y, inner2);
    tr.edge_to_vertex1 = diagnose(g1, g1_prime);
    tr.edge_to_vertex2 = diagnose(g2, g2_prime);

    // 7. meeting vertex
    std::optional<std::size_t> side1, side2;
    for (auto z : view.vertices()) {
        side1.reset();
        side2.reset();
        for (std::size_t k = 0; k < inner1.size() && !side1; ++k) {
            if (inner1[k].reached(z)) {
                side1 = k;
            }
        }
        for (std::size_t k = 0; k < inner2.size() && !side2 && side1; ++k) {
            if (inner2[k].reached(z)) {
                side2 = k;
            }
        }
        if (side1 && side2) {
            tr.meeting = z;
            break;
        }
    }
    if (!tr.meeting) {
        return fail(ConnectStage::meeting, "no vertex reached from both colour groups");
    }
    const auto z = *tr.meeting;
    const auto& ei = tr.entries_x[*side1];
    const auto& ej = tr.entries_y[*side2];
    auto walk = reach_x.path_to(ei.vertex);
    walk = concatenate(std::move(walk), inner1[*side1].path_to(z));
    walk = concatenate(std::move(walk), reversed(inner2[*side2].path_to(z)));
    walk = concatenate(std::move(walk), reversed(reach_y.path_to(ej.vertex)));
    tr.walk_length = walk.length();
    return finish(shortcut_walk(walk));
}

} // namespace rainbow
