#pragma once

// Brute-force verifiers. These share no search code with the pipeline and
// refuse inputs beyond their exhaustive caps instead of sampling.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rainbow/expander.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/rainbow_search.hpp"
#include "rainbow/rational.hpp"
#include "rainbow/subdivision.hpp"

namespace rainbow {

class OracleLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t default_oracle_cap = 16;

/// Cycle v_0 v_1 ... v_{k-1}; colours[i] is the colour of v_i v_{i+1 mod k}.
struct RainbowCycle {
    std::vector<Vertex> vertices;
    std::vector<Colour> colours;
};

/// Exhaustive search for a rainbow cycle of length at most max_len. Each
/// cycle is visited once: rooted at its smallest vertex, with the second
/// vertex smaller than the last. Partial paths that repeat a colour are cut.
inline std::optional<RainbowCycle> brute_rainbow_cycle(const SubgraphView& view, std::size_t max_len)
{
    const auto& g = view.graph();
    if (max_len > view.vertex_count()) {
        throw std::invalid_argument("max-len exceeds the number of vertices");
    }
    if (max_len < 3) {
        return std::nullopt;
    }
    std::vector<char> on_path(g.vertex_count(), 0), colour_used(g.colour_count(), 0);
    std::vector<Vertex> path;
    std::vector<Colour> colours;
    std::optional<RainbowCycle> found;

    auto dfs = [&](auto&& self, Vertex root, Vertex u) -> bool {
        if (path.size() >= 3) {
            if (auto e = g.find_edge(u, root); e && view.has_edge(*e) && !colour_used[g.edge(*e).colour] &&
                                               path[1] < path.back()) {
                found = RainbowCycle{path, colours};
                found->colours.push_back(g.edge(*e).colour);
                return true;
            }
        }
        if (path.size() == max_len) {
            return false;
        }
        bool done = false;
        view.for_each_incident(u, [&](const Incidence& inc) {
            if (done || inc.neighbour <= root || on_path[inc.neighbour] || colour_used[inc.colour]) {
                return;
            }
            on_path[inc.neighbour] = 1;
            colour_used[inc.colour] = 1;
            path.push_back(inc.neighbour);
            colours.push_back(inc.colour);
            done = self(self, root, inc.neighbour);
            path.pop_back();
            colours.pop_back();
            on_path[inc.neighbour] = 0;
            colour_used[inc.colour] = 0;
        });
        return done;
    };
    for (auto r : view.vertices()) {
        path = {r};
        on_path[r] = 1;
        const bool hit = dfs(dfs, r, r);
        on_path[r] = 0;
        if (hit) {
            return found;
        }
    }
    return std::nullopt;
}

/// Outcome of an exhaustive check; `counterexample` is the offending
/// subgraph when one exists.
struct OracleVerdict {
    bool holds = false;
    std::string reason;
    std::optional<SubgraphView> counterexample;
};

namespace detail {

// Local adjacency bitmasks for a view with at most 16 vertices.
struct SmallGraph {
    std::vector<Vertex> ids;
    std::vector<std::uint32_t> adj;

    explicit SmallGraph(const SubgraphView& view, std::size_t cap)
    {
        if (view.vertex_count() > cap || cap > 30) {
            throw OracleLimitError("exhaustive oracle limited to " + std::to_string(cap) + " vertices, got " +
                                   std::to_string(view.vertex_count()));
        }
        ids = view.vertices();
        adj.assign(ids.size(), 0);
        for (std::size_t a = 0; a < ids.size(); ++a) {
            view.for_each_incident(ids[a], [&](const Incidence& inc) {
                auto b = std::lower_bound(ids.begin(), ids.end(), inc.neighbour) - ids.begin();
                adj[a] |= 1u << b;
            });
        }
    }

    std::size_t edges_in(std::uint32_t s) const
    {
        std::size_t twice = 0;
        for (std::size_t a = 0; a < ids.size(); ++a) {
            if (s & (1u << a)) {
                twice += static_cast<std::size_t>(std::popcount(adj[a] & s));
            }
        }
        return twice / 2;
    }

    std::vector<Vertex> members(std::uint32_t s) const
    {
        std::vector<Vertex> out;
        for (std::size_t a = 0; a < ids.size(); ++a) {
            if (s & (1u << a)) {
                out.push_back(ids[a]);
            }
        }
        return out;
    }
};

inline Rational avg(std::size_t edges, std::size_t vertices)
{
    return Rational(2 * static_cast<std::int64_t>(edges), static_cast<std::int64_t>(vertices));
}

} // namespace detail

/// d(H) >= d and every proper subgraph has average degree below d. Proper
/// subgraphs are covered by all proper induced subgraphs plus H minus one edge.
inline OracleVerdict brute_d_minimal_check(const SubgraphView& h, const Rational& d,
                                           std::size_t cap = default_oracle_cap)
{
    const detail::SmallGraph sg(h, cap);
    OracleVerdict out;
    if (h.empty() || h.average_degree() < d) {
        out.reason = "average degree below d";
        return out;
    }
    const auto n = sg.ids.size();
    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t s = 1; s < full; ++s) {
        if (detail::avg(sg.edges_in(s), static_cast<std::size_t>(std::popcount(s))) >= d) {
            out.reason = "proper induced subgraph with average degree at least d";
            out.counterexample = h.induced(sg.members(s));
            return out;
        }
    }
    if (h.edge_count() > 0 && detail::avg(h.edge_count() - 1, n) >= d) {
        auto ids = h.edge_ids();
        out.reason = "removing one edge keeps average degree at least d";
        out.counterexample = h.without_edges(std::span<const EdgeId>(ids.data(), 1));
        return out;
    }
    out.holds = true;
    return out;
}

/// d-minimality at params.d plus: every S with |S| <= (1 - eps) v has
/// d(S) <= (1 - lambda) d.
inline OracleVerdict brute_expander_check(const SubgraphView& h, const ExpanderParams& params,
                                          std::size_t cap = default_oracle_cap)
{
    check_lambda_eps(params.lambda, params.eps);
    auto minimal = brute_d_minimal_check(h, params.d, cap);
    if (!minimal.holds) {
        minimal.reason = "not d-minimal: " + minimal.reason;
        return minimal;
    }
    const detail::SmallGraph sg(h, cap);
    const auto n = sg.ids.size();
    const auto size_cap = small_set_cap(params.eps, n);
    const Rational limit = (1 - params.lambda) * params.d;
    OracleVerdict out;
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        const auto size = static_cast<std::size_t>(std::popcount(s));
        if (size <= size_cap && detail::avg(sg.edges_in(s), size) > limit) {
            out.reason = "small set with average degree above (1 - lambda) d";
            out.counterexample = h.induced(sg.members(s));
            return out;
        }
    }
    out.holds = true;
    return out;
}

/// Accepts or rejects with the first violated condition.
struct Verdict {
    bool accepted = false;
    std::string reason;
};

/// Checks that the certificate is a rainbow K_t-subdivision in g with every
/// path of length at most max_len.
inline Verdict verify_subdivision(const ColouredGraph& g, const SubdivisionCertificate& cert, std::size_t t,
                                  std::size_t max_len)
{
    auto reject = [](std::string why) { return Verdict{false, std::move(why)}; };
    if (cert.branch.size() != t) {
        return reject("wrong number of branch vertices: expected " + std::to_string(t) + ", got " +
                      std::to_string(cert.branch.size()));
    }
    std::vector<char> is_branch(g.vertex_count(), 0);
    for (auto v : cert.branch) {
        if (v >= g.vertex_count()) {
            return reject("branch vertex " + std::to_string(v) + " out of range");
        }
        if (is_branch[v]) {
            return reject("branch vertex " + std::to_string(v) + " repeated");
        }
        is_branch[v] = 1;
    }
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& p : cert.paths) {
        if (p.i >= p.j || p.j >= t) {
            return reject("unexpected pair (" + std::to_string(p.i) + ", " + std::to_string(p.j) + ")");
        }
        if (!pairs.insert({p.i, p.j}).second) {
            return reject("duplicate pair (" + std::to_string(p.i) + ", " + std::to_string(p.j) + ")");
        }
    }
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = i + 1; j < t; ++j) {
            if (!pairs.count({i, j})) {
                return reject("missing pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }

    std::vector<char> interior_used(g.vertex_count(), 0), colour_used(g.colour_count(), 0);
    for (const auto& p : cert.paths) {
        const auto name = "path (" + std::to_string(p.i) + ", " + std::to_string(p.j) + "): ";
        const auto& vs = p.path.vertices;
        const auto& cs = p.path.colours;
        if (vs.size() < 2 || cs.size() + 1 != vs.size()) {
            return reject(name + "malformed path");
        }
        if (vs.front() != cert.branch[p.i] || vs.back() != cert.branch[p.j]) {
            return reject(name + "wrong endpoints");
        }
        if (cs.size() > max_len) {
            return reject(name + "length " + std::to_string(cs.size()) + " exceeds " + std::to_string(max_len));
        }
        std::vector<Vertex> seen;
        for (std::size_t s = 0; s < vs.size(); ++s) {
            if (vs[s] >= g.vertex_count()) {
                return reject(name + "vertex " + std::to_string(vs[s]) + " out of range");
            }
            if (std::find(seen.begin(), seen.end(), vs[s]) != seen.end()) {
                return reject(name + "repeated vertex " + std::to_string(vs[s]));
            }
            seen.push_back(vs[s]);
        }
        for (std::size_t s = 0; s + 1 < vs.size(); ++s) {
            auto e = g.find_edge(vs[s], vs[s + 1]);
            if (!e) {
                return reject(name + "no edge between " + std::to_string(vs[s]) + " and " +
                              std::to_string(vs[s + 1]));
            }
            if (g.edge(*e).colour != cs[s]) {
                return reject(name + "edge " + std::to_string(vs[s]) + "-" + std::to_string(vs[s + 1]) +
                              " has colour " + std::to_string(g.edge(*e).colour) + ", not " + std::to_string(cs[s]));
            }
        }
        for (std::size_t s = 1; s + 1 < vs.size(); ++s) {
            if (is_branch[vs[s]]) {
                return reject(name + "interior meets branch vertex " + std::to_string(vs[s]));
            }
            if (interior_used[vs[s]]) {
                return reject(name + "interior vertex " + std::to_string(vs[s]) + " shared with another path");
            }
            interior_used[vs[s]] = 1;
        }
        for (auto c : cs) {
            if (colour_used[c]) {
                return reject(name + "repeated colour " + std::to_string(c));
            }
            colour_used[c] = 1;
        }
    }
    return {true, {}};
}

} // namespace rainbow
