#pragma once

// Test-side helpers and brute-force reference computations. Nothing here
// calls the search code under test.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/instances.hpp"
#include "rainbow/rainbow_search.hpp"
#include "rainbow/rational.hpp"

namespace rainbow::testing {

/// Builds a graph from (u, v, colour) triples; the colour count is max + 1.
inline ColouredGraph make_graph(std::size_t n, std::vector<Edge> edges)
{
    std::size_t k = 0;
    for (auto& e : edges) {
        if (e.u > e.v) {
            std::swap(e.u, e.v);
        }
        k = std::max<std::size_t>(k, e.colour + 1);
    }
    return ColouredGraph(n, k, std::move(edges));
}

/// Clique on `vertices`, each edge taking the next fresh colour.
inline void add_clique(std::vector<Edge>& edges, const std::vector<Vertex>& vertices, Colour& next_colour)
{
    for (std::size_t a = 0; a < vertices.size(); ++a) {
        for (std::size_t b = a + 1; b < vertices.size(); ++b) {
            edges.push_back({std::min(vertices[a], vertices[b]), std::max(vertices[a], vertices[b]), next_colour++});
        }
    }
}

inline void add_path(std::vector<Edge>& edges, const std::vector<Vertex>& vertices, Colour& next_colour)
{
    for (std::size_t a = 0; a + 1 < vertices.size(); ++a) {
        edges.push_back({std::min(vertices[a], vertices[a + 1]), std::max(vertices[a], vertices[a + 1]), next_colour++});
    }
}

inline std::vector<Vertex> range(Vertex from, Vertex to)
{
    std::vector<Vertex> out;
    for (auto v = from; v < to; ++v) {
        out.push_back(v);
    }
    return out;
}

inline ColouredGraph complete_rainbow(std::size_t n) { return gen_rainbow_complete(n); }

inline ColouredGraph cycle(std::size_t n, const std::vector<Colour>& colours)
{
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        auto a = static_cast<Vertex>(i), b = static_cast<Vertex>((i + 1) % n);
        edges.push_back({std::min(a, b), std::max(a, b), colours[i % colours.size()]});
    }
    return make_graph(n, std::move(edges));
}

/// Seeded G(n, p) with greedy colouring, small n.
inline ColouredGraph random_graph(std::size_t n, double p, std::uint64_t seed)
{
    return gen_random_proper(n, p, ColouringRule::greedy, seed);
}

inline std::size_t edges_inside(const SubgraphView& view, const std::vector<Vertex>& subset)
{
    std::vector<char> in(view.graph().vertex_count(), 0);
    for (auto v : subset) {
        in[v] = 1;
    }
    std::size_t count = 0;
    for (auto e : view.edge_ids()) {
        const auto& edge = view.graph().edge(e);
        count += in[edge.u] && in[edge.v];
    }
    return count;
}

inline Rational avg_degree(std::size_t edges, std::size_t vertices)
{
    return Rational(2 * static_cast<std::int64_t>(edges), static_cast<std::int64_t>(vertices));
}

/// All nonempty vertex subsets of a view with at most 20 vertices.
template <typename Fn>
void for_each_subset(const SubgraphView& view, Fn&& fn)
{
    const auto ids = view.vertices();
    const std::uint32_t n = static_cast<std::uint32_t>(ids.size());
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<Vertex> subset;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                subset.push_back(ids[i]);
            }
        }
        fn(subset);
    }
}

/// Largest e(S)/|S| over all nonempty S.
inline Rational brute_max_density(const SubgraphView& view)
{
    Rational best(0);
    for_each_subset(view, [&](const std::vector<Vertex>& s) {
        best = std::max(best, Rational(static_cast<std::int64_t>(edges_inside(view, s)),
                                       static_cast<std::int64_t>(s.size())));
    });
    return best;
}

/// Vertices joined to `source` by some rainbow path of length <= max_len
/// avoiding `avoid` (plain DFS over all simple paths).
inline std::vector<char> brute_rainbow_reachable(const SubgraphView& view, Vertex source, const AvoidSet& avoid,
                                                 std::size_t max_len)
{
    const auto& g = view.graph();
    std::vector<char> reach(g.vertex_count(), 0), on(g.vertex_count(), 0), used(g.colour_count(), 0);
    auto dfs = [&](auto&& self, Vertex u, std::size_t len) -> void {
        reach[u] = 1;
        if (len == max_len) {
            return;
        }
        view.for_each_incident(u, [&](const Incidence& inc) {
            if (on[inc.neighbour] || used[inc.colour] || avoid.vertex_forbidden(inc.neighbour) ||
                avoid.colour_forbidden(inc.colour)) {
                return;
            }
            on[inc.neighbour] = used[inc.colour] = 1;
            self(self, inc.neighbour, len + 1);
            on[inc.neighbour] = used[inc.colour] = 0;
        });
    };
    on[source] = 1;
    dfs(dfs, source, 0);
    return reach;
}

} // namespace rainbow::testing
