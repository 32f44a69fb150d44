#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rainbow/rational.hpp"

namespace rainbow {

using Vertex = std::uint32_t;
using Colour = std::uint32_t;
using EdgeId = std::uint32_t;

/// An undirected coloured edge, stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    Colour colour = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
    Vertex neighbour = 0;
    Colour colour = 0;
    EdgeId edge = 0;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Immutable simple graph with a proper edge colouring.
///
/// Edges are kept sorted by (u, v) and incidence lists by neighbour, so edge
/// ids and iteration order depend only on the edge set. Construction rejects
/// loops, parallel edges, out-of-range ids and improper colourings.
class ColouredGraph {
public:
    ColouredGraph() = default;

    ColouredGraph(std::size_t vertex_count, std::size_t colour_count, std::vector<Edge> edges)
        : n_(vertex_count), k_(colour_count), edges_(std::move(edges))
    {
        if (n_ > UINT32_MAX || edges_.size() > UINT32_MAX) {
            throw GraphError("graph too large");
        }
        for (auto& e : edges_) {
            if (e.u == e.v) {
                throw GraphError("self-loop at vertex " + std::to_string(e.u));
            }
            if (e.u >= n_ || e.v >= n_) {
                throw GraphError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                 ") has an endpoint outside [0, " + std::to_string(n_) + ")");
            }
            if (e.colour >= k_) {
                throw GraphError("colour " + std::to_string(e.colour) + " outside [0, " +
                                 std::to_string(k_) + ")");
            }
            if (e.u > e.v) {
                std::swap(e.u, e.v);
            }
        }
        std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
            return std::pair(a.u, a.v) < std::pair(b.u, b.v);
        });
        for (std::size_t i = 1; i < edges_.size(); ++i) {
            if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
                throw GraphError("duplicate edge (" + std::to_string(edges_[i].u) + ", " +
                                 std::to_string(edges_[i].v) + ")");
            }
        }

        offsets_.assign(n_ + 1, 0);
        for (const auto& e : edges_) {
            ++offsets_[e.u + 1];
            ++offsets_[e.v + 1];
        }
        for (std::size_t v = 0; v < n_; ++v) {
            offsets_[v + 1] += offsets_[v];
        }
        incidences_.resize(2 * edges_.size());
        std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (EdgeId id = 0; id < edges_.size(); ++id) {
            const auto& e = edges_[id];
            incidences_[fill[e.u]++] = {e.v, e.colour, id};
            incidences_[fill[e.v]++] = {e.u, e.colour, id};
        }
        for (std::size_t v = 0; v < n_; ++v) {
            std::sort(incidences_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                      incidences_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
                      [](const Incidence& a, const Incidence& b) { return a.neighbour < b.neighbour; });
        }
        if (auto bad = find_colour_clash()) {
            throw GraphError("improper colouring: vertex " + std::to_string(bad->first) + " has colour " +
                             std::to_string(bad->second) + " on two edges");
        }
    }

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t colour_count() const noexcept { return k_; }

    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(EdgeId id) const { return edges_.at(id); }

    std::span<const Incidence> incident(Vertex v) const
    {
        return {incidences_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    std::optional<EdgeId> find_edge(Vertex u, Vertex v) const
    {
        if (u >= n_ || v >= n_) {
            return std::nullopt;
        }
        auto inc = incident(u);
        auto it = std::lower_bound(inc.begin(), inc.end(), v,
                                   [](const Incidence& a, Vertex x) { return a.neighbour < x; });
        if (it != inc.end() && it->neighbour == v) {
            return it->edge;
        }
        return std::nullopt;
    }

    friend bool operator==(const ColouredGraph& a, const ColouredGraph& b)
    {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.edges_ == b.edges_;
    }

private:
    // First (vertex, colour) pair that appears twice around a vertex.
    std::optional<std::pair<Vertex, Colour>> find_colour_clash() const
    {
        std::vector<std::uint32_t> seen(k_, UINT32_MAX);
        for (Vertex v = 0; v < n_; ++v) {
            for (const auto& inc : incident(v)) {
                if (seen[inc.colour] == v) {
                    return std::pair(v, inc.colour);
                }
                seen[inc.colour] = v;
            }
        }
        return std::nullopt;
    }

    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Incidence> incidences_;
};

/// Non-owning, non-materializing subgraph: a vertex mask and an edge mask over
/// a parent graph. Every masked edge has both endpoints in the vertex mask.
/// The parent graph must outlive the view.
class SubgraphView {
public:
    /// The whole graph.
    SubgraphView(const ColouredGraph& g) // NOLINT(google-explicit-constructor)
        : g_(&g), vmask_(g.vertex_count(), 1), emask_(g.edge_count(), 1),
          nv_(g.vertex_count()), ne_(g.edge_count())
    {
    }

    const ColouredGraph& graph() const noexcept { return *g_; }

    std::size_t vertex_count() const noexcept { return nv_; }
    std::size_t edge_count() const noexcept { return ne_; }
    bool empty() const noexcept { return nv_ == 0; }

    bool has_vertex(Vertex v) const { return v < vmask_.size() && vmask_[v] != 0; }
    bool has_edge(EdgeId e) const { return e < emask_.size() && emask_[e] != 0; }

    std::vector<Vertex> vertices() const
    {
        std::vector<Vertex> out;
        out.reserve(nv_);
        for (Vertex v = 0; v < vmask_.size(); ++v) {
            if (vmask_[v]) {
                out.push_back(v);
            }
        }
        return out;
    }

    std::vector<EdgeId> edge_ids() const
    {
        std::vector<EdgeId> out;
        out.reserve(ne_);
        for (EdgeId e = 0; e < emask_.size(); ++e) {
            if (emask_[e]) {
                out.push_back(e);
            }
        }
        return out;
    }

    template <typename Fn>
    void for_each_incident(Vertex v, Fn&& fn) const
    {
        for (const auto& inc : g_->incident(v)) {
            if (emask_[inc.edge]) {
                fn(inc);
            }
        }
    }

    std::size_t degree(Vertex v) const
    {
        std::size_t d = 0;
        for_each_incident(v, [&](const Incidence&) { ++d; });
        return d;
    }

    /// Average degree 2e/v as an exact rational; zero for the empty view.
    Rational average_degree() const
    {
        if (nv_ == 0) {
            return Rational(0);
        }
        return Rational(2 * static_cast<std::int64_t>(ne_), static_cast<std::int64_t>(nv_));
    }

    /// Sorted list of distinct colours used on the view's edges.
    std::vector<Colour> colours() const
    {
        std::vector<char> used(g_->colour_count(), 0);
        for (EdgeId e = 0; e < emask_.size(); ++e) {
            if (emask_[e]) {
                used[g_->edge(e).colour] = 1;
            }
        }
        std::vector<Colour> out;
        for (Colour c = 0; c < used.size(); ++c) {
            if (used[c]) {
                out.push_back(c);
            }
        }
        return out;
    }

    /// Subgraph of this view induced on `subset`, which must lie inside the view.
    SubgraphView induced(std::span<const Vertex> subset) const
    {
        SubgraphView out(*g_, Empty{});
        for (auto v : subset) {
            if (!has_vertex(v)) {
                throw std::invalid_argument("vertex " + std::to_string(v) + " is not in the view");
            }
            if (!out.vmask_[v]) {
                out.vmask_[v] = 1;
                ++out.nv_;
            }
        }
        for (auto v : subset) {
            for_each_incident(v, [&](const Incidence& inc) {
                if (inc.neighbour > v && out.vmask_[inc.neighbour] && !out.emask_[inc.edge]) {
                    out.emask_[inc.edge] = 1;
                    ++out.ne_;
                }
            });
        }
        return out;
    }

    SubgraphView without_vertex(Vertex v) const
    {
        SubgraphView out = *this;
        if (!has_vertex(v)) {
            return out;
        }
        for_each_incident(v, [&](const Incidence& inc) {
            out.emask_[inc.edge] = 0;
            --out.ne_;
        });
        out.vmask_[v] = 0;
        --out.nv_;
        return out;
    }

    /// Same vertex set, with the given edges removed.
    SubgraphView without_edges(std::span<const EdgeId> edges) const
    {
        SubgraphView out = *this;
        for (auto e : edges) {
            if (out.has_edge(e)) {
                out.emask_[e] = 0;
                --out.ne_;
            }
        }
        return out;
    }

    /// Same vertex set, keeping only edges accepted by `keep`.
    template <typename Pred>
    SubgraphView filter_edges(Pred&& keep) const
    {
        SubgraphView out = *this;
        for (EdgeId e = 0; e < emask_.size(); ++e) {
            if (emask_[e] && !keep(g_->edge(e))) {
                out.emask_[e] = 0;
                --out.ne_;
            }
        }
        return out;
    }

    /// Drops vertices with no remaining edge.
    SubgraphView without_isolated() const
    {
        SubgraphView out = *this;
        for (Vertex v = 0; v < vmask_.size(); ++v) {
            if (vmask_[v] && degree(v) == 0) {
                out.vmask_[v] = 0;
                --out.nv_;
            }
        }
        return out;
    }

    /// Subgraph spanned by explicit edges; vertices are the endpoints plus `extra`.
    static SubgraphView from_edges(const ColouredGraph& g, std::span<const EdgeId> edges,
                                   std::span<const Vertex> extra = {})
    {
        SubgraphView out(g, Empty{});
        auto add_vertex = [&](Vertex v) {
            if (!out.vmask_[v]) {
                out.vmask_[v] = 1;
                ++out.nv_;
            }
        };
        for (auto e : edges) {
            if (!out.emask_.at(e)) {
                out.emask_[e] = 1;
                ++out.ne_;
                add_vertex(g.edge(e).u);
                add_vertex(g.edge(e).v);
            }
        }
        for (auto v : extra) {
            add_vertex(v);
        }
        return out;
    }

    static SubgraphView induced(const ColouredGraph& g, std::span<const Vertex> subset)
    {
        return SubgraphView(g).induced(subset);
    }

    friend bool operator==(const SubgraphView& a, const SubgraphView& b)
    {
        return a.g_ == b.g_ && a.vmask_ == b.vmask_ && a.emask_ == b.emask_;
    }

private:
    struct Empty {};

    SubgraphView(const ColouredGraph& g, Empty)
        : g_(&g), vmask_(g.vertex_count(), 0), emask_(g.edge_count(), 0)
    {
    }

    const ColouredGraph* g_;
    std::vector<char> vmask_;
    std::vector<char> emask_;
    std::size_t nv_ = 0;
    std::size_t ne_ = 0;
};

struct DegreeStats {
    Rational avg;
    std::size_t min = 0;
    std::size_t max = 0;
};

inline DegreeStats degree_stats(const SubgraphView& view)
{
    if (view.empty()) {
        throw std::invalid_argument("degree statistics of an empty view");
    }
    DegreeStats s{view.average_degree(), SIZE_MAX, 0};
    for (auto v : view.vertices()) {
        auto d = view.degree(v);
        s.min = std::min(s.min, d);
        s.max = std::max(s.max, d);
    }
    return s;
}

struct BoundaryCounts {
    std::size_t inside = 0;   // e(S)
    std::size_t crossing = 0; // e(S, S^c) within the view
};

inline BoundaryCounts boundary_edges(const SubgraphView& view, std::span<const Vertex> subset)
{
    std::vector<char> in(view.graph().vertex_count(), 0);
    for (auto v : subset) {
        if (!view.has_vertex(v)) {
            throw std::invalid_argument("vertex " + std::to_string(v) + " is not in the view");
        }
        in[v] = 1;
    }
    BoundaryCounts out;
    for (Vertex v = 0; v < in.size(); ++v) {
        if (!in[v]) {
            continue;
        }
        view.for_each_incident(v, [&](const Incidence& inc) {
            if (!in[inc.neighbour]) {
                ++out.crossing;
            } else if (inc.neighbour > v) {
                ++out.inside;
            }
        });
    }
    return out;
}

/// Copies a view into a standalone graph on vertices [0, v(view)).
/// `original[i]` is the parent id of new vertex i.
struct Materialized {
    ColouredGraph graph;
    std::vector<Vertex> original;
};

inline Materialized materialize(const SubgraphView& view)
{
    const auto& g = view.graph();
    auto original = view.vertices();
    std::vector<Vertex> local(g.vertex_count(), UINT32_MAX);
    for (Vertex i = 0; i < original.size(); ++i) {
        local[original[i]] = i;
    }
    std::vector<Edge> edges;
    edges.reserve(view.edge_count());
    for (auto id : view.edge_ids()) {
        const auto& e = g.edge(id);
        edges.push_back({local[e.u], local[e.v], e.colour});
    }
    return {ColouredGraph(original.size(), g.colour_count(), std::move(edges)), std::move(original)};
}

} // namespace rainbow
