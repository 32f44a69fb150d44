#pragma once

#include <algorithm>
#include <bit>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/max_flow.hpp"
#include "rainbow/rational.hpp"

namespace rainbow {

/// Vertex set S together with its exact density e(S)/|S|.
struct DensityWitness {
    std::vector<Vertex> vertices; // ascending
    Rational density;
};

/// H with d(H) >= d and no proper subgraph of average degree >= d.
struct MinimalCertificate {
    SubgraphView subgraph;
    Rational d;
    bool edge_minimal = false;
    bool vertex_minimal = false;
};

namespace detail {

inline std::size_t induced_edge_count(const SubgraphView& view, const std::vector<Vertex>& subset)
{
    std::vector<char> in(view.graph().vertex_count(), 0);
    for (auto v : subset) {
        in[v] = 1;
    }
    std::size_t e = 0;
    for (auto v : subset) {
        view.for_each_incident(v, [&](const Incidence& inc) {
            if (inc.neighbour > v && in[inc.neighbour]) {
                ++e;
            }
        });
    }
    return e;
}

} // namespace detail

/// Decides exactly whether some non-empty S within the view has e(S)/|S| >= g.
///
/// One max-flow on the density network: source->v with capacity m, v->sink
/// with capacity m + 2g - deg(v), and capacity 1 both ways along each edge, all
/// scaled by the denominator of g. A cut with source side S costs
/// m*n + 2(g|S| - e(S)), so a cut below m*n certifies density above g. The
/// threshold is lowered by 1/(2nq) first, which is smaller than the gap
/// between g = p/q and any density e/s with s <= n, turning "> g'" into ">= g".
inline std::optional<DensityWitness> dense_subgraph_decision(const SubgraphView& view, const Rational& g)
{
    if (g <= 0) {
        throw std::invalid_argument("density threshold must be positive");
    }
    if (view.edge_count() == 0) {
        return std::nullopt;
    }
    const auto verts = view.vertices();
    const auto n = verts.size();
    std::vector<std::uint32_t> local(view.graph().vertex_count(), UINT32_MAX);
    for (std::uint32_t i = 0; i < n; ++i) {
        local[verts[i]] = i;
    }

    using Cap = MaxFlow::Capacity;
    const Cap m = static_cast<Cap>(view.edge_count());
    const Cap p = static_cast<Cap>(2 * n) * g.numerator() - 1;
    const Cap q = static_cast<Cap>(2 * n) * g.denominator();

    const std::size_t source = n, sink = n + 1;
    MaxFlow flow(n + 2);
    for (std::uint32_t i = 0; i < n; ++i) {
        const Cap deg = static_cast<Cap>(view.degree(verts[i]));
        flow.add_arc(source, i, m * q);
        flow.add_arc(i, sink, m * q + 2 * p - deg * q);
        view.for_each_incident(verts[i], [&](const Incidence& inc) {
            if (inc.neighbour > verts[i]) {
                flow.add_arc(i, local[inc.neighbour], q, q);
            }
        });
    }
    const Cap value = flow.run(source, sink);
    if (value >= m * static_cast<Cap>(n) * q) {
        return std::nullopt;
    }
    auto side = flow.source_side(source);
    DensityWitness w;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (side[i]) {
            w.vertices.push_back(verts[i]);
        }
    }
    auto e = detail::induced_edge_count(view, w.vertices);
    w.density = Rational(static_cast<std::int64_t>(e), static_cast<std::int64_t>(w.vertices.size()));
    if (w.vertices.empty() || w.density < g) {
        throw std::logic_error("density network returned an infeasible witness");
    }
    return w;
}

namespace detail {

/// Candidate subset scored by density, then smaller size, then lexicographic order.
struct SubsetChoice {
    std::vector<Vertex> vertices; // ascending
    std::size_t edges = 0;

    Rational average_degree() const
    {
        return Rational(2 * static_cast<std::int64_t>(edges), static_cast<std::int64_t>(vertices.size()));
    }
};

inline bool better_choice(const SubsetChoice& a, const SubsetChoice& b)
{
    // density e/|S| compared by cross multiplication
    auto lhs = static_cast<std::uint64_t>(a.edges) * b.vertices.size();
    auto rhs = static_cast<std::uint64_t>(b.edges) * a.vertices.size();
    if (lhs != rhs) {
        return lhs > rhs;
    }
    if (a.vertices.size() != b.vertices.size()) {
        return a.vertices.size() < b.vertices.size();
    }
    return a.vertices < b.vertices;
}

inline void offer(std::optional<SubsetChoice>& best, SubsetChoice candidate)
{
    if (!best || better_choice(candidate, *best)) {
        best = std::move(candidate);
    }
}

inline constexpr std::size_t exhaustive_limit = 16;

/// Best non-empty S with |S| <= cap and d(S) >= min_avg, over all subsets.
inline std::optional<SubsetChoice> exhaustive_dense_subset(const SubgraphView& view, const Rational& min_avg,
                                                           std::size_t cap)
{
    const auto verts = view.vertices();
    const auto n = verts.size();
    if (n > exhaustive_limit) {
        throw std::invalid_argument("exhaustive subset search limited to 16 vertices");
    }
    std::vector<std::uint32_t> adj(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        view.for_each_incident(verts[i], [&](const Incidence& inc) {
            auto j = std::lower_bound(verts.begin(), verts.end(), inc.neighbour) - verts.begin();
            adj[i] |= 1u << j;
        });
    }
    std::optional<SubsetChoice> best;
    const std::uint32_t full = n == 32 ? UINT32_MAX : (1u << n) - 1;
    for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
        auto size = static_cast<std::size_t>(std::popcount(s));
        if (size > cap) {
            continue;
        }
        std::size_t twice_e = 0;
        for (auto rest = s; rest; rest &= rest - 1) {
            twice_e += static_cast<std::size_t>(std::popcount(adj[std::countr_zero(rest)] & s));
        }
        if (Rational(static_cast<std::int64_t>(twice_e), static_cast<std::int64_t>(size)) < min_avg) {
            continue;
        }
        SubsetChoice c;
        c.edges = twice_e / 2;
        for (auto rest = s; rest; rest &= rest - 1) {
            c.vertices.push_back(verts[std::countr_zero(rest)]);
        }
        offer(best, std::move(c));
    }
    return best;
}

/// Repeated minimum-degree removal order (ties: lowest vertex id first).
inline std::vector<Vertex> degeneracy_order(const SubgraphView& view)
{
    const auto verts = view.vertices();
    std::vector<std::size_t> deg(view.graph().vertex_count(), 0);
    std::set<std::pair<std::size_t, Vertex>> queue;
    for (auto v : verts) {
        deg[v] = view.degree(v);
        queue.insert({deg[v], v});
    }
    std::vector<char> gone(view.graph().vertex_count(), 0);
    std::vector<Vertex> order;
    order.reserve(verts.size());
    while (!queue.empty()) {
        auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        gone[v] = 1;
        order.push_back(v);
        view.for_each_incident(v, [&](const Incidence& inc) {
            auto w = inc.neighbour;
            if (!gone[w]) {
                queue.erase({deg[w], w});
                --deg[w];
                queue.insert({deg[w], w});
            }
        });
    }
    return order;
}

/// Sound but incomplete search for S with |S| <= cap and d(S) >= min_avg in
/// views too large to enumerate: the unconstrained density witness when it
/// fits the cap, plus every degeneracy-order suffix of size <= cap.
inline std::optional<SubsetChoice> heuristic_dense_subset(const SubgraphView& view, const Rational& min_avg,
                                                          std::size_t cap)
{
    std::optional<SubsetChoice> best;
    if (cap == 0 || min_avg <= 0) {
        return best;
    }
    if (auto w = dense_subgraph_decision(view, min_avg / 2); w && w->vertices.size() <= cap) {
        offer(best, {w->vertices, detail::induced_edge_count(view, w->vertices)});
    }

    auto order = degeneracy_order(view);
    std::vector<char> gone(view.graph().vertex_count(), 0);
    std::size_t edges = view.edge_count();
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto remaining = order.size() - i;
        if (remaining <= cap && remaining > 0 &&
            Rational(2 * static_cast<std::int64_t>(edges), static_cast<std::int64_t>(remaining)) >= min_avg) {
            std::vector<Vertex> suffix(order.begin() + static_cast<std::ptrdiff_t>(i), order.end());
            std::sort(suffix.begin(), suffix.end());
            offer(best, {std::move(suffix), edges});
        }
        view.for_each_incident(order[i], [&](const Incidence& inc) {
            if (!gone[inc.neighbour]) {
                --edges;
            }
        });
        gone[order[i]] = 1;
    }
    return best;
}

struct CappedSearchResult {
    std::optional<SubsetChoice> found;
    bool exhaustive = false;
};

inline CappedSearchResult capped_dense_search(const SubgraphView& view, const Rational& min_avg, std::size_t cap)
{
    if (view.vertex_count() <= exhaustive_limit) {
        return {exhaustive_dense_subset(view, min_avg, cap), true};
    }
    return {heuristic_dense_subset(view, min_avg, cap), false};
}

} // namespace detail

/// Extracts a d-minimal subgraph of the view; throws when no subgraph
/// reaches average degree d.
///
/// Vertices whose removal keeps the average degree at least d are peeled
/// greedily; then each candidate H is tested against every proper induced
/// subgraph (one density decision on H and one on each H - v). A proper
/// witness replaces H. Once none exists, edges are dropped while
/// 2(e - 1)/v >= d. Every replacement strictly shrinks H.
inline MinimalCertificate extract_d_minimal(const SubgraphView& view, const Rational& d)
{
    if (d <= 0) {
        throw std::invalid_argument("d-minimal extraction needs d > 0");
    }
    const Rational half = d / 2;
    // A view that is sparser overall still works if some part of it is dense enough.
    SubgraphView start = view;
    if (view.average_degree() < d) {
        auto w = dense_subgraph_decision(view, half);
        if (!w) {
            throw std::invalid_argument("no subgraph has average degree at least d = " + to_string(d));
        }
        start = view.induced(w->vertices);
    }

    auto peel = [&](const SubgraphView& h) {
        const auto& g = h.graph();
        std::vector<std::size_t> deg(g.vertex_count(), 0);
        std::set<std::pair<std::size_t, Vertex>> queue;
        for (auto v : h.vertices()) {
            deg[v] = h.degree(v);
            queue.insert({deg[v], v});
        }
        std::vector<char> gone(g.vertex_count(), 0);
        auto n = static_cast<std::int64_t>(h.vertex_count());
        auto e = static_cast<std::int64_t>(h.edge_count());
        bool removed = false;
        while (n > 1) {
            auto [dv, v] = *queue.begin();
            // H - v keeps average degree >= d
            if (Rational(2 * (e - static_cast<std::int64_t>(dv)), n - 1) < d) {
                break;
            }
            queue.erase(queue.begin());
            gone[v] = 1;
            removed = true;
            --n;
            e -= static_cast<std::int64_t>(dv);
            h.for_each_incident(v, [&](const Incidence& inc) {
                auto w = inc.neighbour;
                if (!gone[w]) {
                    queue.erase({deg[w], w});
                    --deg[w];
                    queue.insert({deg[w], w});
                }
            });
        }
        if (!removed) {
            return h;
        }
        std::vector<Vertex> keep;
        for (auto [dv, v] : queue) {
            keep.push_back(v);
        }
        std::sort(keep.begin(), keep.end());
        return h.induced(keep);
    };

    SubgraphView h = peel(start);
    for (;;) {
        std::optional<DensityWitness> proper;
        if (auto w = dense_subgraph_decision(h, half); w && w->vertices.size() < h.vertex_count()) {
            proper = std::move(w);
        } else {
            for (auto v : h.vertices()) {
                if (auto wv = dense_subgraph_decision(h.without_vertex(v), half)) {
                    proper = std::move(wv);
                    break;
                }
            }
        }
        if (!proper) {
            break;
        }
        h = peel(h.induced(proper->vertices));
    }

    // Edge-minimality: drop edges while the average degree stays >= d, taking
    // the edge whose endpoints have the largest degree sum (ties: lowest id).
    for (;;) {
        auto v = static_cast<std::int64_t>(h.vertex_count());
        auto e = static_cast<std::int64_t>(h.edge_count());
        if (Rational(2 * (e - 1), v) < d) {
            break;
        }
        std::optional<EdgeId> pick;
        std::size_t best_sum = 0;
        for (auto id : h.edge_ids()) {
            const auto& ed = h.graph().edge(id);
            auto sum = h.degree(ed.u) + h.degree(ed.v);
            if (!pick || sum > best_sum) {
                pick = id;
                best_sum = sum;
            }
        }
        EdgeId drop[1] = {*pick};
        h = h.without_edges(drop);
    }

    if (h.average_degree() < d) {
        throw std::logic_error("d-minimal extraction lost the density invariant");
    }
    return {h, d, true, true};
}

} // namespace rainbow
