#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rainbow/density.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/rational.hpp"

namespace rainbow {

struct ExpanderParams {
    Rational d;
    Rational lambda;
    Rational eps;
};

enum class Certification { exhaustive, heuristic_unrefuted };

inline const char* to_string(Certification c)
{
    return c == Certification::exhaustive ? "exhaustive" : "heuristic-unrefuted";
}

/// A d-minimal subgraph in which the violating-set search came up empty.
/// With exhaustive certification, every S with |S| <= (1 - eps) v has
/// d(S) <= (1 - lambda) d.
struct ExpanderPiece {
    SubgraphView subgraph;
    ExpanderParams params;
    Certification certification = Certification::heuristic_unrefuted;
    std::size_t shrink_steps = 0;
};

/// Edge-disjoint pieces plus the edges left uncovered.
struct Covering {
    std::vector<ExpanderPiece> pieces;
    std::vector<EdgeId> uncovered;
};

inline void check_lambda_eps(const Rational& lambda, const Rational& eps)
{
    if (lambda <= 0 || lambda >= 1) {
        throw std::invalid_argument("lambda must lie in (0, 1), got " + to_string(lambda));
    }
    if (eps <= 0 || eps >= 1) {
        throw std::invalid_argument("eps must lie in (0, 1), got " + to_string(eps));
    }
}

/// eps / (2 ln n), rounded down to a rational so that lambda <= eps/(2 ln n) holds exactly.
inline Rational paper_lambda(const Rational& eps, std::size_t n)
{
    if (n < 2) {
        throw std::invalid_argument("paper-mode lambda needs n >= 2");
    }
    return floor_rational(to_double(eps) / (2.0 * std::log(static_cast<double>(n))));
}

inline bool satisfies_paper_lambda(const Rational& lambda, const Rational& eps, std::size_t n)
{
    return n >= 2 && to_double(lambda) <= to_double(eps) / (2.0 * std::log(static_cast<double>(n)));
}

/// Largest integer s with s <= (1 - eps) * v.
inline std::size_t small_set_cap(const Rational& eps, std::size_t v)
{
    return static_cast<std::size_t>(floor_int((1 - eps) * Rational(static_cast<std::int64_t>(v))));
}

/// Looks for S with |S| <= (1 - eps) v(piece) and d(S) >= (1 - lambda) d.
///
/// Exhaustive for at most 16 vertices. Beyond that the search is sound but
/// incomplete: a returned set always qualifies, an empty answer does not prove
/// the piece is an expander. Among candidates the densest wins, then the
/// smaller, then the lexicographically first.
inline std::optional<std::vector<Vertex>> find_violating_set(const SubgraphView& piece, const ExpanderParams& params)
{
    check_lambda_eps(params.lambda, params.eps);
    const auto cap = small_set_cap(params.eps, piece.vertex_count());
    const Rational threshold = (1 - params.lambda) * params.d;
    if (cap == 0 || threshold <= 0) {
        return std::nullopt;
    }
    auto result = detail::capped_dense_search(piece, threshold, cap);
    if (!result.found) {
        return std::nullopt;
    }
    return std::move(result.found->vertices);
}

/// Runs the shrinking process: take a d(G_i)-minimal H_i; if a violating set
/// S exists, continue on G[S]; otherwise H_i is the piece. The piece's d is
/// re-anchored to d(H_i).
///
/// With lambda <= eps/(2 ln n) the number of shrink steps is at most
/// ln n / eps and d(piece) >= d/2.
inline ExpanderPiece extract_expander(const SubgraphView& view, const Rational& d, const Rational& lambda,
                                      const Rational& eps, bool require_paper_lambda = false)
{
    check_lambda_eps(lambda, eps);
    if (d <= 0 || view.average_degree() < d) {
        throw std::invalid_argument("expander extraction needs 0 < d <= d(view)");
    }
    if (require_paper_lambda && !satisfies_paper_lambda(lambda, eps, view.vertex_count())) {
        throw std::invalid_argument("paper mode requires lambda <= eps / (2 ln n)");
    }

    SubgraphView current = view;
    std::size_t steps = 0;
    for (;;) {
        const Rational di = current.average_degree();
        auto minimal = extract_d_minimal(current, di);
        const ExpanderParams check{di, lambda, eps};
        auto violating = find_violating_set(minimal.subgraph, check);
        if (!violating) {
            const auto certification = minimal.subgraph.vertex_count() <= detail::exhaustive_limit
                                           ? Certification::exhaustive
                                           : Certification::heuristic_unrefuted;
            auto piece_d = minimal.subgraph.average_degree();
            return {std::move(minimal.subgraph), {piece_d, lambda, eps}, certification, steps};
        }
        current = view.induced(*violating);
        ++steps;
    }
}

/// Greedy covering: while the residual keeps at least eps * e(G) edges,
/// extract an expander from it and remove that expander's edges. Vertices
/// left isolated drop out of the residual so they do not dilute d(G').
inline Covering cover_by_expanders(const SubgraphView& view, const Rational& lambda, const Rational& eps)
{
    check_lambda_eps(lambda, eps);
    if (view.average_degree() < 1) {
        throw std::invalid_argument("covering needs average degree at least 1");
    }
    const Rational stop = eps * Rational(static_cast<std::int64_t>(view.edge_count()));
    Covering out;
    SubgraphView residual = view;
    while (residual.edge_count() > 0 && Rational(static_cast<std::int64_t>(residual.edge_count())) >= stop) {
        auto piece = extract_expander(residual, residual.average_degree(), lambda, eps);
        auto used = piece.subgraph.edge_ids();
        residual = residual.without_edges(used).without_isolated();
        out.pieces.push_back(std::move(piece));
    }
    out.uncovered = residual.edge_ids();
    return out;
}

} // namespace rainbow
