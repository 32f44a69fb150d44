#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "rainbow/expander.hpp"
#include "rainbow/oracle.hpp"
#include "test_support.hpp"

using namespace rainbow;
using namespace rainbow::testing;

namespace {

ColouredGraph k6_with_tail(std::size_t tail, bool attached)
{
    std::vector<Edge> e;
    Colour c = 0;
    add_clique(e, range(0, 6), c);
    auto path = range(6, static_cast<Vertex>(6 + tail));
    if (attached) {
        path.insert(path.begin(), 5);
    }
    add_path(e, path, c);
    return make_graph(6 + tail, e);
}

// e(S, S^c) >= (lambda d / 2)|S| for every S with |S| <= (1 - eps) v.
void expect_edge_expansion(const ExpanderPiece& piece)
{
    const auto& h = piece.subgraph;
    const auto cap = small_set_cap(piece.params.eps, h.vertex_count());
    const Rational rate = piece.params.lambda * piece.params.d / 2;
    for_each_subset(h, [&](const std::vector<Vertex>& s) {
        if (s.size() > cap) {
            return;
        }
        const auto b = boundary_edges(h, s);
        ASSERT_GE(Rational(static_cast<std::int64_t>(b.crossing)), rate * Rational(static_cast<std::int64_t>(s.size())));
    });
}

void expect_valid_covering(const SubgraphView& view, const Covering& cover, const Rational& eps)
{
    std::vector<int> owner(view.graph().edge_count(), -1);
    for (std::size_t i = 0; i < cover.pieces.size(); ++i) {
        for (auto e : cover.pieces[i].subgraph.edge_ids()) {
            ASSERT_TRUE(view.has_edge(e));
            ASSERT_EQ(owner[e], -1) << "edge " << e << " in two pieces";
            owner[e] = static_cast<int>(i);
        }
    }
    for (auto e : cover.uncovered) {
        ASSERT_EQ(owner[e], -1);
        owner[e] = -2;
    }
    for (auto e : view.edge_ids()) {
        ASSERT_NE(owner[e], -1) << "edge " << e << " lost";
    }
    const auto total = static_cast<std::int64_t>(view.edge_count());
    ASSERT_LE(Rational(static_cast<std::int64_t>(cover.uncovered.size())), eps * Rational(total));
}

} // namespace

TEST(ViolatingSet, K6WithPendantPath)
{
    const auto g = k6_with_tail(3, true);
    const auto s = find_violating_set(g, {Rational(2), Rational(1, 10), Rational(3, 10)});
    ASSERT_TRUE(s);
    EXPECT_EQ(*s, range(0, 6));
}

TEST(ViolatingSet, K6IsExpander)
{
    const auto g = complete_rainbow(6);
    EXPECT_FALSE(find_violating_set(g, {Rational(5), Rational(1, 10), Rational(3, 10)}));
}

TEST(ViolatingSet, SingleEdge)
{
    const auto g = make_graph(2, {{0, 1, 0}});
    EXPECT_FALSE(find_violating_set(g, {Rational(1), Rational(1, 10), Rational(3, 10)}));
    EXPECT_FALSE(find_violating_set(g, {Rational(1), Rational(1, 2), Rational(1, 3)}));
}

TEST(ViolatingSet, RejectsBadParameters)
{
    const auto g = complete_rainbow(4);
    EXPECT_THROW(find_violating_set(g, {Rational(3), Rational(0), Rational(1, 4)}), std::invalid_argument);
    EXPECT_THROW(find_violating_set(g, {Rational(3), Rational(1, 4), Rational(1)}), std::invalid_argument);
}

TEST(ViolatingSet, AgreesWithOracleOnSmallGraphs)
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto g = random_graph(7 + seed % 6, 0.5, seed);
        const SubgraphView view(g);
        if (view.average_degree() < 1) {
            continue;
        }
        const auto cert = extract_d_minimal(view, view.average_degree());
        const ExpanderParams params{cert.subgraph.average_degree(), Rational(1, 8), Rational(1, 4)};
        const auto found = find_violating_set(cert.subgraph, params);
        const auto oracle = brute_expander_check(cert.subgraph, params);
        if (found) {
            const auto e = edges_inside(cert.subgraph, *found);
            EXPECT_GE(avg_degree(e, found->size()), (1 - params.lambda) * params.d);
            EXPECT_LE(found->size(), small_set_cap(params.eps, cert.subgraph.vertex_count()));
        } else {
            EXPECT_TRUE(oracle.holds) << "seed " << seed << ": " << oracle.reason;
        }
    }
}

TEST(ExtractExpander, K6AmongSparsePath)
{
    const auto g = k6_with_tail(20, false);
    const auto piece = extract_expander(g, Rational(2), Rational(1, 20), Rational(1, 4));
    for (auto v : piece.subgraph.vertices()) {
        EXPECT_LT(v, 6u);
    }
    EXPECT_EQ(piece.certification, Certification::exhaustive);
    EXPECT_TRUE(brute_expander_check(piece.subgraph, piece.params).holds);
    EXPECT_GE(piece.params.d, Rational(1));
}

TEST(ExtractExpander, K6Alone)
{
    const auto g = complete_rainbow(6);
    const auto piece = extract_expander(g, Rational(5), Rational(1, 10), Rational(3, 10));
    EXPECT_EQ(piece.subgraph.vertex_count(), 6u);
    EXPECT_EQ(piece.subgraph.edge_count(), 15u);
    EXPECT_EQ(piece.shrink_steps, 0u);
    EXPECT_EQ(piece.params.d, Rational(5));
}

TEST(ExtractExpander, FixedPoint)
{
    const auto g = complete_rainbow(6);
    const auto first = extract_expander(g, Rational(5), Rational(1, 10), Rational(3, 10));
    const auto again = extract_expander(first.subgraph, first.params.d, Rational(1, 10), Rational(3, 10));
    EXPECT_TRUE(again.subgraph == first.subgraph);
    EXPECT_EQ(again.shrink_steps, 0u);
}

TEST(ExtractExpander, Preconditions)
{
    const auto g = complete_rainbow(5);
    EXPECT_THROW(extract_expander(g, Rational(5), Rational(1, 10), Rational(1, 4)), std::invalid_argument);
    EXPECT_THROW(extract_expander(g, Rational(2), Rational(1, 2), Rational(1, 4), true), std::invalid_argument);
    EXPECT_NO_THROW(extract_expander(g, Rational(2), paper_lambda(Rational(1, 4), 5), Rational(1, 4), true));
}

TEST(ExtractExpander, PaperModeBounds)
{
    const Rational eps(1, 4);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto g = random_graph(20 + seed % 20, 0.3, 500 + seed);
        const SubgraphView view(g);
        const auto n = g.vertex_count();
        const auto lambda = paper_lambda(eps, n);
        const auto piece = extract_expander(view, view.average_degree(), lambda, eps, true);
        EXPECT_GE(piece.params.d, view.average_degree() / 2) << seed;
        EXPECT_LE(static_cast<double>(piece.shrink_steps), std::ceil(std::log(static_cast<double>(n)) / 0.25)) << seed;
        if (piece.certification == Certification::exhaustive) {
            EXPECT_TRUE(brute_expander_check(piece.subgraph, piece.params).holds) << seed;
            expect_edge_expansion(piece);
        }
    }
}

TEST(Cover, TwoDisjointK10)
{
    std::vector<Edge> e;
    Colour c = 0;
    add_clique(e, range(0, 10), c);
    add_clique(e, range(10, 20), c);
    const auto g = make_graph(20, e);
    const auto cover = cover_by_expanders(g, Rational(1, 100), Rational(1, 4));
    ASSERT_EQ(cover.pieces.size(), 2u);
    EXPECT_TRUE(cover.uncovered.empty());
    std::set<std::vector<Vertex>> parts;
    for (const auto& p : cover.pieces) {
        EXPECT_EQ(p.subgraph.edge_count(), 45u);
        parts.insert(p.subgraph.vertices());
    }
    EXPECT_EQ(parts, (std::set<std::vector<Vertex>>{range(0, 10), range(10, 20)}));
}

TEST(Cover, SingleK6)
{
    const auto g = complete_rainbow(6);
    const auto cover = cover_by_expanders(g, Rational(1, 10), Rational(1, 4));
    ASSERT_EQ(cover.pieces.size(), 1u);
    expect_valid_covering(g, cover, Rational(1, 4));
    EXPECT_TRUE(cover.uncovered.empty());
}

TEST(Cover, RejectsSparseInput)
{
    const auto g = make_graph(4, {{0, 1, 0}});
    EXPECT_THROW(cover_by_expanders(g, Rational(1, 10), Rational(1, 4)), std::invalid_argument);
}

TEST(Cover, RandomGraphsPaperLambda)
{
    const Rational eps(1, 4);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::size_t n = 12 + seed % 49;
        const auto g = random_graph(n, 0.15 + 0.01 * static_cast<double>(seed % 20), 900 + seed);
        const SubgraphView view(g);
        if (view.average_degree() < 1) {
            continue;
        }
        const auto lambda = paper_lambda(eps, n);
        const auto cover = cover_by_expanders(view, lambda, eps);
        expect_valid_covering(view, cover, eps);
        for (const auto& piece : cover.pieces) {
            EXPECT_GE(piece.params.d, eps * view.average_degree() / 2) << "seed " << seed;
            if (piece.subgraph.vertex_count() <= default_oracle_cap) {
                EXPECT_TRUE(brute_d_minimal_check(piece.subgraph, piece.params.d).holds) << "seed " << seed;
            }
            if (piece.certification == Certification::exhaustive) {
                const auto verdict = brute_expander_check(piece.subgraph, piece.params);
                EXPECT_TRUE(verdict.holds) << "seed " << seed << ": " << verdict.reason;
                expect_edge_expansion(piece);
            }
        }
    }
}
