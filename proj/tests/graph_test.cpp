#include <gtest/gtest.h>

#include "rainbow/graph.hpp"
#include "rainbow/graph_io.hpp"
#include "rainbow/instances.hpp"
#include "test_support.hpp"

using namespace rainbow;
using namespace rainbow::testing;

namespace {

std::string load_error(const std::string& text)
{
    try {
        load_graph_string(text);
    } catch (const GraphError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST(Load, RainbowTriangle)
{
    const auto g = load_graph_string("3 3 3\n0 1 0\n1 2 1\n0 2 2\n");
    EXPECT_EQ(g.vertex_count(), 3u);
    EXPECT_EQ(g.edge_count(), 3u);
    EXPECT_EQ(g.colour_count(), 3u);
    EXPECT_EQ(g.degree(1), 2u);
}

TEST(Load, ImproperColouringNamesVertexAndColour)
{
    const auto msg = load_error("3 3 2\n0 1 0\n1 2 1\n0 2 0\n");
    EXPECT_NE(msg.find("improper colouring"), std::string::npos) << msg;
    EXPECT_NE(msg.find("vertex 0"), std::string::npos) << msg;
    EXPECT_NE(msg.find("colour 0"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
}

TEST(Load, ErrorsCarryLineNumbers)
{
    EXPECT_NE(load_error("# c\n2 1 1\n0 x 0\n").find("line 3"), std::string::npos);
    EXPECT_NE(load_error("2 1 1\n0 0 0\n").find("self-loop"), std::string::npos);
    EXPECT_NE(load_error("3 2 2\n0 1 0\n1 0 1\n").find("duplicate edge"), std::string::npos);
    EXPECT_NE(load_error("2 1 1\n0 1 1\n").find("colour 1 outside"), std::string::npos);
    EXPECT_NE(load_error("2 1 1\n0 2 0\n").find("vertex outside"), std::string::npos);
    EXPECT_NE(load_error("3 2 2\n0 1 0\n").find("expected 2 edge lines"), std::string::npos);
    EXPECT_NE(load_error("# only comments\n").find("missing header"), std::string::npos);
    EXPECT_NE(load_error("2 1 1\n0 1 0 7\n").find("line 2"), std::string::npos);
}

TEST(Load, CommentsAndBlankLinesIgnored)
{
    const auto g = load_graph_string("# header\n\n2 1 1\n   \n# edge\n1 0 0\n");
    EXPECT_EQ(g.edge(0).u, 0u);
    EXPECT_EQ(g.edge(0).v, 1u);
}

TEST(Load, HypercubeRoundTrip)
{
    const auto q3 = gen_hypercube(3);
    const auto back = load_graph_string(serialize_graph(q3, {"cube"}));
    EXPECT_EQ(back.vertex_count(), 8u);
    EXPECT_EQ(back.edge_count(), 12u);
    EXPECT_TRUE(back == q3);
}

TEST(Load, RoundTripRandom)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = gen_random_proper(25, 0.3, seed % 2 ? ColouringRule::fanned : ColouringRule::greedy, seed);
        EXPECT_TRUE(load_graph_string(serialize_graph(g)) == g) << seed;
    }
}

TEST(Graph, SerializationSortsEdges)
{
    const auto g = make_graph(4, {{2, 3, 0}, {0, 1, 0}, {1, 2, 1}});
    EXPECT_EQ(serialize_graph(g), "4 3 2\n0 1 0\n1 2 1\n2 3 0\n");
}

TEST(Graph, ConstructorRejectsBadInput)
{
    EXPECT_THROW(ColouredGraph(2, 1, {{0, 0, 0}}), GraphError);
    EXPECT_THROW(ColouredGraph(2, 1, {{0, 2, 0}}), GraphError);
    EXPECT_THROW(ColouredGraph(2, 1, {{0, 1, 1}}), GraphError);
    EXPECT_THROW(ColouredGraph(3, 1, {{0, 1, 0}, {1, 2, 0}}), GraphError);
    EXPECT_THROW(ColouredGraph(2, 2, {{0, 1, 0}, {0, 1, 1}}), GraphError);
}

TEST(Graph, IncidenceConsistentBothWays)
{
    const auto g = gen_random_proper(30, 0.4, ColouringRule::greedy, 3);
    std::size_t total = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        std::vector<char> colours(g.colour_count(), 0);
        for (const auto& inc : g.incident(v)) {
            EXPECT_FALSE(colours[inc.colour]++) << "colour repeated at " << v;
            const auto& e = g.edge(inc.edge);
            EXPECT_TRUE((e.u == v && e.v == inc.neighbour) || (e.v == v && e.u == inc.neighbour));
            EXPECT_EQ(e.colour, inc.colour);
            ++total;
        }
    }
    EXPECT_EQ(total, 2 * g.edge_count());
}

TEST(DegreeStats, SmallGraphs)
{
    std::vector<Edge> k4;
    Colour c = 0;
    add_clique(k4, range(0, 4), c);
    const auto g = make_graph(4, k4);
    auto s = degree_stats(g);
    EXPECT_EQ(s.avg, Rational(3));
    EXPECT_EQ(s.min, 3u);
    EXPECT_EQ(s.max, 3u);

    const auto p3 = make_graph(3, {{0, 1, 0}, {1, 2, 1}});
    EXPECT_EQ(degree_stats(p3).avg, Rational(4, 3));

    s = degree_stats(gen_hypercube(3));
    EXPECT_EQ(s.avg, Rational(3));
    EXPECT_EQ(s.min, 3u);
    EXPECT_EQ(s.max, 3u);
}

TEST(DegreeStats, EmptyViewThrows)
{
    const auto g = make_graph(3, {{0, 1, 0}});
    const std::vector<Vertex> none;
    EXPECT_THROW(degree_stats(SubgraphView::induced(g, none)), std::invalid_argument);
}

TEST(Boundary, Examples)
{
    std::vector<Edge> k4;
    Colour c = 0;
    add_clique(k4, range(0, 4), c);
    const auto g = make_graph(4, k4);
    const std::vector<Vertex> one{2}, two{0, 3};
    auto b = boundary_edges(g, one);
    EXPECT_EQ(b.inside, 0u);
    EXPECT_EQ(b.crossing, 3u);
    b = boundary_edges(g, two);
    EXPECT_EQ(b.inside, 1u);
    EXPECT_EQ(b.crossing, 4u);

    const auto c5 = cycle(5, {0, 1, 0, 1, 2});
    const std::vector<Vertex> adjacent{1, 2};
    b = boundary_edges(c5, adjacent);
    EXPECT_EQ(b.inside, 1u);
    EXPECT_EQ(b.crossing, 2u);
}

TEST(Boundary, SubsetOutsideViewThrows)
{
    const auto g = make_graph(3, {{0, 1, 0}, {1, 2, 1}});
    const std::vector<Vertex> part{0, 1}, outside{2};
    const auto view = SubgraphView::induced(g, part);
    EXPECT_THROW(boundary_edges(view, outside), std::invalid_argument);
}

TEST(Boundary, HandshakeIdentityExhaustive)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = random_graph(10 + seed % 3, 0.45, seed);
        const SubgraphView view(g);
        for_each_subset(view, [&](const std::vector<Vertex>& s) {
            const auto b = boundary_edges(view, s);
            std::size_t degrees = 0;
            for (auto v : s) {
                degrees += g.degree(v);
            }
            ASSERT_EQ(2 * b.inside + b.crossing, degrees);
        });
    }
}

TEST(SubgraphView, QueriesAgreeWithMaterialized)
{
    const auto g = gen_random_proper(40, 0.2, ColouringRule::greedy, 11);
    std::vector<Vertex> subset;
    for (Vertex v = 0; v < 40; v += 3) {
        subset.push_back(v);
    }
    const SubgraphView full(g);
    const auto view = full.induced(subset).without_vertex(9);
    const auto m = materialize(view);
    EXPECT_EQ(m.graph.vertex_count(), view.vertex_count());
    EXPECT_EQ(m.graph.edge_count(), view.edge_count());
    EXPECT_EQ(SubgraphView(m.graph).average_degree(), view.average_degree());
    for (Vertex local = 0; local < m.graph.vertex_count(); ++local) {
        EXPECT_EQ(m.graph.degree(local), view.degree(m.original[local]));
    }
    for (auto e : view.edge_ids()) {
        EXPECT_TRUE(view.has_vertex(g.edge(e).u));
        EXPECT_TRUE(view.has_vertex(g.edge(e).v));
    }
}

TEST(SubgraphView, InducedRejectsOutsideVertex)
{
    const auto g = make_graph(4, {{0, 1, 0}, {2, 3, 0}});
    const std::vector<Vertex> part{0, 1}, bad{1, 2};
    const auto view = SubgraphView::induced(g, part);
    EXPECT_THROW(view.induced(bad), std::invalid_argument);
}

TEST(SubgraphView, EdgeRemovalAndFilters)
{
    const auto g = make_graph(4, {{0, 1, 0}, {1, 2, 1}, {2, 3, 0}});
    const SubgraphView full(g);
    const std::vector<EdgeId> drop{1};
    const auto cut = full.without_edges(drop);
    EXPECT_EQ(cut.edge_count(), 2u);
    EXPECT_EQ(cut.vertex_count(), 4u);
    const auto colour0 = full.filter_edges([](const Edge& e) { return e.colour == 0; });
    EXPECT_EQ(colour0.edge_count(), 2u);
    EXPECT_EQ(colour0.colours(), std::vector<Colour>{0});
    const std::vector<EdgeId> one{0};
    const auto single = SubgraphView::from_edges(g, one);
    EXPECT_EQ(single.vertex_count(), 2u);
    EXPECT_EQ(single.average_degree(), Rational(1));
    EXPECT_EQ(full.without_edges(std::vector<EdgeId>{0, 2}).without_isolated().vertex_count(), 2u);
}
