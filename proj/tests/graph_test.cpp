#include "ksproof/graph.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace ksproof;

TEST(VertexSet, BasicOperations)
{
    VertexSet s(130);
    EXPECT_TRUE(s.empty());
    EXPECT_EQ(s.first(), 130U);
    s.set(3);
    s.set(64);
    s.set(129);
    EXPECT_EQ(s.count(), 3U);
    EXPECT_EQ(s.first(), 3U);
    EXPECT_EQ(s.members(), (std::vector<std::size_t>{3, 64, 129}));
    VertexSet t(130);
    t.set(64);
    EXPECT_EQ((s & t).members(), std::vector<std::size_t>{64});
    EXPECT_EQ(s.minus(t).members(), (std::vector<std::size_t>{3, 129}));
    s.reset(3);
    EXPECT_FALSE(s.test(3));
}

TEST(Graph, EdgesAreUndirected)
{
    Graph g(4);
    g.add_edge(0, 2);
    g.add_edge(2, 0);
    EXPECT_TRUE(g.adjacent(2, 0));
    EXPECT_EQ(g.edge_count(), 1U);
    EXPECT_TRUE(g.is_clique({0, 2}));
    EXPECT_FALSE(g.is_clique({0, 1, 2}));
}

TEST(MaxClique, TrivialGraphs)
{
    EXPECT_EQ(max_clique(Graph(0)).size, 0U);
    EXPECT_EQ(max_clique(Graph(5)).size, 1U);
    Graph k(6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j)
            k.add_edge(i, j);
    EXPECT_EQ(max_clique(k).size, 6U);
}

TEST(MaxClique, AgreesWithExhaustiveSearch)
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + trial % 16;
        const double p = 0.1 + 0.8 * u(rng);
        Graph g(n);
        std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (u(rng) < p) {
                    g.add_edge(i, j);
                    adj[i][j] = adj[j][i] = true;
                }
        const auto got = max_clique(g);
        ASSERT_EQ(got.size, oracles::brute_clique(adj)) << "trial " << trial;
        EXPECT_EQ(got.witness.size(), got.size);
        EXPECT_TRUE(g.is_clique(got.witness));
    }
}

TEST(MaxClique, LargeSparseGraphFinishes)
{
    // Disjoint triangles plus one planted 7-clique.
    Graph g(300);
    for (std::size_t t = 0; t + 2 < 280; t += 3) {
        g.add_edge(t, t + 1);
        g.add_edge(t + 1, t + 2);
        g.add_edge(t, t + 2);
    }
    for (std::size_t i = 285; i < 292; ++i)
        for (std::size_t j = i + 1; j < 292; ++j)
            g.add_edge(i, j);
    EXPECT_EQ(max_clique(g).size, 7U);
}
