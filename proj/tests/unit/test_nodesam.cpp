#include <gtest/gtest.h>

#include <cmath>

#include "graphaug/nodesam.hpp"
#include "support.hpp"

namespace graphaug {
namespace {

using namespace testing;

Graph with_row_features(const Graph& g) {
  FeatureMatrix x(g.node_count(), 2);
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    x.at(v, 0) = static_cast<double>(v);
    x.at(v, 1) = 1.0;
  }
  return g.with_features(std::move(x));
}

TEST(Split, StructuralInvariants) {
  Rng rng = make_stream(21, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const Graph g = with_row_features(random_graph(12, 0.3, rng));
    const auto target = static_cast<NodeId>(uniform_index(rng, g.node_count()));
    const SplitOutcome s = split_node(g, target, rng);
    const Graph& h = s.graph;
    ASSERT_EQ(h.node_count(), g.node_count() + 1);
    EXPECT_EQ(h.edge_count(), g.edge_count() + 1);
    EXPECT_EQ(s.child_a, target);
    EXPECT_EQ(s.child_b, g.node_count());
    EXPECT_TRUE(h.has_edge(s.child_a, s.child_b));
    EXPECT_EQ(h.degree(s.child_a) + h.degree(s.child_b), g.degree(target) + 2);
    for (NodeId w : g.neighbors(target)) {
      EXPECT_NE(h.has_edge(s.child_a, w), h.has_edge(s.child_b, w));
    }
    for (const Edge& e : g.edges()) {
      if (e.u != target && e.v != target) EXPECT_TRUE(h.has_edge(e.u, e.v));
    }
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_EQ(h.features().at(s.child_b, j), g.features().at(target, j));
      EXPECT_EQ(h.features().at(s.child_a, j), g.features().at(target, j));
    }
  }
}

TEST(Split, LeafAssignmentIsBinomial) {
  const Graph g = star(3);
  Rng rng = make_stream(22, 0);
  const int trials = 20000;
  std::vector<double> observed(4, 0.0);
  for (int t = 0; t < trials; ++t) {
    const SplitOutcome s = split_node(g, 0, rng);
    observed[s.graph.degree(s.child_a) - 1] += 1.0;
  }
  const std::vector<double> expected = {trials / 8.0, 3 * trials / 8.0, 3 * trials / 8.0, trials / 8.0};
  EXPECT_LT(chi2_statistic(observed, expected), chi2_critical_999(3));
}

TEST(Split, EmptyGraphThrows) {
  Rng rng = make_stream(23, 0);
  EXPECT_THROW(split(Graph::from_edges(0, {}), rng), GraphError);
  EXPECT_THROW(split_node(path(2), 2, rng), std::out_of_range);
}

TEST(ComputeH, KnownValues) {
  EXPECT_DOUBLE_EQ(compute_h(1, 2, 3, 3), 1.5);
  EXPECT_NEAR(compute_h(3, 3, 4, 6), (std::sqrt(31.0) - 1.0) / 2.0, 1e-12);
  EXPECT_NEAR(compute_h(3, 3, 4, 6), 2.2838821814, 1e-9);
  EXPECT_EQ(compute_h(0, 4, 10, 12), 0.0);
  EXPECT_EQ(compute_h(0, 0, 10, 12), 0.0);
  EXPECT_THROW(compute_h(1, 0, 3, 3), std::invalid_argument);
}

TEST(ComputeH, SolvesCompensationQuadratic) {
  // h is the non-negative root of h^2 + c h - t (2|V| - 3) / 2 = 0.
  Rng rng = make_stream(24, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const Graph g = random_graph(10 + rep % 15, 0.35, rng);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const double t = static_cast<double>(brute_triangles_at(g, v));
      const double d = static_cast<double>(g.degree(v));
      if (t == 0) continue;
      const double n = static_cast<double>(g.node_count());
      const double c = static_cast<double>(g.edge_count()) - 3.0 * t / d - 2.0;
      const double h = compute_h(static_cast<std::uint64_t>(t), g.degree(v), g.node_count(), g.edge_count());
      EXPECT_GE(h, 0.0);
      EXPECT_NEAR(h * h + c * h, t * (2.0 * n - 3.0) / 2.0, 1e-7 * (1.0 + t * n));
    }
  }
}

TEST(Adjust, ParamsOnTriangle) {
  const AdjustParams p = adjust_params(complete(3), 0);
  EXPECT_EQ(p.triangles, 1u);
  EXPECT_EQ(p.degree, 2u);
  EXPECT_DOUBLE_EQ(p.c, -0.5);
  EXPECT_DOUBLE_EQ(p.h, 1.5);
  EXPECT_EQ(p.candidates, (std::vector<NodeId>{1, 2}));
  EXPECT_DOUBLE_EQ(p.inclusion_probability, 0.75);

  const AdjustParams none = adjust_params(path(3), 1);
  EXPECT_EQ(none.triangles, 0u);
  EXPECT_TRUE(none.candidates.empty());
  EXPECT_EQ(none.inclusion_probability, 0.0);
}

TEST(Adjust, InclusionFrequencyMatchesProbability) {
  const Graph g = complete(3);
  Rng rng = make_stream(25, 0);
  const int trials = 40000;
  double chosen = 0.0;
  for (int t = 0; t < trials; ++t) {
    const SplitOutcome s = split_node(g, 0, rng);
    const AdjustOutcome a = adjust(g, s, rng);
    chosen += static_cast<double>(a.params.chosen.size());
    EXPECT_EQ(a.graph.edge_count(), s.graph.edge_count() + a.params.chosen.size());
    for (NodeId u : a.params.chosen) {
      EXPECT_TRUE(a.graph.has_edge(u, s.child_a));
      EXPECT_TRUE(a.graph.has_edge(u, s.child_b));
    }
  }
  const double per_candidate = chosen / (2.0 * trials);
  const double se = std::sqrt(0.75 * 0.25 / (2.0 * trials));
  EXPECT_NEAR(per_candidate, 0.75, 4.0 * se);
}

TEST(Merge, SmallGraphs) {
  Rng rng = make_stream(26, 0);
  const MergeOutcome k2 = merge(complete(2), rng);
  EXPECT_EQ(k2.graph.node_count(), 1u);
  EXPECT_EQ(k2.graph.edge_count(), 0u);
  EXPECT_EQ(k2.removed_edges, 1u);

  const MergeOutcome k3 = merge(complete(3), rng);
  EXPECT_EQ(k3.graph.node_count(), 2u);
  EXPECT_EQ(k3.graph.edge_count(), 1u);
  EXPECT_EQ(k3.removed_edges, 2u);

  const MergeOutcome p = merge_edge(path(3), Edge{1, 2});
  EXPECT_EQ(p.graph.node_count(), 2u);
  EXPECT_EQ(p.graph.edge_count(), 1u);
  EXPECT_EQ(p.merged, 1u);

  EXPECT_THROW(merge(Graph::from_edges(3, {}), rng), GraphError);
  EXPECT_THROW(merge_edge(path(3), Edge{0, 2}), GraphError);
}

TEST(Merge, AveragesFeaturesAndShiftsIndices) {
  const Graph g = with_row_features(path(4));
  const MergeOutcome m = merge_edge(g, Edge{1, 2});
  EXPECT_EQ(m.graph.node_count(), 3u);
  EXPECT_DOUBLE_EQ(m.graph.features().at(1, 0), 1.5);
  EXPECT_DOUBLE_EQ(m.graph.features().at(2, 0), 3.0);
  EXPECT_TRUE(m.graph.has_edge(0, 1));
  EXPECT_TRUE(m.graph.has_edge(1, 2));
}

TEST(Merge, RemovesOnePlusCommonNeighbors) {
  Rng rng = make_stream(27, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const Graph g = random_graph(14, 0.3, rng);
    if (g.edge_count() == 0) continue;
    const MergeOutcome m = merge(g, rng);
    EXPECT_EQ(m.removed_edges, 1 + common_neighbors(g, m.first, m.second).size());
    EXPECT_EQ(m.graph.edge_count(), g.edge_count() - m.removed_edges);
  }
}

TEST(NodeSam, PreservesNodeCountAndConnectivity) {
  Rng rng = make_stream(28, 0);
  for (int rep = 0; rep < 300; ++rep) {
    Graph g = random_graph(10 + rep % 10, 0.3, rng);
    if (g.edge_count() == 0) continue;
    const bool connected = is_connected(g);
    const Graph h = nodesam(g, rng);
    EXPECT_EQ(h.node_count(), g.node_count());
    if (connected) EXPECT_TRUE(is_connected(h));
    EXPECT_EQ(h.label(), g.label());
  }
}

TEST(NodeSam, VariantsShiftCountsAsDocumented) {
  Rng rng = make_stream(29, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const Graph g = random_graph(12, 0.35, rng);
    if (g.edge_count() == 0) continue;
    const Graph s = nodesam_variant(g, NodeSamVariant::split_only, rng);
    EXPECT_EQ(s.node_count(), g.node_count() + 1);
    EXPECT_EQ(s.edge_count(), g.edge_count() + 1);
    const Graph m = nodesam_variant(g, NodeSamVariant::merge_only, rng);
    EXPECT_EQ(m.node_count(), g.node_count() - 1);
    EXPECT_LE(m.edge_count() + 1, g.edge_count());
    const Graph b = nodesam_variant(g, NodeSamVariant::base, rng);
    EXPECT_EQ(b.node_count(), g.node_count());
    EXPECT_LE(b.edge_count(), g.edge_count());
  }
}

TEST(NodeSam, VariantNamesRoundTrip) {
  for (auto v : {NodeSamVariant::full, NodeSamVariant::base, NodeSamVariant::split_only,
                 NodeSamVariant::merge_only}) {
    EXPECT_EQ(parse_nodesam_variant(to_string(v)), v);
  }
  EXPECT_THROW(parse_nodesam_variant("half"), std::invalid_argument);
}

}  // namespace
}  // namespace graphaug
