#include <gtest/gtest.h>

#include <map>

#include "graphaug/baselines.hpp"
#include "support.hpp"

namespace graphaug {
namespace {

using namespace testing;

Graph onehot_features(const Graph& g, std::size_t d) {
  FeatureMatrix x(g.node_count(), d);
  for (std::size_t v = 0; v < g.node_count(); ++v) x.at(v, v % d) = 1.0;
  return g.with_features(std::move(x));
}

TEST(Baselines, ExactCountDeltas) {
  Rng rng = make_stream(41, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const Graph g = onehot_features(random_graph(10, 0.3, rng), 3);
    if (g.edge_count() == 0 || g.edge_count() == 45) continue;
    const Graph de = drop_edge(g, rng);
    EXPECT_EQ(de.node_count(), g.node_count());
    EXPECT_EQ(de.edge_count() + 1, g.edge_count());

    const Graph ae = add_edge(g, rng);
    EXPECT_EQ(ae.edge_count(), g.edge_count() + 1);
    for (const Edge& e : g.edges()) EXPECT_TRUE(ae.has_edge(e.u, e.v));

    const Graph dn = drop_node(g, rng);
    EXPECT_EQ(dn.node_count() + 1, g.node_count());
    EXPECT_LE(dn.edge_count(), g.edge_count());

    const Graph ca = change_attr(g, rng);
    EXPECT_EQ(ca.node_count(), g.node_count());
    EXPECT_EQ(ca.edges().size(), g.edges().size());
    std::size_t changed = 0;
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      ASSERT_TRUE(ca.features().onehot_index(v));
      changed += *ca.features().onehot_index(v) != *g.features().onehot_index(v);
    }
    EXPECT_EQ(changed, 1u);

    const Graph na = node_aug(g, rng);
    EXPECT_EQ(na.node_count(), g.node_count());
    EXPECT_LE(na.edge_count(), g.edge_count() + 1);
    EXPECT_GE(na.edge_count() + 1, g.edge_count());
  }
}

TEST(AddEdge, PathBecomesTriangle) {
  Rng rng = make_stream(42, 0);
  EXPECT_EQ(add_edge(path(3), rng), complete(3));
  EXPECT_THROW(add_edge(complete(4), rng), InapplicableError);
}

TEST(AddEdge, UniformOverNonEdges) {
  const Graph g = star(4);  // six non-edges among the leaves
  Rng rng = make_stream(43, 0);
  std::map<std::pair<NodeId, NodeId>, double> seen;
  const int trials = 30000;
  for (int t = 0; t < trials; ++t) {
    const Graph h = add_edge(g, rng);
    for (const Edge& e : h.edges()) {
      if (!g.has_edge(e.u, e.v)) seen[{e.u, e.v}] += 1.0;
    }
  }
  ASSERT_EQ(seen.size(), 6u);
  std::vector<double> observed;
  for (const auto& [edge, n] : seen) observed.push_back(n);
  EXPECT_LT(chi2_statistic(observed, std::vector<double>(6, trials / 6.0)), chi2_critical_999(5));
}

TEST(MotifSwap, PathRotatesOpenTriangle) {
  Rng rng = make_stream(44, 0);
  const Graph h = motif_swap(path(3), rng);
  EXPECT_EQ(h, Graph::from_edges(3, std::vector<Edge>{Edge{0, 1}, Edge{0, 2}}));
  EXPECT_THROW(motif_swap(complete(3), rng), InapplicableError);
  EXPECT_EQ(count_open_triangles(star(4)), 6u);
  EXPECT_EQ(count_open_triangles(complete(5)), 0u);
}

TEST(MotifSwap, KeepsEdgeCount) {
  Rng rng = make_stream(45, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const Graph g = random_graph(12, 0.25, rng);
    if (count_open_triangles(g) == 0) continue;
    const Graph h = motif_swap(g, rng);
    EXPECT_EQ(h.node_count(), g.node_count());
    EXPECT_EQ(h.edge_count(), g.edge_count());
  }
}

TEST(ChangeAttr, NeedsOneHotWithTwoColumns) {
  Rng rng = make_stream(46, 0);
  EXPECT_THROW(change_attr(path(3), rng), InapplicableError);
  const Graph dense = path(3).with_features(FeatureMatrix(3, 2, 0.5));
  EXPECT_THROW(change_attr(dense, rng), InapplicableError);
}

TEST(GraphCrop, FullRatioOnConnectedGraphIsIdentity) {
  Rng rng = make_stream(47, 0);
  const Graph g = petersen();
  EXPECT_EQ(graph_crop(g, rng, 1.0), g);
  EXPECT_THROW(graph_crop(g, rng, 0.0), std::invalid_argument);
}

TEST(GraphCrop, InducedConnectedAndSized) {
  Rng rng = make_stream(48, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const Graph g = random_graph(20, 0.15, rng);
    const Graph h = graph_crop(g, rng, 0.7);
    EXPECT_TRUE(is_connected(h));
    EXPECT_LE(h.node_count(), g.node_count());
    EXPECT_LE(h.edge_count(), g.edge_count());
  }
}

TEST(NodeAug, EdgelessPairGainsOneEdge) {
  Rng rng = make_stream(49, 0);
  const Graph h = node_aug(Graph::from_edges(2, {}), rng);
  EXPECT_EQ(h.edge_count(), 1u);
  EXPECT_THROW(node_aug(Graph::from_edges(1, {}), rng), InapplicableError);
}

TEST(Baselines, InapplicableInputs) {
  Rng rng = make_stream(50, 0);
  EXPECT_THROW(drop_edge(Graph::from_edges(3, {}), rng), InapplicableError);
  EXPECT_THROW(drop_node(Graph::from_edges(1, {}), rng), InapplicableError);
  EXPECT_THROW(graph_crop(Graph::from_edges(0, {}), rng), InapplicableError);
}

}  // namespace
}  // namespace graphaug
