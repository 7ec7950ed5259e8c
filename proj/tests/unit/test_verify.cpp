#include <gtest/gtest.h>

#include <cmath>

#include "graphaug/dataset.hpp"
#include "graphaug/verify.hpp"
#include "support.hpp"

namespace graphaug {
namespace {

using namespace testing;

TrialRecord record(std::int64_t dv, std::int64_t de, bool before = true, bool after = true) {
  TrialRecord r;
  r.node_delta = dv;
  r.edge_delta = de;
  r.connected_before = before;
  r.connected_after = after;
  return r;
}

TEST(Evaluate, P1NeedsZeroEdgeMeanAndFixedOrCenteredNodes) {
  std::vector<TrialRecord> balanced = {record(0, 1), record(0, -1), record(0, 1), record(0, -1)};
  EXPECT_EQ(evaluate_p1(balanced).verdict, Verdict::pass);
  std::vector<TrialRecord> shrinking = {record(0, -1), record(0, -1), record(0, -1)};
  EXPECT_EQ(evaluate_p1(shrinking).verdict, Verdict::fail);
  std::vector<TrialRecord> node_drift = {record(-1, 0), record(-1, 0)};
  EXPECT_EQ(evaluate_p1(node_drift).verdict, Verdict::fail);
  std::vector<TrialRecord> node_noise = {record(1, 0), record(-1, 0), record(1, 0), record(-1, 0)};
  EXPECT_EQ(evaluate_p1(node_noise).verdict, Verdict::pass);
}

TEST(Evaluate, P2RequiresEveryTrialToKeepConnectivity) {
  std::vector<TrialRecord> kept = {record(0, 0, true, true), record(0, 0, false, false)};
  EXPECT_EQ(evaluate_p2(kept).verdict, Verdict::pass);
  kept.push_back(record(0, 0, false, true));
  EXPECT_EQ(evaluate_p2(kept).verdict, Verdict::fail);
}

TEST(Evaluate, P3AcceptsNodeOrFeatureChange) {
  std::vector<TrialRecord> still = {record(0, 1), record(0, -1)};
  for (auto& r : still) r.same_shape = true;
  EXPECT_EQ(evaluate_p3(still).verdict, Verdict::fail);
  still[0].feature_change = 2.0;
  EXPECT_EQ(evaluate_p3(still).verdict, Verdict::pass);
  std::vector<TrialRecord> resized = {record(1, 0)};
  EXPECT_EQ(evaluate_p3(resized).verdict, Verdict::pass);
}

TEST(Evaluate, P4RequiresSomeEdgeChange) {
  std::vector<TrialRecord> flat = {record(0, 0), record(1, 0)};
  EXPECT_EQ(evaluate_p4(flat).verdict, Verdict::fail);
  flat.push_back(record(0, 2));
  EXPECT_EQ(evaluate_p4(flat).verdict, Verdict::pass);
}

GraphSet corpus() {
  Rng rng = make_stream(7, 0);
  return gen_mixed_corpus(30, rng);
}

TEST(RunTrials, IndependentOfThreadCount) {
  const GraphSet set = corpus();
  const Augmenter aug(Method::nodesam);
  const auto pool = applicable_pool(aug, set);
  TrialConfig one{400, 5, 1}, four{400, 5, 4};
  const auto a = run_trials(aug, set, pool, one);
  const auto b = run_trials(aug, set, pool, four);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    EXPECT_EQ(a[t].graph, b[t].graph);
    EXPECT_EQ(a[t].edge_delta, b[t].edge_delta);
    EXPECT_EQ(a[t].node_delta, b[t].node_delta);
  }
}

TEST(RunTrials, SplitOnlyAddsExactlyOneNodeAndEdge) {
  const GraphSet set = corpus();
  const Augmenter aug = Augmenter::parse("nodesam:split-only");
  const auto records = run_trials(aug, set, applicable_pool(aug, set), TrialConfig{500, 3, 1});
  for (const auto& r : records) {
    EXPECT_EQ(r.node_delta, 1);
    EXPECT_EQ(r.edge_delta, 1);
  }
}

TEST(HeadroomPool, TriangleFreeGraphsHaveInfiniteRatio) {
  GraphSet set;
  set.feature_dim = 1;
  set.graphs = {star(5), cycle(6)};
  const std::vector<std::size_t> all = {0, 1};
  double ratio = 0.0;
  EXPECT_EQ(headroom_pool(set, all, &ratio), all);
  EXPECT_TRUE(std::isinf(ratio));
  set.graphs.push_back(complete(5));
  const std::vector<std::size_t> three = {0, 1, 2};
  EXPECT_EQ(headroom_pool(set, three).size(), 2u);
}

// Exact expectation of T after splitting `target`, by enumerating every coin outcome.
double exact_split_triangles(const Graph& g, NodeId target) {
  const auto nb = g.neighbors(target);
  const auto child = static_cast<NodeId>(g.node_count());
  double total = 0.0;
  const std::size_t outcomes = std::size_t{1} << nb.size();
  for (std::size_t mask = 0; mask < outcomes; ++mask) {
    std::vector<Edge> e;
    for (const Edge& x : g.edges())
      if (x.u != target && x.v != target) e.push_back(x);
    for (std::size_t i = 0; i < nb.size(); ++i) e.emplace_back((mask >> i) & 1 ? child : target, nb[i]);
    e.emplace_back(target, child);
    total += static_cast<double>(brute_triangles(Graph::from_edges(g.node_count() + 1, e)));
  }
  return total / static_cast<double>(outcomes);
}

TEST(Oracles, SplitPredictionMatchesEnumeration) {
  Rng rng = make_stream(61, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const Graph g = random_graph(8, 0.5, rng);
    const auto target = static_cast<NodeId>(rep % 8);
    const double predicted = static_cast<double>(brute_triangles(g)) -
                             static_cast<double>(brute_triangles_at(g, target)) / 2.0;
    EXPECT_NEAR(exact_split_triangles(g, target), predicted, 1e-12);
  }
}

TEST(Oracles, MergePredictionMatchesEnumeration) {
  Rng rng = make_stream(62, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const Graph g = random_graph(9, 0.45, rng);
    if (g.edge_count() == 0) continue;
    double total = 0.0;
    for (const Edge& e : g.edges()) total += static_cast<double>(merge_edge(g, e).graph.edge_count());
    const double m = static_cast<double>(g.edge_count());
    EXPECT_NEAR(total / m, m - 3.0 * static_cast<double>(brute_triangles(g)) / m - 1.0, 1e-12);
  }
}

TEST(Oracles, MonteCarloEstimatesPass) {
  EXPECT_TRUE(oracle_split_triangles(complete(5), 0, 20000, 1).pass);
  EXPECT_TRUE(oracle_split_triangles(cycle(6), 0, 2000, 1).pass);
  EXPECT_TRUE(oracle_adjust_triangles(complete(4), 0, 1, 20000, 1).pass);
  EXPECT_TRUE(oracle_merge_edges(complete(4), 20000, 1).pass);
  const OracleReport k3 = oracle_merge_edges(complete(3), 100, 1);
  EXPECT_EQ(k3.observed.se, 0.0);
  EXPECT_TRUE(k3.pass);
  EXPECT_THROW(oracle_adjust_triangles(cycle(6), 0, 3, 10, 1), std::invalid_argument);
}

TEST(ExpectedVerdicts, ProposedMethodsPassEverything) {
  for (Method m : {Method::nodesam, Method::submix}) {
    const auto v = expected_verdicts(m);
    ASSERT_TRUE(v);
    for (Verdict x : *v) EXPECT_EQ(x, Verdict::pass);
    EXPECT_TRUE(expectation_published(m));
  }
  const auto swap = expected_verdicts(Method::motif_swap);
  ASSERT_TRUE(swap);
  EXPECT_EQ((*swap)[4], Verdict::fail);
  EXPECT_FALSE(expectation_published(Method::drop_node));
  EXPECT_FALSE(expected_verdicts(Method::identity));
}

TEST(ParseSizes, AcceptsScientificNotation) {
  EXPECT_EQ(parse_sizes("1e3,2000,1e4"), (std::vector<std::size_t>{1000, 2000, 10000}));
  EXPECT_THROW(parse_sizes("1e3,,2"), std::invalid_argument);
  EXPECT_THROW(parse_sizes("1.5"), std::invalid_argument);
  EXPECT_THROW(parse_sizes("0"), std::invalid_argument);
}

TEST(Scaling, InstancesHitRequestedSize) {
  ScalingConfig cfg;
  const GraphSet er = scaling_instance(cfg, 3000, 0);
  EXPECT_EQ(er.graphs[0].edge_count(), 3000u);
  EXPECT_EQ(er.graphs[0].node_count(), 1000u);
  cfg.family = GraphFamily::communities;
  const GraphSet co = scaling_instance(cfg, 20000, 0);
  EXPECT_NEAR(static_cast<double>(co.graphs[0].edge_count()), 20000.0, 2000.0);
  EXPECT_EQ(co.graphs[1].label(), 1);
}

TEST(Scaling, ReportHasOneRowPerSize) {
  ScalingConfig cfg;
  cfg.edge_sizes = {500, 1000, 2000};
  cfg.repeats = 2;
  cfg.min_batch_seconds = 0.0005;
  const ScalingReport r = check_p5(Augmenter(Method::drop_edge), cfg);
  ASSERT_EQ(r.rows.size(), 3u);
  for (const auto& row : r.rows) EXPECT_GT(row.seconds, 0.0);
  EXPECT_EQ(r.report.property, Property::p5);
  cfg.edge_sizes = {500};
  EXPECT_THROW(check_p5(Augmenter(Method::drop_edge), cfg), std::invalid_argument);
}

TEST(Names, PropertiesAndVerdictsRoundTrip) {
  for (Property p : kAllProperties) EXPECT_EQ(parse_property(to_string(p)), p);
  EXPECT_EQ(to_string(Verdict::pass), "PASS");
  EXPECT_EQ(parse_family("communities"), GraphFamily::communities);
  EXPECT_THROW(parse_property("P9"), std::invalid_argument);
}

}  // namespace
}  // namespace graphaug
