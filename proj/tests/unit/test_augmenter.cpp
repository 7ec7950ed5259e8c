#include <gtest/gtest.h>

#include "graphaug/augmenter.hpp"
#include "graphaug/baselines.hpp"
#include "graphaug/dataset.hpp"
#include "support.hpp"

namespace graphaug {
namespace {

using namespace testing;

TEST(Augmenter, NamesRoundTrip) {
  for (Method m : all_methods()) EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_THROW(parse_method("shuffle"), std::invalid_argument);
  EXPECT_EQ(Augmenter::parse("nodesam:merge-only").name(), "nodesam:merge-only");
  EXPECT_EQ(Augmenter::parse("submix").name(), "submix");
  EXPECT_EQ(Augmenter::parse("submix:base").name(), "submix:base");
}

TEST(Augmenter, RejectsBadVariantsAndRepeat) {
  EXPECT_THROW(Augmenter::parse("dropedge:base"), std::invalid_argument);
  EXPECT_THROW(Augmenter::parse("submix:split-only"), std::invalid_argument);
  AugmentOptions o;
  o.repeat = 0;
  EXPECT_THROW(Augmenter(Method::drop_edge, o), std::invalid_argument);
}

TEST(Augmenter, ApplyThrowsExactlyWhenInapplicable) {
  GraphSet set;
  set.feature_dim = 1;
  set.graphs = {Graph::from_edges(3, {}), complete(4), path(3), Graph::from_edges(1, {})};
  Rng rng = make_stream(81, 0);
  for (Method m : all_methods()) {
    const Augmenter aug(m);
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (aug.applicable(set, i)) {
        EXPECT_NO_THROW(aug.apply(set, i, rng)) << aug.name() << " graph " << i;
      } else {
        EXPECT_THROW(aug.apply(set, i, rng), InapplicableError) << aug.name() << " graph " << i;
      }
    }
  }
}

TEST(Augmenter, SingleGraphMethodsKeepHardLabel) {
  Rng corpus_rng = make_stream(82, 0);
  const GraphSet set = gen_mixed_corpus(9, corpus_rng);
  Rng rng = make_stream(83, 0);
  for (Method m : all_methods()) {
    if (m == Method::submix) continue;
    const Augmenter aug(m);
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (!aug.applicable(set, i)) continue;
      const AugmentedSample s = aug.apply(set, i, rng);
      EXPECT_EQ(s.partner, i);
      EXPECT_EQ(s.graph.label(), set.graphs[i].label());
      EXPECT_EQ(s.soft_label, one_hot(*set.graphs[i].label(), 2));
    }
  }
}

TEST(Augmenter, IdentityCopiesInput) {
  Rng corpus_rng = make_stream(84, 0);
  const GraphSet set = gen_mixed_corpus(3, corpus_rng);
  Rng rng = make_stream(85, 0);
  EXPECT_EQ(Augmenter(Method::identity).apply(set, 1, rng).graph, set.graphs[1]);
}

TEST(Augmenter, RepeatAppliesBaselineSeveralTimes) {
  GraphSet set;
  set.feature_dim = 1;
  set.graphs = {complete(6)};
  AugmentOptions o;
  o.repeat = 3;
  const Augmenter aug(Method::drop_edge, o);
  Rng rng = make_stream(86, 0);
  EXPECT_EQ(aug.apply(set, 0, rng).graph.edge_count(), 12u);
  set.graphs = {path(3)};
  EXPECT_FALSE(aug.applicable(set, 0));
}

TEST(Augmenter, SameStreamSameSample) {
  Rng corpus_rng = make_stream(87, 0);
  const GraphSet set = gen_clustered_corpus(8, corpus_rng);
  for (Method m : all_methods()) {
    const Augmenter aug(m);
    if (!aug.applicable(set, 2)) continue;
    Rng a = make_stream(88, 2, 0), b = make_stream(88, 2, 0);
    EXPECT_EQ(aug.apply(set, 2, a).graph, aug.apply(set, 2, b).graph) << aug.name();
  }
}

}  // namespace
}  // namespace graphaug
