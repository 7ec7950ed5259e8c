#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "graphaug/diffusion.hpp"
#include "graphaug/graph.hpp"
#include "graphaug/random.hpp"

namespace graphaug {

// A generated graph together with its soft label. For augmenters that keep the
// hard label the soft label is the one-hot of that label (empty when unlabeled).
struct AugmentedSample {
  Graph graph;
  std::vector<double> soft_label;
  double kept_ratio = 1.0;  // q
  std::size_t kept_edges = 0;
  std::size_t donor_edges = 0;
  std::size_t partner = 0;  // index of G' in the set; equals the source index for single-graph augmenters
};

std::vector<double> one_hot(ClassId y, std::size_t num_classes);

// Uniform over all indices except `g_index`. Throws std::invalid_argument when |set| < 2.
std::size_t pick_partner(const GraphSet& set, std::size_t g_index, Rng& rng);

struct SubMixOptions {
  double p = 0.4;
  DiffusionOptions diffusion;
};

// k = floor(uniform(0, p) * min(|component(g, r)|, |component(g2, r')|)).
std::size_t draw_mix_size(const Graph& g, NodeId r, const Graph& g2, NodeId r2, double p, Rng& rng);

// Roots uniform over each graph, both sets from sample_connected with the same k.
std::pair<OrderedNodeSet, OrderedNodeSet> sample_pair(const Graph& g, const Graph& g2,
                                                      const SubMixOptions& opts, Rng& rng);

// Replaces the subgraph induced by `s` in g with the one induced by `s2` in g2,
// matching s2[i] -> s[i]. Throws std::invalid_argument on size or feature-dim mismatch.
AugmentedSample mix(const Graph& g, ClassId y, const Graph& g2, ClassId y2, const OrderedNodeSet& s,
                    const OrderedNodeSet& s2, std::size_t num_classes);

AugmentedSample submix(const GraphSet& set, std::size_t g_index, const SubMixOptions& opts, Rng& rng);

// Ablation: same k rule, but S and S' are uniform random subsets in random order.
AugmentedSample submix_base(const GraphSet& set, std::size_t g_index, const SubMixOptions& opts,
                            Rng& rng);

}  // namespace graphaug
