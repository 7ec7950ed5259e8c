#include "graphaug/submix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace graphaug {

std::vector<double> one_hot(ClassId y, std::size_t num_classes) {
  if (num_classes == 0) return {};
  if (y < 0 || static_cast<std::size_t>(y) >= num_classes) {
    throw std::invalid_argument("class " + std::to_string(y) + " out of range");
  }
  std::vector<double> v(num_classes, 0.0);
  v[static_cast<std::size_t>(y)] = 1.0;
  return v;
}

std::size_t pick_partner(const GraphSet& set, std::size_t g_index, Rng& rng) {
  if (set.size() < 2) throw std::invalid_argument("SubMix needs at least two graphs");
  if (g_index >= set.size()) throw std::out_of_range("graph index out of range");
  std::size_t j = uniform_index(rng, set.size() - 1);
  return j >= g_index ? j + 1 : j;
}

std::size_t draw_mix_size(const Graph& g, NodeId r, const Graph& g2, NodeId r2, double p, Rng& rng) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0, 1)");
  const auto smaller = static_cast<double>(std::min(component_size(g, r), component_size(g2, r2)));
  const double ratio = std::uniform_real_distribution<double>{0.0, p}(rng);
  return static_cast<std::size_t>(std::floor(ratio * smaller));
}

std::pair<OrderedNodeSet, OrderedNodeSet> sample_pair(const Graph& g, const Graph& g2,
                                                      const SubMixOptions& opts, Rng& rng) {
  if (g.node_count() == 0 || g2.node_count() == 0) {
    throw std::invalid_argument("SubMix needs non-empty graphs");
  }
  const auto r = static_cast<NodeId>(uniform_index(rng, g.node_count()));
  const auto r2 = static_cast<NodeId>(uniform_index(rng, g2.node_count()));
  const std::size_t k = draw_mix_size(g, r, g2, r2, opts.p, rng);
  return {sample_connected(g, r, k, opts.diffusion), sample_connected(g2, r2, k, opts.diffusion)};
}

AugmentedSample mix(const Graph& g, ClassId y, const Graph& g2, ClassId y2, const OrderedNodeSet& s,
                    const OrderedNodeSet& s2, std::size_t num_classes) {
  if (s.size() != s2.size()) throw std::invalid_argument("node sets differ in size");
  if (g.feature_dim() != g2.feature_dim()) throw std::invalid_argument("feature dims differ");

  constexpr NodeId absent = std::numeric_limits<NodeId>::max();
  // inside[v] == 1 iff v in S; image[w] = phi(w) for w in S'.
  std::vector<char> inside(g.node_count(), 0);
  for (NodeId v : s.nodes) {
    g.check_node(v);
    inside[v] = 1;
  }
  std::vector<NodeId> image(g2.node_count(), absent);
  for (std::size_t i = 0; i < s2.size(); ++i) {
    g2.check_node(s2.nodes[i]);
    image[s2.nodes[i]] = s.nodes[i];
  }

  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    if (!(inside[e.u] && inside[e.v])) edges.push_back(e);
  }
  const std::size_t kept = edges.size();
  std::vector<Edge> donated;
  for (const Edge& e : g2.edges()) {
    if (image[e.u] != absent && image[e.v] != absent) donated.emplace_back(image[e.u], image[e.v]);
  }
  const std::size_t donor = donated.size();
  edges = merge_sorted_edges(std::move(edges), std::move(donated));

  FeatureMatrix x = g.features();
  for (std::size_t i = 0; i < s2.size(); ++i) {
    auto src = g2.features().row(s2.nodes[i]);
    std::copy(src.begin(), src.end(), x.row(s.nodes[i]).begin());
  }

  AugmentedSample out;
  out.graph = Graph(g.node_count(), edges, std::move(x), y);
  out.kept_edges = kept;
  out.donor_edges = donor;
  out.kept_ratio = kept + donor == 0 ? 1.0 : static_cast<double>(kept) / static_cast<double>(kept + donor);
  if (num_classes > 0) {
    auto a = one_hot(y, num_classes);
    auto b = one_hot(y2, num_classes);
    out.soft_label.resize(num_classes);
    for (std::size_t c = 0; c < num_classes; ++c) {
      out.soft_label[c] = out.kept_ratio * a[c] + (1.0 - out.kept_ratio) * b[c];
    }
  }
  return out;
}

namespace {

ClassId label_or_zero(const Graph& g) { return g.label().value_or(0); }

}  // namespace

AugmentedSample submix(const GraphSet& set, std::size_t g_index, const SubMixOptions& opts, Rng& rng) {
  const std::size_t partner = pick_partner(set, g_index, rng);
  const Graph& g = set.graphs[g_index];
  const Graph& g2 = set.graphs[partner];
  auto [s, s2] = sample_pair(g, g2, opts, rng);
  AugmentedSample out = mix(g, label_or_zero(g), g2, label_or_zero(g2), s, s2, set.num_classes);
  out.partner = partner;
  return out;
}

AugmentedSample submix_base(const GraphSet& set, std::size_t g_index, const SubMixOptions& opts,
                            Rng& rng) {
  const std::size_t partner = pick_partner(set, g_index, rng);
  const Graph& g = set.graphs[g_index];
  const Graph& g2 = set.graphs[partner];
  if (g.node_count() == 0 || g2.node_count() == 0) {
    throw std::invalid_argument("SubMix needs non-empty graphs");
  }
  const auto r = static_cast<NodeId>(uniform_index(rng, g.node_count()));
  const auto r2 = static_cast<NodeId>(uniform_index(rng, g2.node_count()));
  const std::size_t k = draw_mix_size(g, r, g2, r2, opts.p, rng);

  auto random_subset = [&](const Graph& h) {
    OrderedNodeSet s;
    s.source = SelectionSource::random;
    std::vector<NodeId> all(h.node_count());
    for (NodeId v = 0; v < h.node_count(); ++v) all[v] = v;
    // partial Fisher-Yates: the first k slots become a uniform ordered sample
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(all[i], all[i + uniform_index(rng, all.size() - i)]);
    }
    all.resize(k);
    s.nodes = std::move(all);
    if (!s.nodes.empty()) s.root = s.nodes.front();
    return s;
  };
  OrderedNodeSet s = random_subset(g);
  OrderedNodeSet s2 = random_subset(g2);
  AugmentedSample out = mix(g, label_or_zero(g), g2, label_or_zero(g2), s, s2, set.num_classes);
  out.partner = partner;
  return out;
}

}  // namespace graphaug
