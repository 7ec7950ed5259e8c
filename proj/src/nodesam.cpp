#include "graphaug/nodesam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace graphaug {

std::string_view to_string(NodeSamVariant v) {
  switch (v) {
    case NodeSamVariant::full: return "full";
    case NodeSamVariant::base: return "base";
    case NodeSamVariant::split_only: return "split-only";
    case NodeSamVariant::merge_only: return "merge-only";
  }
  return "unknown";
}

NodeSamVariant parse_nodesam_variant(std::string_view name) {
  if (name == "full") return NodeSamVariant::full;
  if (name == "base") return NodeSamVariant::base;
  if (name == "split-only") return NodeSamVariant::split_only;
  if (name == "merge-only") return NodeSamVariant::merge_only;
  throw std::invalid_argument("unknown NodeSam variant '" + std::string(name) + "'");
}

SplitOutcome split(const Graph& g, Rng& rng) {
  if (g.node_count() == 0) throw GraphError("cannot split a node of an empty graph");
  return split_node(g, static_cast<NodeId>(uniform_index(rng, g.node_count())), rng);
}

SplitOutcome split_node(const Graph& g, NodeId target, Rng& rng) {
  g.check_node(target);
  const auto n = static_cast<NodeId>(g.node_count());
  SplitOutcome out;
  out.target = target;
  out.child_a = target;
  out.child_b = n;

  // child_a keeps the target id, so only neighbors sent to child_b move.
  std::vector<Edge> removed, added;
  for (NodeId w : g.neighbors(target)) {
    if (!fair_coin(rng)) {
      removed.emplace_back(target, w);
      added.emplace_back(out.child_b, w);
    }
  }
  added.emplace_back(out.child_a, out.child_b);

  const auto& src = g.features().data();
  const auto row = g.features().row(target);
  std::vector<double> data;
  data.reserve(src.size() + row.size());
  data.assign(src.begin(), src.end());
  data.insert(data.end(), row.begin(), row.end());
  FeatureMatrix x(n + 1, g.feature_dim(), std::move(data));
  out.graph = g.edited(n + 1, removed, added, std::move(x));
  return out;
}

double compute_h(std::uint64_t triangles, std::size_t degree, std::size_t node_count,
                 std::size_t edge_count) {
  if (degree == 0) {
    if (triangles > 0) throw std::invalid_argument("a node with triangles cannot have degree 0");
    return 0.0;
  }
  const double t = static_cast<double>(triangles);
  const double c = static_cast<double>(edge_count) - 3.0 * t / static_cast<double>(degree) - 2.0;
  const double disc = c * c + 4.0 * t * static_cast<double>(node_count) - 6.0 * t;
  const double h = 0.5 * (std::sqrt(std::max(disc, 0.0)) - c);
  return std::max(h, 0.0);
}

AdjustParams adjust_params(const Graph& g, NodeId target) {
  AdjustParams p;
  LocalTriangles local = triangles_at(g, target);
  p.triangles = local.count;
  p.degree = g.degree(target);
  if (p.degree == 0 || p.triangles == 0) return p;

  p.c = static_cast<double>(g.edge_count()) - 3.0 * static_cast<double>(p.triangles) / static_cast<double>(p.degree) - 2.0;
  p.h = compute_h(p.triangles, p.degree, g.node_count(), g.edge_count());
  for (NodeId u : local.nodes) {
    if (u != target) p.candidates.push_back(u);
  }
  p.inclusion_probability = std::min(1.0, p.h / static_cast<double>(p.candidates.size()));
  return p;
}

AdjustOutcome adjust(const Graph& g, const SplitOutcome& split, Rng& rng) {
  AdjustOutcome out{split.graph, adjust_params(g, split.target)};
  AdjustParams& p = out.params;
  if (p.candidates.empty()) return out;

  // Draw for every candidate so the stream advance does not depend on outcomes.
  const double threshold = p.h / static_cast<double>(p.candidates.size());
  for (NodeId u : p.candidates) {
    if (uniform_unit(rng) < threshold) p.chosen.push_back(u);
  }
  if (p.chosen.empty()) return out;

  const Graph& mid = split.graph;
  std::vector<Edge> added;
  added.reserve(p.chosen.size());
  for (NodeId u : p.chosen) {
    NodeId missing = mid.has_edge(u, split.child_a) ? split.child_b : split.child_a;
    added.emplace_back(u, missing);
  }
  out.graph = mid.edited(mid.node_count(), {}, added, mid.features());
  return out;
}

MergeOutcome merge(const Graph& g, Rng& rng) {
  if (g.edge_count() == 0) throw GraphError("cannot merge adjacent nodes of an edgeless graph");
  return merge_edge(g, g.edges()[uniform_index(rng, g.edge_count())]);
}

MergeOutcome merge_edge(const Graph& g, Edge e) {
  if (!g.has_edge(e.u, e.v)) throw GraphError("merge target is not an edge");
  MergeOutcome out;
  out.first = e.u;
  out.second = e.v;
  out.merged = e.u;  // e.u < e.v

  // Every edge at `drop` goes; its other neighbors not already adjacent to
  // the kept node are rewired there, then `drop` is erased.
  const NodeId keep = e.u;
  const NodeId drop = e.v;
  std::vector<Edge> removed, added;
  for (NodeId w : g.neighbors(drop)) {
    removed.emplace_back(drop, w);
    if (w != keep && !g.has_edge(keep, w)) added.emplace_back(keep, w);
  }

  FeatureMatrix x = g.features();
  auto kept = x.row(keep);
  auto gone = g.features().row(drop);
  for (std::size_t j = 0; j < kept.size(); ++j) kept[j] = (kept[j] + gone[j]) / 2.0;
  x.erase_row(drop);

  out.graph = g.edited(g.node_count(), removed, added, std::move(x), drop);
  out.removed_edges = g.edge_count() - out.graph.edge_count();
  return out;
}

Graph nodesam(const Graph& g, Rng& rng) {
  SplitOutcome s = split(g, rng);
  AdjustOutcome a = adjust(g, s, rng);
  return merge(a.graph, rng).graph;
}

Graph nodesam_variant(const Graph& g, NodeSamVariant variant, Rng& rng) {
  switch (variant) {
    case NodeSamVariant::full: return nodesam(g, rng);
    case NodeSamVariant::base: return merge(split(g, rng).graph, rng).graph;
    case NodeSamVariant::split_only: return split(g, rng).graph;
    case NodeSamVariant::merge_only: return merge(g, rng).graph;
  }
  throw std::invalid_argument("unknown NodeSam variant");
}

}  // namespace graphaug
