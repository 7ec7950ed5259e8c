#include "graphaug/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace graphaug {

namespace {

// j-th node (ascending) that is neither v nor in the sorted list `adjacent`.
NodeId nth_non_neighbor(std::size_t node_count, NodeId v, std::span<const NodeId> adjacent, std::size_t j) {
  auto it = adjacent.begin();
  for (NodeId x = 0; x < node_count; ++x) {
    while (it != adjacent.end() && *it < x) ++it;
    if (x == v || (it != adjacent.end() && *it == x)) continue;
    if (j-- == 0) return x;
  }
  throw std::logic_error("non-neighbor index out of range");
}

void shift_hot_index(FeatureMatrix& x, NodeId v, Rng& rng) {
  auto hot = x.onehot_index(v);
  if (!hot || x.cols() < 2) throw InapplicableError("ChangeAttr needs one-hot features with d >= 2");
  std::size_t to = uniform_index(rng, x.cols() - 1);
  if (to >= *hot) ++to;
  x.at(v, *hot) = 0.0;
  x.at(v, to) = 1.0;
}

}  // namespace

Graph drop_edge(const Graph& g, Rng& rng) {
  if (g.edge_count() == 0) throw InapplicableError("DropEdge needs at least one edge");
  const Edge e = g.edges()[uniform_index(rng, g.edge_count())];
  return g.edited(g.node_count(), {&e, 1}, {}, g.features());
}

Graph drop_node(const Graph& g, Rng& rng) {
  if (g.node_count() < 2) throw InapplicableError("DropNode needs at least two nodes");
  const auto v = static_cast<NodeId>(uniform_index(rng, g.node_count()));
  std::vector<Edge> removed;
  for (NodeId w : g.neighbors(v)) removed.emplace_back(v, w);
  FeatureMatrix x = g.features();
  x.erase_row(v);
  return g.edited(g.node_count(), removed, {}, std::move(x), v);
}

Graph add_edge(const Graph& g, Rng& rng) {
  const std::size_t n = g.node_count();
  // Each non-edge is seen from both endpoints, so drawing an endpoint by its
  // non-degree and then a uniform non-neighbor is uniform over non-edges.
  const std::uint64_t slots = static_cast<std::uint64_t>(n) * (n == 0 ? 0 : n - 1) - 2 * g.edge_count();
  if (slots == 0) throw InapplicableError("AddEdge needs a non-complete graph");
  std::uint64_t pick = std::uniform_int_distribution<std::uint64_t>{0, slots - 1}(rng);
  NodeId u = 0;
  for (;; ++u) {
    const std::uint64_t free = n - 1 - g.degree(u);
    if (pick < free) break;
    pick -= free;
  }
  NodeId w = nth_non_neighbor(n, u, g.neighbors(u), static_cast<std::size_t>(pick));
  const Edge e{u, w};
  return g.edited(n, {}, {&e, 1}, g.features());
}

Graph change_attr(const Graph& g, Rng& rng) {
  if (g.node_count() == 0) throw InapplicableError("ChangeAttr needs a node");
  if (g.feature_dim() < 2 || !g.features().is_onehot()) {
    throw InapplicableError("ChangeAttr needs one-hot features with d >= 2");
  }
  FeatureMatrix x = g.features();
  shift_hot_index(x, static_cast<NodeId>(uniform_index(rng, g.node_count())), rng);
  return g.with_features(std::move(x));
}

Graph graph_crop(const Graph& g, Rng& rng, double rho, const DiffusionOptions& diffusion) {
  if (g.node_count() == 0) throw InapplicableError("GraphCrop needs a node");
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in (0, 1]");
  const auto r = static_cast<NodeId>(uniform_index(rng, g.node_count()));
  const std::size_t size = component_size(g, r);
  const auto k = std::min(size, static_cast<std::size_t>(std::ceil(rho * static_cast<double>(size))));
  std::vector<NodeId> keep = sample_connected(g, r, k, diffusion).nodes;
  std::sort(keep.begin(), keep.end());
  return induced_subgraph(g, keep);
}

Graph node_aug(const Graph& g, Rng& rng) {
  const std::size_t n = g.node_count();
  if (n < 2) throw InapplicableError("NodeAug needs at least two nodes");
  const auto v = static_cast<NodeId>(uniform_index(rng, n));

  FeatureMatrix x = g.features();
  if (x.cols() >= 2 && x.onehot_index(v)) shift_hot_index(x, v, rng);

  std::vector<NodeId> adjacent(g.neighbors(v).begin(), g.neighbors(v).end());
  std::vector<Edge> removed, added;
  if (!adjacent.empty()) {
    const std::size_t at = uniform_index(rng, adjacent.size());
    removed.emplace_back(v, adjacent[at]);
    adjacent.erase(adjacent.begin() + static_cast<std::ptrdiff_t>(at));
  }
  const std::size_t free = n - 1 - adjacent.size();
  if (free > 0) added.emplace_back(v, nth_non_neighbor(n, v, adjacent, uniform_index(rng, free)));
  return g.edited(n, removed, added, std::move(x));
}

namespace {

template <class Visit>
void for_each_open_triangle(const Graph& g, Visit&& visit) {
  for (NodeId center = 0; center < g.node_count(); ++center) {
    auto nb = g.neighbors(center);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (!g.has_edge(nb[i], nb[j]) && !visit(nb[i], center, nb[j])) return;
      }
    }
  }
}

}  // namespace

std::uint64_t count_open_triangles(const Graph& g) {
  std::uint64_t total = 0;
  for_each_open_triangle(g, [&](NodeId, NodeId, NodeId) {
    ++total;
    return true;
  });
  return total;
}

Graph motif_swap(const Graph& g, Rng& rng) {
  const std::uint64_t total = count_open_triangles(g);
  if (total == 0) throw InapplicableError("MotifSwap needs an open triangle");
  std::uint64_t pick = std::uniform_int_distribution<std::uint64_t>{0, total - 1}(rng);
  NodeId u = 0, v = 0, w = 0;
  for_each_open_triangle(g, [&](NodeId a, NodeId center, NodeId b) {
    if (pick-- > 0) return true;
    u = a;
    v = center;
    w = b;
    return false;
  });
  const Edge gone{v, w}, made{u, w};
  return g.edited(g.node_count(), {&gone, 1}, {&made, 1}, g.features());
}

}  // namespace graphaug
