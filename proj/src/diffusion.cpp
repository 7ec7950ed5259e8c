#include "graphaug/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace graphaug {

std::string_view to_string(SelectionSource s) {
  switch (s) {
    case SelectionSource::diffusion: return "diffusion";
    case SelectionSource::bfs_fallback: return "bfs-fallback";
    case SelectionSource::random: return "random";
  }
  return "unknown";
}

DiffusionScores ppr_column(const Graph& g, NodeId r, const DiffusionOptions& opts) {
  g.check_node(r);
  if (!(opts.alpha > 0.0 && opts.alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  const std::size_t n = g.node_count();
  std::vector<double> inv_sqrt_deg(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    if (g.degree(v) > 0) inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
  }

  DiffusionScores out;
  out.root = r;
  out.alpha = opts.alpha;
  out.scores.assign(n, 0.0);
  out.scores[r] = opts.alpha;

  // `scaled` holds D^-1/2 M^k e_r; the k-th series term is
  // alpha (1 - alpha)^k D^1/2 scaled, so M^k e_r itself is never stored.
  std::vector<double> scaled(n, 0.0), next(n, 0.0);
  scaled[r] = inv_sqrt_deg[r];
  double weight = opts.alpha;
  for (std::size_t k = 1; k <= opts.max_iter; ++k) {
    double l1 = 0.0;
    weight *= 1.0 - opts.alpha;
    for (NodeId v = 0; v < n; ++v) {
      double acc = 0.0;
      for (NodeId w : g.neighbors(v)) acc += scaled[w];
      const double walk = acc * inv_sqrt_deg[v];
      const double term = weight * walk;
      out.scores[v] += term;
      l1 += term;
      next[v] = walk * inv_sqrt_deg[v];
    }
    scaled.swap(next);
    out.iterations = k;
    if (l1 < opts.tol) break;
  }
  return out;
}

namespace {

struct ScoreOrder {
  const DiffusionScores& s;
  bool operator()(NodeId a, NodeId b) const {
    double sa = s.scores[a], sb = s.scores[b];
    if (sa != sb) return sa > sb;
    if (a == s.root || b == s.root) return a == s.root;
    return a < b;
  }
};

}  // namespace

std::vector<NodeId> top_k_ordered(const DiffusionScores& scores, std::size_t k) {
  const std::size_t n = scores.scores.size();
  if (k > n) {
    throw std::invalid_argument("k = " + std::to_string(k) + " exceeds node count " + std::to_string(n));
  }
  std::vector<NodeId> order(n);
  for (NodeId v = 0; v < n; ++v) order[v] = v;
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    ScoreOrder{scores});
  order.resize(k);
  return order;
}

OrderedNodeSet sample_connected(const Graph& g, NodeId r, std::size_t k, const DiffusionOptions& opts) {
  g.check_node(r);
  OrderedNodeSet out;
  out.root = r;
  if (k == 0) return out;

  auto bfs = bfs_order(g, r);
  if (k > bfs.size()) {
    throw std::invalid_argument("k = " + std::to_string(k) + " exceeds component size " +
                                std::to_string(bfs.size()));
  }

  DiffusionScores scores = ppr_column(g, r, opts);
  std::vector<NodeId> others;
  others.reserve(g.node_count() - 1);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v != r) others.push_back(v);
  }
  auto mid = others.begin() + static_cast<std::ptrdiff_t>(k - 1);
  std::partial_sort(others.begin(), mid, others.end(), ScoreOrder{scores});
  out.nodes.reserve(k);
  out.nodes.push_back(r);
  out.nodes.insert(out.nodes.end(), others.begin(), mid);

  if (!induces_connected(g, out.nodes)) {
    bfs.resize(k);
    out.nodes = std::move(bfs);
    out.source = SelectionSource::bfs_fallback;
  }
  return out;
}

}  // namespace graphaug
