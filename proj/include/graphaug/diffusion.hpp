#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "graphaug/graph.hpp"

namespace graphaug {

struct DiffusionOptions {
  double alpha = 0.15;  // teleport probability
  double tol = 1e-6;    // stop once a series term's L1 norm drops below this
  std::size_t max_iter = 1000;
};

// Column r of S = sum_k alpha (1 - alpha)^k (D^-1/2 A D^-1/2)^k, truncated.
struct DiffusionScores {
  NodeId root = 0;
  double alpha = 0.15;
  std::vector<double> scores;
  std::size_t iterations = 0;
};

enum class SelectionSource { diffusion, bfs_fallback, random };

std::string_view to_string(SelectionSource s);

// Rank-ordered node subset. When non-empty, nodes.front() == root and the
// induced subgraph is connected (except for SelectionSource::random).
struct OrderedNodeSet {
  std::vector<NodeId> nodes;
  NodeId root = 0;
  SelectionSource source = SelectionSource::diffusion;

  std::size_t size() const { return nodes.size(); }
  bool empty() const { return nodes.empty(); }
};

// Power iteration on the personalized vector; never forms the |V| x |V| matrix.
// Zero-degree nodes get zero normalization, so an isolated root yields alpha * e_r.
DiffusionScores ppr_column(const Graph& g, NodeId r, const DiffusionOptions& opts = {});

// k nodes by descending score, ties by ascending index except that the root
// wins any tie it is part of. Throws std::invalid_argument when k > |V|.
std::vector<NodeId> top_k_ordered(const DiffusionScores& scores, std::size_t k);

// Root first, then the k - 1 highest-scoring other nodes; falls back to the
// first k nodes of bfs_order when that selection does not induce a connected
// subgraph. Throws std::invalid_argument when k exceeds r's component size.
OrderedNodeSet sample_connected(const Graph& g, NodeId r, std::size_t k,
                                const DiffusionOptions& opts = {});

}  // namespace graphaug
