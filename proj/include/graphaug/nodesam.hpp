#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "graphaug/graph.hpp"
#include "graphaug/random.hpp"

namespace graphaug {

// Split of node `target` in the input graph. The first child reuses the
// target's index; the second child is appended as node |V|.
struct SplitOutcome {
  Graph graph;
  NodeId target = 0;
  NodeId child_a = 0;  // v_j
  NodeId child_b = 0;  // v_k
};

struct AdjustParams {
  std::uint64_t triangles = 0;  // t_i
  std::size_t degree = 0;       // d_i
  double c = 0.0;
  double h = 0.0;
  double inclusion_probability = 0.0;
  std::vector<NodeId> candidates;  // T_i without the target
  std::vector<NodeId> chosen;
};

struct AdjustOutcome {
  Graph graph;
  AdjustParams params;
};

struct MergeOutcome {
  Graph graph;
  NodeId first = 0;   // v_o
  NodeId second = 0;  // v_p
  NodeId merged = 0;  // v_q, index in the output graph
  std::size_t removed_edges = 0;  // 1 + triangles through (v_o, v_p)
};

enum class NodeSamVariant { full, base, split_only, merge_only };

std::string_view to_string(NodeSamVariant v);
NodeSamVariant parse_nodesam_variant(std::string_view name);

// Uniform target, then split_node. Throws GraphError on an empty graph.
SplitOutcome split(const Graph& g, Rng& rng);
// Each edge at `target` moves to v_j or v_k by an independent fair coin;
// edge (v_j, v_k) is added and both children copy the target's feature row.
SplitOutcome split_node(const Graph& g, NodeId target, Rng& rng);

// Edge-count compensation h_i, clamped below at 0. Throws
// std::invalid_argument when degree == 0 but triangles > 0.
double compute_h(std::uint64_t triangles, std::size_t degree, std::size_t node_count,
                 std::size_t edge_count);

AdjustParams adjust_params(const Graph& g, NodeId target);

// Every node u forming a triangle with the split target in `g` is selected
// independently with probability min(1, h_i / (|T_i| - 1)); a selected u gets
// an edge to whichever child it is not yet adjacent to.
AdjustOutcome adjust(const Graph& g, const SplitOutcome& split, Rng& rng);

// Contracts a uniformly drawn edge. v_q takes the smaller index, the larger
// one is removed and later nodes shift down. Throws GraphError when edgeless.
MergeOutcome merge(const Graph& g, Rng& rng);
MergeOutcome merge_edge(const Graph& g, Edge e);

Graph nodesam(const Graph& g, Rng& rng);
Graph nodesam_variant(const Graph& g, NodeSamVariant variant, Rng& rng);

}  // namespace graphaug
