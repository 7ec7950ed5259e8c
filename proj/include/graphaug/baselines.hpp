#pragma once

#include <cstdint>
#include <stdexcept>

#include "graphaug/diffusion.hpp"
#include "graphaug/graph.hpp"
#include "graphaug/random.hpp"

namespace graphaug {

// Raised when an augmenter's structural precondition does not hold for a
// graph (edgeless, complete, no open triangle, features not one-hot, ...).
class InapplicableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

Graph drop_edge(const Graph& g, Rng& rng);
// Removes a uniform node and its incident edges; later indices shift down.
Graph drop_node(const Graph& g, Rng& rng);
Graph add_edge(const Graph& g, Rng& rng);
// Moves the hot index of a uniform node's one-hot row to a different uniform column.
Graph change_attr(const Graph& g, Rng& rng);
// Induced subgraph on sample_connected(g, r, ceil(rho * |component(r)|)) for a uniform root r.
Graph graph_crop(const Graph& g, Rng& rng, double rho = 0.7, const DiffusionOptions& diffusion = {});
// Target v uniform; change_attr on v (if one-hot), drop a uniform edge at v
// (if any), add a uniform non-edge at v (if any), in that order.
Graph node_aug(const Graph& g, Rng& rng);
// Picks a uniform open triangle u - v - w ((u, w) absent, u < w) from a
// global enumeration and replaces edge (v, w) by (u, w).
Graph motif_swap(const Graph& g, Rng& rng);

// Number of open triangles, i.e. wedges u - v - w whose closing edge is absent.
std::uint64_t count_open_triangles(const Graph& g);

}  // namespace graphaug
