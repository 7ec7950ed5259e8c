#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "graphaug/diffusion.hpp"
#include "graphaug/graph.hpp"
#include "graphaug/nodesam.hpp"
#include "graphaug/random.hpp"
#include "graphaug/submix.hpp"

namespace graphaug {

enum class Method {
  identity,
  nodesam,
  submix,
  drop_edge,
  drop_node,
  add_edge,
  change_attr,
  graph_crop,
  node_aug,
  motif_swap,
};

std::string_view to_string(Method m);
// Throws std::invalid_argument listing the known names.
Method parse_method(std::string_view name);
std::span<const Method> all_methods();

struct AugmentOptions {
  // "full" or "base" for submix; full/base/split-only/merge-only for nodesam.
  std::string variant = "full";
  double p = 0.4;    // SubMix mixing ratio bound
  double rho = 0.7;  // GraphCrop keep ratio
  // Single-graph baselines are applied this many times in a row.
  std::size_t repeat = 1;
  DiffusionOptions diffusion;
};

class Augmenter {
 public:
  Augmenter(Method method, AugmentOptions options = {});
  // "method" or "method:variant".
  static Augmenter parse(std::string_view text, AugmentOptions options = {});

  Method method() const { return method_; }
  const AugmentOptions& options() const { return options_; }
  // "method" or "method:variant" for non-default variants.
  std::string name() const;

  // Whether the structural preconditions hold for graph `index`; apply()
  // throws InapplicableError exactly when this is false.
  bool applicable(const GraphSet& set, std::size_t index) const;

  AugmentedSample apply(const GraphSet& set, std::size_t index, Rng& rng) const;

 private:
  Method method_;
  AugmentOptions options_;
  NodeSamVariant nodesam_variant_ = NodeSamVariant::full;
  bool submix_base_ = false;
};

}  // namespace graphaug
