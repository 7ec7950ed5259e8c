#include "graphaug/augmenter.hpp"

#include <algorithm>
#include <array>

#include "graphaug/baselines.hpp"

namespace graphaug {

namespace {

constexpr std::array kMethods = {
    Method::identity,  Method::nodesam,   Method::submix,     Method::drop_edge, Method::drop_node,
    Method::add_edge,  Method::change_attr, Method::graph_crop, Method::node_aug, Method::motif_swap,
};

std::uint64_t non_edges(const Graph& g) {
  const std::uint64_t n = g.node_count();
  return n * (n == 0 ? 0 : n - 1) / 2 - g.edge_count();
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::identity: return "identity";
    case Method::nodesam: return "nodesam";
    case Method::submix: return "submix";
    case Method::drop_edge: return "dropedge";
    case Method::drop_node: return "dropnode";
    case Method::add_edge: return "addedge";
    case Method::change_attr: return "changeattr";
    case Method::graph_crop: return "graphcrop";
    case Method::node_aug: return "nodeaug";
    case Method::motif_swap: return "motifswap";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : kMethods) {
    if (to_string(m) == name) return m;
  }
  std::string known;
  for (Method m : kMethods) known += (known.empty() ? "" : ", ") + std::string(to_string(m));
  throw std::invalid_argument("unknown method '" + std::string(name) + "' (known: " + known + ")");
}

std::span<const Method> all_methods() { return kMethods; }

Augmenter::Augmenter(Method method, AugmentOptions options) : method_(method), options_(std::move(options)) {
  if (options_.repeat == 0) throw std::invalid_argument("repeat must be at least 1");
  if (method_ == Method::nodesam) {
    nodesam_variant_ = parse_nodesam_variant(options_.variant);
  } else if (method_ == Method::submix) {
    if (options_.variant != "full" && options_.variant != "base") {
      throw std::invalid_argument("submix variant must be 'full' or 'base'");
    }
    submix_base_ = options_.variant == "base";
  } else if (options_.variant != "full") {
    throw std::invalid_argument(std::string(to_string(method_)) + " has no variants");
  }
}

Augmenter Augmenter::parse(std::string_view text, AugmentOptions options) {
  const auto colon = text.find(':');
  if (colon != std::string_view::npos) options.variant = std::string(text.substr(colon + 1));
  return {parse_method(text.substr(0, colon)), std::move(options)};
}

std::string Augmenter::name() const {
  std::string n(to_string(method_));
  if (options_.variant != "full") n += ":" + options_.variant;
  return n;
}

bool Augmenter::applicable(const GraphSet& set, std::size_t index) const {
  const Graph& g = set.graphs.at(index);
  const std::size_t r = options_.repeat;
  switch (method_) {
    case Method::identity: return true;
    case Method::nodesam:
      return nodesam_variant_ == NodeSamVariant::merge_only ? g.edge_count() >= 1 : g.node_count() >= 1;
    case Method::submix:
      return set.size() >= 2 &&
             std::all_of(set.graphs.begin(), set.graphs.end(), [](const Graph& h) { return h.node_count() > 0; });
    case Method::drop_edge: return g.edge_count() >= r;
    case Method::drop_node: return g.node_count() >= r + 1;
    case Method::add_edge: return non_edges(g) >= r;
    case Method::change_attr: return g.node_count() >= 1 && g.feature_dim() >= 2 && g.features().is_onehot();
    case Method::graph_crop: return g.node_count() >= 1;
    case Method::node_aug: return g.node_count() >= 2;
    case Method::motif_swap: return count_open_triangles(g) > 0;
  }
  return false;
}

AugmentedSample Augmenter::apply(const GraphSet& set, std::size_t index, Rng& rng) const {
  if (!applicable(set, index)) {
    throw InapplicableError(name() + " is not applicable to graph " + std::to_string(index));
  }
  const Graph& g = set.graphs[index];

  if (method_ == Method::submix) {
    SubMixOptions opts{options_.p, options_.diffusion};
    return submix_base_ ? submix_base(set, index, opts, rng) : submix(set, index, opts, rng);
  }

  AugmentedSample out;
  out.partner = index;
  if (set.labeled()) out.soft_label = one_hot(g.label().value_or(0), set.num_classes);

  switch (method_) {
    case Method::identity: out.graph = g; break;
    case Method::nodesam: out.graph = nodesam_variant(g, nodesam_variant_, rng); break;
    case Method::graph_crop: out.graph = graph_crop(g, rng, options_.rho, options_.diffusion); break;
    default: {
      // The first pass reads the source graph directly; later passes read `cur`.
      Graph cur;
      const Graph* src = &g;
      for (std::size_t i = 0; i < options_.repeat; ++i) {
        switch (method_) {
          case Method::drop_edge: cur = drop_edge(*src, rng); break;
          case Method::drop_node: cur = drop_node(*src, rng); break;
          case Method::add_edge: cur = add_edge(*src, rng); break;
          case Method::change_attr: cur = change_attr(*src, rng); break;
          case Method::node_aug: cur = node_aug(*src, rng); break;
          case Method::motif_swap:
            // Later swaps stop once no open triangle is left.
            if (i > 0 && count_open_triangles(cur) == 0) break;
            cur = motif_swap(*src, rng);
            break;
          default: break;
        }
        src = &cur;
      }
      out.graph = std::move(cur);
    }
  }
  out.kept_edges = out.graph.edge_count();
  return out;
}

}  // namespace graphaug
