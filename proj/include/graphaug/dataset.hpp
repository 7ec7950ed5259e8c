#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "graphaug/graph.hpp"
#include "graphaug/random.hpp"
#include "graphaug/submix.hpp"

namespace graphaug {

// Malformed or missing dataset files; the message names the file and line.
class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FeatureSource { node_labels, node_attributes, degree };

std::string_view to_string(FeatureSource s);

struct LoadReport {
  FeatureSource features = FeatureSource::degree;
  std::size_t arcs = 0;                 // lines in _A.txt
  std::size_t one_directional = 0;      // arcs whose reverse is absent
  std::size_t duplicate_arcs = 0;       // repeated lines
};

// Reads <dir>/<name>_A.txt, _graph_indicator.txt and, when present,
// _graph_labels.txt, _node_labels.txt, _node_attributes.txt. Node labels
// become one-hot by rank of their distinct values; otherwise attributes are
// used verbatim; otherwise features are the degree one-hot. Both arc
// directions are collapsed into one undirected edge.
GraphSet load_tudataset(const std::filesystem::path& dir, std::string_view name,
                        LoadReport* report = nullptr);

// Writes the set in the same format (edges in both directions, 1-indexed).
// Features go to _node_labels.txt when every row is one-hot and every column
// is used, else to _node_attributes.txt.
void write_dataset(const GraphSet& set, const std::filesystem::path& dir, std::string_view name);

// As write_dataset, plus <name>_soft_labels.txt (one comma-separated row per
// graph) when the set is labeled. Throws std::invalid_argument when empty.
void write_samples(std::span<const AugmentedSample> samples, const GraphSet& source,
                   const std::filesystem::path& dir, std::string_view name);

// Replaces features with the one-hot of each node's degree rank among all
// distinct degrees of the set.
GraphSet degree_onehot(GraphSet set);

// Erdos-Renyi G(n, m). feature_dim == 1 gives all-ones features; larger
// values give uniform random one-hot rows.
Graph gen_er(std::size_t n, std::size_t m, Rng& rng, std::size_t feature_dim = 1);

// `communities` dense G(size, p_in) blocks joined in a ring by one bridge edge
// between consecutive blocks.
Graph gen_communities(std::size_t communities, std::size_t size, double p_in, Rng& rng,
                      std::size_t feature_dim = 1);

// Small mixed corpus: sparse graphs with isolated nodes and several
// components next to triangle-rich ones. Two classes, one-hot features d = 4.
GraphSet gen_mixed_corpus(std::size_t count, Rng& rng);
// Triangle-rich corpus: every graph is 2-5 dense blocks of 6-10 nodes
// (p_in = 0.6) on a bridge ring. Two classes by block count parity.
GraphSet gen_clustered_corpus(std::size_t count, Rng& rng);

struct DatasetStats {
  std::size_t graphs = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;  // undirected
  std::size_t features = 0;
  std::size_t labels = 0;

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

DatasetStats stats(const GraphSet& set);
std::string format_stats_table(std::span<const std::pair<std::string, DatasetStats>> rows);

struct FoldSplit {
  std::size_t k = 0;
  std::vector<std::size_t> fold;  // fold id per graph
};

// Stratified by label: graphs of each class are shuffled, then dealt round
// robin with a per-class rotating start so fold sizes differ by at most one.
FoldSplit make_folds(const GraphSet& set, std::size_t k, Rng& rng);

}  // namespace graphaug
