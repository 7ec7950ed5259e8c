#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace graphaug {

using NodeId = std::uint32_t;
using ClassId = std::int32_t;

// Canonical undirected edge, u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense row-major |V| x d feature matrix.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }

  void append_row(std::span<const double> values);
  // Removes row i, shifting later rows up by one.
  void erase_row(std::size_t i);
  // Rows listed in `keep`, in that order.
  FeatureMatrix select_rows(std::span<const NodeId> keep) const;

  // Index of the single 1.0 entry, or nullopt if the row is not one-hot.
  std::optional<std::size_t> onehot_index(std::size_t i) const;
  bool is_onehot() const;

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class DuplicateEdges { reject, collapse };

// Immutable undirected simple graph with node features and an optional hard
// label. Adjacency is stored as CSR with every neighbor list sorted ascending;
// the canonical edge list is sorted lexicographically.
class Graph {
 public:
  Graph() = default;

  // Throws GraphError on self-loops, out-of-range endpoints, a feature row
  // count different from `node_count`, or (with DuplicateEdges::reject)
  // repeated edges.
  Graph(std::size_t node_count, std::span<const Edge> edges, FeatureMatrix features,
        std::optional<ClassId> label = std::nullopt,
        DuplicateEdges duplicates = DuplicateEdges::reject);

  // Convenience for tests and generators: featureless graph (d = 1, all ones).
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges,
                          std::optional<ClassId> label = std::nullopt);

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t feature_dim() const { return features_.cols(); }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId a, NodeId b) const;

  std::span<const Edge> edges() const { return edges_; }
  const FeatureMatrix& features() const { return features_; }
  std::optional<ClassId> label() const { return label_; }

  Graph with_label(std::optional<ClassId> label) const;
  Graph with_features(FeatureMatrix features) const;

  // Copy with `removed` deleted, `added` inserted and `node_count` nodes
  // (existing ids kept, new ids appended). When `erase` is set that node must
  // be isolated after the edit and every later id shifts down by one. Streams
  // the old CSR once, so the cost is linear with sequential memory access.
  // Throws GraphError when a removed edge is absent, an added edge already
  // exists or repeats, or an endpoint is out of range or a self-loop.
  Graph edited(std::size_t node_count, std::span<const Edge> removed, std::span<const Edge> added,
               FeatureMatrix features, std::optional<NodeId> erase = std::nullopt) const;

  void check_node(NodeId v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_ && a.features_ == b.features_ &&
           a.label_ == b.label_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<Edge> edges_;
  FeatureMatrix features_;
  std::optional<ClassId> label_;
};

// Sorts `extra` and merges it into the sorted list `base`. Operators build
// their output this way so the Graph constructor sees an increasing list.
std::vector<Edge> merge_sorted_edges(std::vector<Edge> base, std::vector<Edge> extra);

// Labeled collection of graphs sharing a feature dimensionality.
struct GraphSet {
  std::vector<Graph> graphs;
  std::size_t num_classes = 0;
  std::size_t feature_dim = 0;
  // Raw label values as found on disk, indexed by class id. Empty for unlabeled sets.
  std::vector<long long> label_values;

  std::size_t size() const { return graphs.size(); }
  bool labeled() const { return num_classes > 0; }
  // Throws GraphError when a graph's label or feature dim disagrees with the set.
  void validate() const;

  friend bool operator==(const GraphSet&, const GraphSet&) = default;
};

struct TriangleStats {
  std::uint64_t total = 0;
  std::vector<std::uint64_t> per_node;
  // Parallel to Graph::edges().
  std::vector<std::uint64_t> per_edge;
};

struct LocalTriangles {
  std::uint64_t count = 0;
  // All nodes of triangles through v, including v itself; ascending. Empty when count == 0.
  std::vector<NodeId> nodes;
};

std::uint64_t count_triangles(const Graph& g);
TriangleStats triangle_stats(const Graph& g);
LocalTriangles triangles_at(const Graph& g, NodeId v);
std::vector<NodeId> common_neighbors(const Graph& g, NodeId u, NodeId v);

// Sorted node set of the component containing r.
std::vector<NodeId> connected_component(const Graph& g, NodeId r);
std::size_t component_size(const Graph& g, NodeId r);
bool is_connected(const Graph& g);
std::size_t count_components(const Graph& g);
// Breadth-first order from r; each frontier expands neighbors in ascending index order.
std::vector<NodeId> bfs_order(const Graph& g, NodeId r);

// True iff the subgraph induced by `nodes` is connected (vacuously true when empty).
bool induces_connected(const Graph& g, std::span<const NodeId> nodes);
// Induced subgraph; node i of the result is nodes[i]. Label is kept.
Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

}  // namespace graphaug
