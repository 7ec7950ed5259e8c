#include "graphaug/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

namespace graphaug {

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw GraphError("feature data size " + std::to_string(data_.size()) + " != " +
                     std::to_string(rows_) + " x " + std::to_string(cols_));
  }
}

void FeatureMatrix::append_row(std::span<const double> values) {
  if (values.size() != cols_) throw GraphError("appended feature row has wrong width");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void FeatureMatrix::erase_row(std::size_t i) {
  auto first = data_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
  data_.erase(first, first + static_cast<std::ptrdiff_t>(cols_));
  --rows_;
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const NodeId> keep) const {
  std::vector<double> out;
  out.reserve(keep.size() * cols_);
  for (NodeId r : keep) {
    auto src = row(r);
    out.insert(out.end(), src.begin(), src.end());
  }
  return {keep.size(), cols_, std::move(out)};
}

std::optional<std::size_t> FeatureMatrix::onehot_index(std::size_t i) const {
  std::optional<std::size_t> hot;
  auto r = row(i);
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (r[j] == 1.0) {
      if (hot) return std::nullopt;
      hot = j;
    } else if (r[j] != 0.0) {
      return std::nullopt;
    }
  }
  return hot;
}

bool FeatureMatrix::is_onehot() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    if (!onehot_index(i)) return false;
  }
  return true;
}

Graph::Graph(std::size_t node_count, std::span<const Edge> edges, FeatureMatrix features,
             std::optional<ClassId> label, DuplicateEdges duplicates)
    : features_(std::move(features)), label_(label) {
  if (features_.rows() != node_count) {
    throw GraphError("feature rows (" + std::to_string(features_.rows()) + ") != node count (" +
                     std::to_string(node_count) + ")");
  }
  if (node_count > std::numeric_limits<NodeId>::max()) throw GraphError("too many nodes");

  if (2 * edges.size() > std::numeric_limits<std::uint32_t>::max()) throw GraphError("too many edges");

  // Degrees first; cursor[v] then becomes the write position in v's list.
  std::vector<std::uint32_t> cursor(node_count, 0);
  bool increasing = true;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u == e.v) throw GraphError("self-loop at node " + std::to_string(e.u));
    if (e.v >= node_count) {
      throw GraphError("edge endpoint " + std::to_string(e.v) + " out of range");
    }
    ++cursor[e.u];
    ++cursor[e.v];
    if (i > 0 && !(edges[i - 1] < e)) increasing = false;
  }
  offsets_.assign(node_count + 1, 0);
  for (std::size_t v = 0; v < node_count; ++v) {
    offsets_[v + 1] = offsets_[v] + cursor[v];
    cursor[v] = static_cast<std::uint32_t>(offsets_[v]);
  }
  adjacency_.resize(offsets_[node_count]);

  if (increasing) {
    // Every (w, x) with w < x precedes every (x, y), so each list fills in
    // ascending order and a strictly increasing input has no repeats.
    for (const Edge& e : edges) {
      adjacency_[cursor[e.v]++] = e.u;
      adjacency_[cursor[e.u]++] = e.v;
    }
    edges_.assign(edges.begin(), edges.end());
    return;
  }

  // Scatter unsorted, then transpose: visiting sources in ascending order
  // fills every target list in ascending order.
  std::vector<NodeId> scattered(offsets_[node_count]);
  for (const Edge& e : edges) {
    scattered[cursor[e.u]++] = e.v;
    scattered[cursor[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < node_count; ++v) cursor[v] = static_cast<std::uint32_t>(offsets_[v]);
  for (std::size_t v = 0; v < node_count; ++v) {
    for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i) {
      adjacency_[cursor[scattered[i]]++] = static_cast<NodeId>(v);
    }
  }

  // Drop or reject repeats while compacting in place.
  std::size_t write = 0;
  std::size_t start = 0;
  for (std::size_t v = 0; v < node_count; ++v) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(start);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::size_t new_start = write;
    for (auto it = first; it != last; ++it) {
      if (write > new_start && adjacency_[write - 1] == *it) {
        if (duplicates == DuplicateEdges::reject) {
          throw GraphError("duplicate edge (" + std::to_string(v) + ", " + std::to_string(*it) + ")");
        }
        continue;
      }
      adjacency_[write++] = *it;
    }
    start = offsets_[v + 1];
    offsets_[v] = new_start;
  }
  offsets_[node_count] = write;
  adjacency_.resize(write);

  edges_.reserve(write / 2);
  for (std::size_t v = 0; v < node_count; ++v) {
    for (NodeId w : neighbors(static_cast<NodeId>(v))) {
      if (w > v) edges_.push_back({static_cast<NodeId>(v), w});
    }
  }
}

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges,
                        std::optional<ClassId> label) {
  return {node_count, edges, FeatureMatrix(node_count, 1, 1.0), label};
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  if (a >= node_count() || b >= node_count()) return false;
  if (degree(a) > degree(b)) std::swap(a, b);
  auto n = neighbors(a);
  return std::binary_search(n.begin(), n.end(), b);
}

Graph Graph::with_label(std::optional<ClassId> label) const {
  Graph g = *this;
  g.label_ = label;
  return g;
}

Graph Graph::with_features(FeatureMatrix features) const {
  if (features.rows() != node_count()) throw GraphError("feature rows != node count");
  Graph g;
  g.offsets_ = offsets_;
  g.adjacency_ = adjacency_;
  g.edges_ = edges_;
  g.features_ = std::move(features);
  g.label_ = label_;
  return g;
}

std::vector<Edge> merge_sorted_edges(std::vector<Edge> base, std::vector<Edge> extra) {
  std::sort(extra.begin(), extra.end());
  const auto mid = static_cast<std::ptrdiff_t>(base.size());
  base.insert(base.end(), extra.begin(), extra.end());
  std::inplace_merge(base.begin(), base.begin() + mid, base.end());
  return base;
}

namespace {

// Directed copies of each edge, sorted by source then target.
std::vector<std::pair<NodeId, NodeId>> half_edges(std::span<const Edge> edges) {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(2 * edges.size());
  for (const Edge& e : edges) {
    out.emplace_back(e.u, e.v);
    out.emplace_back(e.v, e.u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Graph Graph::edited(std::size_t node_count, std::span<const Edge> removed, std::span<const Edge> added,
                    FeatureMatrix features, std::optional<NodeId> erase) const {
  const std::size_t old_n = this->node_count();
  if (node_count < old_n) throw GraphError("edited graph cannot drop nodes except by erase");
  if (node_count > std::numeric_limits<NodeId>::max()) throw GraphError("too many nodes");
  if (erase && *erase >= node_count) throw GraphError("erased node out of range");
  const std::size_t out_n = node_count - (erase ? 1 : 0);
  if (features.rows() != out_n) {
    throw GraphError("feature rows (" + std::to_string(features.rows()) + ") != node count (" +
                     std::to_string(out_n) + ")");
  }
  for (const Edge& e : added) {
    if (e.u == e.v) throw GraphError("self-loop at node " + std::to_string(e.u));
    if (e.v >= node_count) throw GraphError("edge endpoint " + std::to_string(e.v) + " out of range");
  }
  const auto rm = half_edges(removed);
  const auto add = half_edges(added);
  if (std::adjacent_find(rm.begin(), rm.end()) != rm.end()) throw GraphError("edge removed twice");
  if (std::adjacent_find(add.begin(), add.end()) != add.end()) throw GraphError("duplicate edge added");
  if (2 * (edge_count() + added.size()) > std::numeric_limits<std::uint32_t>::max()) {
    throw GraphError("too many edges");
  }

  const auto shift = [&](NodeId x) -> NodeId { return erase && x > *erase ? x - 1 : x; };

  Graph g;
  g.features_ = std::move(features);
  g.label_ = label_;
  g.offsets_.assign(out_n + 1, 0);
  std::size_t ri = 0, ai = 0, at = 0;
  for (std::size_t v = 0; v < node_count; ++v) {
    std::size_t deg = v < old_n ? degree(static_cast<NodeId>(v)) : 0;
    for (; ri < rm.size() && rm[ri].first == v; ++ri) --deg;
    for (; ai < add.size() && add[ai].first == v; ++ai) ++deg;
    if (erase && v == *erase) {
      if (deg != 0) throw GraphError("erased node still has edges");
      continue;
    }
    g.offsets_[at + 1] = g.offsets_[at] + deg;
    ++at;
  }
  if (ri != rm.size()) throw GraphError("removed edge not in graph");

  g.adjacency_.resize(g.offsets_[out_n]);
  g.edges_.reserve(g.offsets_[out_n] / 2);
  std::size_t write = 0;
  ri = ai = 0;
  for (std::size_t v = 0; v < node_count; ++v) {
    const auto self = static_cast<NodeId>(v);
    const auto old = v < old_n ? neighbors(self) : std::span<const NodeId>{};
    auto it = old.begin();
    const bool skip = erase && v == *erase;
    const auto emit = [&](NodeId w) {
      if (skip) return;
      if (write == g.adjacency_.size()) throw GraphError("removed edge not in graph");
      const NodeId s = shift(w);
      g.adjacency_[write++] = s;
      if (w > self) g.edges_.push_back({shift(self), s});
    };
    for (; ai < add.size() && add[ai].first == v; ++ai) {
      const NodeId w = add[ai].second;
      for (; it != old.end() && *it <= w; ++it) {
        if (ri < rm.size() && rm[ri].first == v && rm[ri].second == *it) {
          ++ri;
        } else if (*it == w) {
          throw GraphError("duplicate edge (" + std::to_string(v) + ", " + std::to_string(w) + ")");
        } else {
          emit(*it);
        }
      }
      emit(w);
    }
    for (; it != old.end(); ++it) {
      if (ri < rm.size() && rm[ri].first == v && rm[ri].second == *it) {
        ++ri;
      } else {
        emit(*it);
      }
    }
    if (ri < rm.size() && rm[ri].first == v) throw GraphError("removed edge not in graph");
  }
  return g;
}

void Graph::check_node(NodeId v) const {
  if (v >= node_count()) {
    throw std::out_of_range("node " + std::to_string(v) + " not in graph of " +
                            std::to_string(node_count()) + " nodes");
  }
}

void GraphSet::validate() const {
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const Graph& g = graphs[i];
    if (g.feature_dim() != feature_dim) {
      throw GraphError("graph " + std::to_string(i) + " has feature dim " +
                       std::to_string(g.feature_dim()) + ", set has " + std::to_string(feature_dim));
    }
    if (g.label() && (*g.label() < 0 || static_cast<std::size_t>(*g.label()) >= num_classes)) {
      throw GraphError("graph " + std::to_string(i) + " label out of range");
    }
    if (labeled() && !g.label()) throw GraphError("graph " + std::to_string(i) + " is unlabeled");
  }
}

namespace {

// Size of the intersection of two sorted lists, restricted to values > floor.
std::uint64_t intersect_above(std::span<const NodeId> a, std::span<const NodeId> b, NodeId floor) {
  auto i = std::upper_bound(a.begin(), a.end(), floor);
  auto j = std::upper_bound(b.begin(), b.end(), floor);
  std::uint64_t n = 0;
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

}  // namespace

std::uint64_t count_triangles(const Graph& g) {
  std::uint64_t total = 0;
  for (const Edge& e : g.edges()) total += intersect_above(g.neighbors(e.u), g.neighbors(e.v), e.v);
  return total;
}

TriangleStats triangle_stats(const Graph& g) {
  TriangleStats s;
  s.per_node.assign(g.node_count(), 0);
  s.per_edge.assign(g.edge_count(), 0);
  auto edges = g.edges();
  auto edge_index = [&](NodeId a, NodeId b) {
    Edge key{a, b};
    return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), key) - edges.begin());
  };
  for (std::size_t idx = 0; idx < edges.size(); ++idx) {
    const Edge& e = edges[idx];
    auto a = g.neighbors(e.u);
    auto b = g.neighbors(e.v);
    auto i = std::upper_bound(a.begin(), a.end(), e.v);
    auto j = std::upper_bound(b.begin(), b.end(), e.v);
    while (i != a.end() && j != b.end()) {
      if (*i < *j) {
        ++i;
      } else if (*j < *i) {
        ++j;
      } else {
        NodeId w = *i;
        ++s.total;
        ++s.per_node[e.u];
        ++s.per_node[e.v];
        ++s.per_node[w];
        ++s.per_edge[idx];
        ++s.per_edge[edge_index(e.u, w)];
        ++s.per_edge[edge_index(e.v, w)];
        ++i;
        ++j;
      }
    }
  }
  return s;
}

LocalTriangles triangles_at(const Graph& g, NodeId v) {
  g.check_node(v);
  auto nv = g.neighbors(v);
  // Marker over node ids keeps the cost at O(|V| + sum of neighbor degrees).
  std::vector<char> is_neighbor(g.node_count(), 0);
  for (NodeId u : nv) is_neighbor[u] = 1;

  LocalTriangles out;
  std::uint64_t twice = 0;
  for (NodeId u : nv) {
    std::uint64_t shared = 0;
    for (NodeId w : g.neighbors(u)) shared += is_neighbor[w];
    if (shared > 0) out.nodes.push_back(u);
    twice += shared;
  }
  out.count = twice / 2;
  if (out.count > 0) out.nodes.insert(std::lower_bound(out.nodes.begin(), out.nodes.end(), v), v);
  return out;
}

std::vector<NodeId> common_neighbors(const Graph& g, NodeId u, NodeId v) {
  g.check_node(u);
  g.check_node(v);
  if (u == v) throw std::invalid_argument("common_neighbors requires distinct nodes");
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<NodeId> bfs_order(const Graph& g, NodeId r) {
  g.check_node(r);
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeId> order{r};
  seen[r] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (NodeId w : g.neighbors(order[head])) {
      if (!seen[w]) {
        seen[w] = 1;
        order.push_back(w);
      }
    }
  }
  return order;
}

std::vector<NodeId> connected_component(const Graph& g, NodeId r) {
  auto nodes = bfs_order(g, r);
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

std::size_t component_size(const Graph& g, NodeId r) { return bfs_order(g, r).size(); }

bool is_connected(const Graph& g) {
  if (g.node_count() == 0) throw std::invalid_argument("connectivity of an empty graph is undefined");
  return component_size(g, 0) == g.node_count();
}

std::size_t count_components(const Graph& g) {
  std::vector<char> seen(g.node_count(), 0);
  std::deque<NodeId> queue;
  std::size_t components = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = 1;
    queue.push_back(s);
    while (!queue.empty()) {
      NodeId x = queue.front();
      queue.pop_front();
      for (NodeId w : g.neighbors(x)) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
  }
  return components;
}

bool induces_connected(const Graph& g, std::span<const NodeId> nodes) {
  if (nodes.empty()) return true;
  // 0 = outside, 1 = inside unvisited, 2 = visited
  std::vector<char> state(g.node_count(), 0);
  for (NodeId v : nodes) {
    g.check_node(v);
    state[v] = 1;
  }
  std::vector<NodeId> stack{nodes.front()};
  state[nodes.front()] = 2;
  std::size_t visited = 1;
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    for (NodeId w : g.neighbors(x)) {
      if (state[w] == 1) {
        state[w] = 2;
        ++visited;
        stack.push_back(w);
      }
    }
  }
  return visited == nodes.size();
}

Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  constexpr NodeId absent = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> position(g.node_count(), absent);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    g.check_node(nodes[i]);
    if (position[nodes[i]] != absent) throw std::invalid_argument("duplicate node in subset");
    position[nodes[i]] = static_cast<NodeId>(i);
  }
  std::vector<Edge> edges;
  for (NodeId v : nodes) {
    for (NodeId w : g.neighbors(v)) {
      if (w > v && position[w] != absent) edges.emplace_back(position[v], position[w]);
    }
  }
  return {nodes.size(), edges, g.features().select_rows(nodes), g.label()};
}

}  // namespace graphaug
