#include "graphaug/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <unordered_set>

namespace graphaug {

std::string_view to_string(FeatureSource s) {
  switch (s) {
    case FeatureSource::node_labels: return "node_labels";
    case FeatureSource::node_attributes: return "node_attributes";
    case FeatureSource::degree: return "degree";
  }
  return "?";
}

namespace {

namespace fs = std::filesystem;

struct Row {
  std::size_t line = 0;
  std::vector<std::string_view> tokens;
};

// Non-empty lines split on commas and whitespace. `text` must outlive the rows.
std::vector<Row> tokenize(const std::string& text) {
  std::vector<Row> rows;
  std::size_t line = 0, pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line;
    Row row{line, {}};
    std::size_t i = pos;
    while (i < end) {
      while (i < end && (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i])))) ++i;
      std::size_t j = i;
      while (j < end && text[j] != ',' && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      if (j > i) row.tokens.emplace_back(text.data() + i, j - i);
      i = j;
    }
    if (!row.tokens.empty()) rows.push_back(std::move(row));
    pos = end + 1;
  }
  return rows;
}

class TuFile {
 public:
  TuFile(const fs::path& dir, std::string_view name, std::string_view suffix)
      : path_(dir / (std::string(name) + "_" + std::string(suffix) + ".txt")) {}

  bool exists() const { return fs::exists(path_); }

  const std::vector<Row>& rows() {
    std::ifstream in(path_, std::ios::binary);
    if (!in) throw DatasetError("cannot open " + path_.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    text_ = ss.str();
    rows_ = tokenize(text_);
    return rows_;
  }

  [[noreturn]] void fail(std::size_t line, const std::string& what) const {
    throw DatasetError(path_.string() + ":" + std::to_string(line) + ": " + what);
  }

  template <class T>
  T parse(const Row& row, std::size_t k) const {
    if (k >= row.tokens.size()) fail(row.line, "expected at least " + std::to_string(k + 1) + " values");
    std::string_view tok = row.tokens[k];
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      fail(row.line, "cannot parse '" + std::string(tok) + "'");
    }
    return value;
  }

  void expect_count(std::size_t got, std::size_t want, const char* what) const {
    if (got != want) {
      throw DatasetError(path_.string() + ": " + std::to_string(got) + " rows, expected " +
                         std::to_string(want) + " (" + what + ")");
    }
  }

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  std::string text_;
  std::vector<Row> rows_;
};

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DatasetError("cannot write " + path.string());
  return out;
}

// Every row one-hot and every column hot somewhere.
bool labels_encodable(const GraphSet& set) {
  std::vector<char> used(set.feature_dim, 0);
  for (const Graph& g : set.graphs) {
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      auto hot = g.features().onehot_index(v);
      if (!hot) return false;
      used[*hot] = 1;
    }
  }
  return std::all_of(used.begin(), used.end(), [](char c) { return c != 0; });
}

void write_graphs(std::span<const Graph> graphs, const GraphSet& meta, const fs::path& dir,
                  std::string_view name) {
  if (graphs.empty()) throw std::invalid_argument("refusing to write an empty dataset");
  fs::create_directories(dir);
  const std::string stem = (dir / std::string(name)).string();

  GraphSet view;
  view.feature_dim = meta.feature_dim;
  view.graphs.assign(graphs.begin(), graphs.end());
  const bool as_labels = labels_encodable(view);

  auto a = open_out(stem + "_A.txt");
  auto indicator = open_out(stem + "_graph_indicator.txt");
  auto features = open_out(stem + (as_labels ? "_node_labels.txt" : "_node_attributes.txt"));
  std::size_t base = 0;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const Graph& g = graphs[gi];
    for (const Edge& e : g.edges()) {
      a << base + e.u + 1 << ", " << base + e.v + 1 << '\n';
      a << base + e.v + 1 << ", " << base + e.u + 1 << '\n';
    }
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      indicator << gi + 1 << '\n';
      if (as_labels) {
        features << *g.features().onehot_index(v) << '\n';
      } else {
        auto row = g.features().row(v);
        for (std::size_t c = 0; c < row.size(); ++c) features << (c ? ", " : "") << format_double(row[c]);
        features << '\n';
      }
    }
    base += g.node_count();
  }

  if (meta.labeled()) {
    auto labels = open_out(stem + "_graph_labels.txt");
    for (const Graph& g : graphs) {
      const ClassId y = g.label().value_or(0);
      if (meta.label_values.size() == meta.num_classes) {
        labels << meta.label_values[static_cast<std::size_t>(y)] << '\n';
      } else {
        labels << y << '\n';
      }
    }
  }
}

}  // namespace

GraphSet load_tudataset(const std::filesystem::path& dir, std::string_view name, LoadReport* report) {
  LoadReport local;
  LoadReport& rep = report ? *report : local;
  rep = {};

  TuFile indicator_file(dir, name, "graph_indicator");
  TuFile a_file(dir, name, "A");
  if (!indicator_file.exists()) throw DatasetError("missing " + indicator_file.path().string());
  if (!a_file.exists()) throw DatasetError("missing " + a_file.path().string());

  // Node -> graph.
  const auto& ind_rows = indicator_file.rows();
  const std::size_t n_total = ind_rows.size();
  std::vector<long long> gid(n_total);
  for (std::size_t i = 0; i < n_total; ++i) gid[i] = indicator_file.parse<long long>(ind_rows[i], 0);
  std::vector<long long> distinct(gid);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const std::size_t n_graphs = distinct.size();
  std::vector<std::size_t> graph_of(n_total), local_id(n_total), graph_nodes(n_graphs, 0);
  for (std::size_t i = 0; i < n_total; ++i) {
    graph_of[i] = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), gid[i]) -
                                           distinct.begin());
    local_id[i] = graph_nodes[graph_of[i]]++;
  }

  // Arcs.
  std::vector<std::vector<Edge>> edges(n_graphs);
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  for (const Row& row : a_file.rows()) {
    const auto i = a_file.parse<std::size_t>(row, 0);
    const auto j = a_file.parse<std::size_t>(row, 1);
    if (i < 1 || i > n_total || j < 1 || j > n_total) {
      a_file.fail(row.line, "node id outside 1.." + std::to_string(n_total));
    }
    if (i == j) a_file.fail(row.line, "self-loop");
    if (graph_of[i - 1] != graph_of[j - 1]) a_file.fail(row.line, "edge joins two graphs");
    arcs.emplace_back(i - 1, j - 1);
    edges[graph_of[i - 1]].emplace_back(static_cast<NodeId>(local_id[i - 1]),
                                        static_cast<NodeId>(local_id[j - 1]));
  }
  rep.arcs = arcs.size();
  std::sort(arcs.begin(), arcs.end());
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    if (k > 0 && arcs[k] == arcs[k - 1]) {
      ++rep.duplicate_arcs;
      continue;
    }
    std::pair<std::size_t, std::size_t> rev{arcs[k].second, arcs[k].first};
    if (!std::binary_search(arcs.begin(), arcs.end(), rev)) ++rep.one_directional;
  }

  // Features.
  std::vector<FeatureMatrix> features(n_graphs);
  std::size_t feature_dim = 0;
  TuFile nl_file(dir, name, "node_labels");
  TuFile na_file(dir, name, "node_attributes");
  if (nl_file.exists()) {
    const auto& rows = nl_file.rows();
    nl_file.expect_count(rows.size(), n_total, "one label per node");
    std::vector<long long> values(n_total);
    for (std::size_t i = 0; i < n_total; ++i) values[i] = nl_file.parse<long long>(rows[i], 0);
    std::vector<long long> levels(values);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    feature_dim = levels.size();
    for (std::size_t g = 0; g < n_graphs; ++g) features[g] = FeatureMatrix(graph_nodes[g], feature_dim);
    for (std::size_t i = 0; i < n_total; ++i) {
      auto rank = static_cast<std::size_t>(std::lower_bound(levels.begin(), levels.end(), values[i]) -
                                           levels.begin());
      features[graph_of[i]].at(local_id[i], rank) = 1.0;
    }
    rep.features = FeatureSource::node_labels;
  } else if (na_file.exists()) {
    const auto& rows = na_file.rows();
    na_file.expect_count(rows.size(), n_total, "one attribute row per node");
    feature_dim = rows.empty() ? 0 : rows.front().tokens.size();
    for (std::size_t g = 0; g < n_graphs; ++g) features[g] = FeatureMatrix(graph_nodes[g], feature_dim);
    for (std::size_t i = 0; i < n_total; ++i) {
      if (rows[i].tokens.size() != feature_dim) na_file.fail(rows[i].line, "ragged attribute row");
      for (std::size_t c = 0; c < feature_dim; ++c) {
        features[graph_of[i]].at(local_id[i], c) = na_file.parse<double>(rows[i], c);
      }
    }
    rep.features = FeatureSource::node_attributes;
  } else {
    feature_dim = 1;
    for (std::size_t g = 0; g < n_graphs; ++g) features[g] = FeatureMatrix(graph_nodes[g], 1, 1.0);
    rep.features = FeatureSource::degree;
  }

  // Graph labels.
  GraphSet set;
  std::vector<std::optional<ClassId>> labels(n_graphs);
  TuFile gl_file(dir, name, "graph_labels");
  if (gl_file.exists()) {
    const auto& rows = gl_file.rows();
    gl_file.expect_count(rows.size(), n_graphs, "one label per graph");
    std::vector<long long> raw(n_graphs);
    for (std::size_t g = 0; g < n_graphs; ++g) raw[g] = gl_file.parse<long long>(rows[g], 0);
    set.label_values = raw;
    std::sort(set.label_values.begin(), set.label_values.end());
    set.label_values.erase(std::unique(set.label_values.begin(), set.label_values.end()),
                           set.label_values.end());
    set.num_classes = set.label_values.size();
    for (std::size_t g = 0; g < n_graphs; ++g) {
      labels[g] = static_cast<ClassId>(
          std::lower_bound(set.label_values.begin(), set.label_values.end(), raw[g]) -
          set.label_values.begin());
    }
  }

  set.feature_dim = feature_dim;
  set.graphs.reserve(n_graphs);
  for (std::size_t g = 0; g < n_graphs; ++g) {
    set.graphs.emplace_back(graph_nodes[g], edges[g], std::move(features[g]), labels[g],
                            DuplicateEdges::collapse);
  }
  if (rep.features == FeatureSource::degree) set = degree_onehot(std::move(set));
  set.validate();
  return set;
}

void write_dataset(const GraphSet& set, const std::filesystem::path& dir, std::string_view name) {
  write_graphs(set.graphs, set, dir, name);
}

void write_samples(std::span<const AugmentedSample> samples, const GraphSet& source,
                   const std::filesystem::path& dir, std::string_view name) {
  if (samples.empty()) throw std::invalid_argument("refusing to write an empty sample list");
  std::vector<Graph> graphs;
  graphs.reserve(samples.size());
  for (const auto& s : samples) graphs.push_back(s.graph);
  write_graphs(graphs, source, dir, name);
  if (source.labeled()) {
    auto out = open_out(dir / (std::string(name) + "_soft_labels.txt"));
    for (const auto& s : samples) {
      if (s.soft_label.size() != source.num_classes) {
        throw std::invalid_argument("soft label length differs from the class count");
      }
      for (std::size_t c = 0; c < s.soft_label.size(); ++c) {
        out << (c ? ", " : "") << format_double(s.soft_label[c]);
      }
      out << '\n';
    }
  }
}

GraphSet degree_onehot(GraphSet set) {
  std::vector<std::size_t> degrees;
  for (const Graph& g : set.graphs) {
    for (NodeId v = 0; v < g.node_count(); ++v) degrees.push_back(g.degree(v));
  }
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  const std::size_t d = std::max<std::size_t>(degrees.size(), 1);
  for (Graph& g : set.graphs) {
    FeatureMatrix x(g.node_count(), d);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      auto rank = std::lower_bound(degrees.begin(), degrees.end(), g.degree(v)) - degrees.begin();
      x.at(v, static_cast<std::size_t>(rank)) = 1.0;
    }
    g = g.with_features(std::move(x));
  }
  set.feature_dim = d;
  return set;
}

namespace {

FeatureMatrix random_features(std::size_t n, std::size_t d, Rng& rng) {
  if (d == 0) throw std::invalid_argument("feature_dim must be positive");
  if (d == 1) return FeatureMatrix(n, 1, 1.0);
  FeatureMatrix x(n, d);
  for (std::size_t v = 0; v < n; ++v) x.at(v, uniform_index(rng, d)) = 1.0;
  return x;
}

}  // namespace

Graph gen_er(std::size_t n, std::size_t m, Rng& rng, std::size_t feature_dim) {
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n == 0 ? 0 : n - 1) / 2;
  if (m > pairs) throw std::invalid_argument("G(n, m): m exceeds n(n-1)/2");
  auto key = [n](NodeId a, NodeId b) { return static_cast<std::uint64_t>(a) * n + b; };
  // Dense requests sample the complement instead.
  const bool complement = m > pairs / 2;
  const std::uint64_t draws = complement ? pairs - m : m;
  std::unordered_set<std::uint64_t> picked;
  picked.reserve(static_cast<std::size_t>(draws) * 2);
  std::vector<Edge> edges;
  edges.reserve(m);
  while (picked.size() < draws) {
    const auto a = static_cast<NodeId>(uniform_index(rng, n));
    const auto b = static_cast<NodeId>(uniform_index(rng, n));
    if (a == b) continue;
    Edge e{a, b};
    if (picked.insert(key(e.u, e.v)).second && !complement) edges.push_back(e);
  }
  if (complement) {
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) {
        if (!picked.contains(key(a, b))) edges.emplace_back(a, b);
      }
    }
  }
  return {n, edges, random_features(n, feature_dim, rng)};
}

Graph gen_communities(std::size_t communities, std::size_t size, double p_in, Rng& rng,
                      std::size_t feature_dim) {
  if (communities == 0 || size == 0) throw std::invalid_argument("empty community layout");
  if (!(p_in >= 0.0 && p_in <= 1.0)) throw std::invalid_argument("p_in must lie in [0, 1]");
  const std::size_t n = communities * size;
  std::vector<Edge> edges;
  std::bernoulli_distribution coin(p_in);
  for (std::size_t c = 0; c < communities; ++c) {
    const auto base = static_cast<NodeId>(c * size);
    for (NodeId a = 0; a < size; ++a) {
      for (NodeId b = a + 1; b < size; ++b) {
        if (coin(rng)) edges.emplace_back(base + a, base + b);
      }
    }
  }
  if (communities > 1) {
    for (std::size_t c = 0; c < communities; ++c) {
      const std::size_t next = (c + 1) % communities;
      if (communities == 2 && c == 1) break;
      edges.emplace_back(static_cast<NodeId>(c * size), static_cast<NodeId>(next * size + size - 1));
    }
  }
  return {n, edges, random_features(n, feature_dim, rng), std::nullopt, DuplicateEdges::collapse};
}

GraphSet gen_mixed_corpus(std::size_t count, Rng& rng) {
  constexpr std::size_t kDim = 4;
  GraphSet set;
  set.num_classes = 2;
  set.feature_dim = kDim;
  set.label_values = {0, 1};
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 3 == 2) {
      // clustered: dense blocks on a bridge ring, triangle-rich
      const std::size_t blocks = 2 + uniform_index(rng, 4);
      const std::size_t size = 6 + uniform_index(rng, 5);
      set.graphs.push_back(gen_communities(blocks, size, 0.6, rng, kDim).with_label(1));
      continue;
    }
    const std::size_t n = 12 + uniform_index(rng, 29);
    // i % 3 == 0: forest-like with isolated nodes and many components;
    // i % 3 == 1: mostly connected with few triangles.
    const std::size_t m = i % 3 == 0 ? n * 3 / 4 : 2 * n;
    set.graphs.push_back(gen_er(n, m, rng, kDim).with_label(0));
  }
  return set;
}

GraphSet gen_clustered_corpus(std::size_t count, Rng& rng) {
  constexpr std::size_t kDim = 4;
  GraphSet set;
  set.num_classes = 2;
  set.feature_dim = kDim;
  set.label_values = {0, 1};
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t blocks = 2 + uniform_index(rng, 4);
    const std::size_t size = 6 + uniform_index(rng, 5);
    set.graphs.push_back(gen_communities(blocks, size, 0.6, rng, kDim).with_label(static_cast<ClassId>(blocks % 2)));
  }
  return set;
}

DatasetStats stats(const GraphSet& set) {
  DatasetStats s;
  s.graphs = set.size();
  for (const Graph& g : set.graphs) {
    s.nodes += g.node_count();
    s.edges += g.edge_count();
  }
  s.features = set.feature_dim;
  s.labels = set.num_classes;
  return s;
}

std::string format_stats_table(std::span<const std::pair<std::string, DatasetStats>> rows) {
  const std::vector<std::string> head = {"dataset", "graphs", "nodes", "edges", "arcs", "features", "labels"};
  std::vector<std::vector<std::string>> cells = {head};
  for (const auto& [name, s] : rows) {
    cells.push_back({name, std::to_string(s.graphs), std::to_string(s.nodes), std::to_string(s.edges),
                     std::to_string(2 * s.edges), std::to_string(s.features), std::to_string(s.labels)});
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& r : cells) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::string out;
  for (const auto& r : cells) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      const std::string pad(width[c] - r[c].size(), ' ');
      if (c == 0) {
        out += r[c] + pad;
      } else {
        out += "  " + pad + r[c];
      }
    }
    out += '\n';
  }
  return out;
}

FoldSplit make_folds(const GraphSet& set, std::size_t k, Rng& rng) {
  if (k < 2) throw std::invalid_argument("need at least two folds");
  if (k > set.size()) throw std::invalid_argument("more folds than graphs");
  std::map<ClassId, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < set.size(); ++i) by_class[set.graphs[i].label().value_or(0)].push_back(i);
  FoldSplit split{k, std::vector<std::size_t>(set.size(), 0)};
  std::size_t dealt = 0;
  for (auto& [label, members] : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t idx : members) split.fold[idx] = dealt++ % k;
  }
  return split;
}

}  // namespace graphaug
