#include "graphaug/verify.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "graphaug/dataset.hpp"
#include "graphaug/nodesam.hpp"

namespace graphaug {

std::string_view to_string(Property p) {
  static constexpr std::array names = {"P1", "P2", "P3", "P4", "P5"};
  return names[static_cast<std::size_t>(p)];
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::not_applicable: return "N/A";
  }
  return "?";
}

Property parse_property(std::string_view name) {
  for (Property p : kAllProperties) {
    std::string_view s = to_string(p);
    if (name.size() == 2 && (name[0] == 'p' || name[0] == 'P') && name[1] == s[1]) return p;
  }
  throw std::invalid_argument("unknown property '" + std::string(name) + "' (expected p1..p5)");
}

std::string_view to_string(GraphFamily f) { return f == GraphFamily::er ? "er" : "communities"; }

GraphFamily parse_family(std::string_view name) {
  if (name == "er") return GraphFamily::er;
  if (name == "communities") return GraphFamily::communities;
  throw std::invalid_argument("unknown graph family '" + std::string(name) + "' (er, communities)");
}

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

bool connected_or_empty(const Graph& g) { return g.node_count() == 0 || is_connected(g); }

TrialRecord record_trial(const Graph& in, const Graph& out, std::size_t index) {
  TrialRecord r;
  r.graph = index;
  r.node_delta = static_cast<std::int64_t>(out.node_count()) - static_cast<std::int64_t>(in.node_count());
  r.edge_delta = static_cast<std::int64_t>(out.edge_count()) - static_cast<std::int64_t>(in.edge_count());
  r.same_shape = out.node_count() == in.node_count() && out.feature_dim() == in.feature_dim();
  if (r.same_shape) {
    const auto& a = in.features().data();
    const auto& b = out.features().data();
    for (std::size_t i = 0; i < a.size(); ++i) r.feature_change += (b[i] - a[i]) * (b[i] - a[i]);
  }
  r.connected_before = connected_or_empty(in);
  r.connected_after = connected_or_empty(out);
  return r;
}

template <class F>
std::vector<double> project(std::span<const TrialRecord> records, F f) {
  std::vector<double> xs;
  xs.reserve(records.size());
  for (const auto& r : records) xs.push_back(f(r));
  return xs;
}

PropertyReport stamp(PropertyReport rep, const Augmenter& aug, const TrialConfig& cfg) {
  rep.method = aug.name();
  rep.seed = cfg.seed;
  return rep;
}

PropertyReport empty_pool(const Augmenter& aug, Property p, const TrialConfig& cfg) {
  PropertyReport rep;
  rep.property = p;
  rep.verdict = Verdict::not_applicable;
  rep.note = "no applicable graph";
  return stamp(rep, aug, cfg);
}

bool oracle_pass(const MeanEstimate& m, double predicted) {
  if (m.se == 0.0) return std::abs(m.mean - predicted) <= 1e-12 * std::max(1.0, std::abs(predicted));
  return std::abs(m.mean - predicted) <= kOracleBand * m.se;
}

}  // namespace

std::vector<std::size_t> applicable_pool(const Augmenter& aug, const GraphSet& set) {
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (aug.applicable(set, i)) pool.push_back(i);
  }
  return pool;
}

std::vector<std::size_t> headroom_pool(const GraphSet& set, std::span<const std::size_t> candidates,
                                       double* min_ratio) {
  std::vector<std::size_t> pool;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t idx : candidates) {
    const Graph& g = set.graphs.at(idx);
    const TriangleStats ts = triangle_stats(g);
    double max_h = 0.0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      max_h = std::max(max_h, compute_h(ts.per_node[v], g.degree(v), g.node_count(), g.edge_count()));
    }
    const double ratio = max_h == 0.0 ? std::numeric_limits<double>::infinity()
                                      : static_cast<double>(g.edge_count()) / max_h;
    if (ratio >= kHeadroom) {
      pool.push_back(idx);
      worst = std::min(worst, ratio);
    }
  }
  if (min_ratio) *min_ratio = worst;
  return pool;
}

std::vector<TrialRecord> run_trials(const Augmenter& aug, const GraphSet& set,
                                    std::span<const std::size_t> pool, const TrialConfig& cfg) {
  if (pool.empty()) throw std::invalid_argument("empty graph pool");
  std::vector<TrialRecord> records(cfg.trials);
  std::size_t workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(cfg.trials, 1));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    try {
      for (std::size_t t = next++; t < cfg.trials; t = next++) {
        Rng rng = make_stream(cfg.seed, t);
        const std::size_t idx = pool[uniform_index(rng, pool.size())];
        const AugmentedSample s = aug.apply(set, idx, rng);
        records[t] = record_trial(set.graphs[idx], s.graph, idx);
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next = cfg.trials;
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

PropertyReport evaluate_p1(std::span<const TrialRecord> records) {
  PropertyReport rep;
  rep.property = Property::p1;
  rep.trials = records.size();
  const auto nodes = estimate_mean(project(records, [](const TrialRecord& r) { return double(r.node_delta); }));
  const auto edges = estimate_mean(project(records, [](const TrialRecord& r) { return double(r.edge_delta); }));
  const bool nodes_fixed =
      std::all_of(records.begin(), records.end(), [](const TrialRecord& r) { return r.node_delta == 0; });
  const bool nodes_ok = nodes_fixed || nodes.ci_contains(0.0);
  const bool edges_ok = edges.ci_contains(0.0);
  rep.verdict = nodes_ok && edges_ok ? Verdict::pass : Verdict::fail;
  rep.estimate = edges.mean;
  rep.ci_low = edges.ci_low();
  rep.ci_high = edges.ci_high();
  rep.note = "edge se=" + fmt(edges.se) + "; node mean=" + fmt(nodes.mean) + " ci=[" + fmt(nodes.ci_low()) +
             ", " + fmt(nodes.ci_high()) + "]" + (nodes_fixed ? " (always 0)" : "");
  return rep;
}

PropertyReport evaluate_p2(std::span<const TrialRecord> records) {
  PropertyReport rep;
  rep.property = Property::p2;
  rep.trials = records.size();
  std::size_t kept = 0, from_connected = 0, lost = 0, gained = 0;
  for (const auto& r : records) {
    from_connected += r.connected_before;
    if (r.connected_before == r.connected_after) {
      ++kept;
    } else if (r.connected_before) {
      ++lost;
    } else {
      ++gained;
    }
  }
  rep.verdict = kept == records.size() ? Verdict::pass : Verdict::fail;
  rep.estimate = records.empty() ? 0.0 : static_cast<double>(kept) / static_cast<double>(records.size());
  rep.ci_low = rep.ci_high = rep.estimate;
  rep.note = "connected inputs=" + std::to_string(from_connected) +
             " disconnected inputs=" + std::to_string(records.size() - from_connected) +
             " disconnected outputs from connected=" + std::to_string(lost) +
             " connected outputs from disconnected=" + std::to_string(gained);
  return rep;
}

PropertyReport evaluate_p3(std::span<const TrialRecord> records) {
  PropertyReport rep;
  rep.property = Property::p3;
  rep.trials = records.size();
  const auto node_sq =
      estimate_mean(project(records, [](const TrialRecord& r) { return double(r.node_delta * r.node_delta); }));
  std::vector<double> feat;
  for (const auto& r : records) {
    if (r.same_shape) feat.push_back(r.feature_change);
  }
  const auto feature = estimate_mean(feat);
  rep.verdict = node_sq.mean > 0.0 || feature.mean > 0.0 ? Verdict::pass : Verdict::fail;
  rep.estimate = node_sq.mean;
  rep.ci_low = node_sq.ci_low();
  rep.ci_high = node_sq.ci_high();
  rep.note = "mean squared feature change=" + fmt(feature.mean) + " over " + std::to_string(feature.n) +
             " same-shape trials";
  return rep;
}

PropertyReport evaluate_p4(std::span<const TrialRecord> records) {
  PropertyReport rep;
  rep.property = Property::p4;
  rep.trials = records.size();
  const auto sq =
      estimate_mean(project(records, [](const TrialRecord& r) { return double(r.edge_delta * r.edge_delta); }));
  rep.verdict = sq.mean > 0.0 ? Verdict::pass : Verdict::fail;
  rep.estimate = sq.mean;
  rep.ci_low = sq.ci_low();
  rep.ci_high = sq.ci_high();
  return rep;
}

PropertyReport check_p1(const Augmenter& aug, const GraphSet& set, const TrialConfig& cfg) {
  std::vector<std::size_t> pool = applicable_pool(aug, set);
  std::string pool_note;
  if (aug.method() == Method::nodesam && aug.options().variant == "full") {
    double ratio = 0.0;
    const std::size_t before = pool.size();
    pool = headroom_pool(set, pool, &ratio);
    pool_note = "; headroom pool " + std::to_string(pool.size()) + "/" + std::to_string(before) +
                " graphs, min |E|/max h=" + fmt(ratio);
  }
  if (pool.empty()) return empty_pool(aug, Property::p1, cfg);
  PropertyReport rep = evaluate_p1(run_trials(aug, set, pool, cfg));
  rep.note += pool_note;
  return stamp(rep, aug, cfg);
}

PropertyReport check_p2(const Augmenter& aug, const GraphSet& set, const TrialConfig& cfg) {
  const auto pool = applicable_pool(aug, set);
  if (pool.empty()) return empty_pool(aug, Property::p2, cfg);
  return stamp(evaluate_p2(run_trials(aug, set, pool, cfg)), aug, cfg);
}

PropertyReport check_p3(const Augmenter& aug, const GraphSet& set, const TrialConfig& cfg) {
  const auto pool = applicable_pool(aug, set);
  if (pool.empty()) return empty_pool(aug, Property::p3, cfg);
  return stamp(evaluate_p3(run_trials(aug, set, pool, cfg)), aug, cfg);
}

PropertyReport check_p4(const Augmenter& aug, const GraphSet& set, const TrialConfig& cfg) {
  const auto pool = applicable_pool(aug, set);
  if (pool.empty()) return empty_pool(aug, Property::p4, cfg);
  return stamp(evaluate_p4(run_trials(aug, set, pool, cfg)), aug, cfg);
}

std::vector<std::size_t> parse_sizes(std::string_view text) {
  std::vector<std::size_t> sizes;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size() || value < 1.0 ||
        value != std::floor(value)) {
      throw std::invalid_argument("bad size '" + std::string(tok) + "'");
    }
    sizes.push_back(static_cast<std::size_t>(value));
    pos = end + 1;
  }
  return sizes;
}

GraphSet scaling_instance(const ScalingConfig& cfg, std::size_t edges, std::uint64_t salt) {
  Rng rng = make_stream(cfg.seed, edges, salt);
  GraphSet set;
  set.num_classes = 2;
  set.label_values = {0, 1};
  set.feature_dim = cfg.feature_dim;
  for (ClassId y = 0; y < 2; ++y) {
    Graph g;
    if (cfg.family == GraphFamily::er) {
      const auto n = static_cast<std::size_t>(std::llround(2.0 * static_cast<double>(edges) / cfg.avg_degree));
      g = gen_er(std::max<std::size_t>(n, 2), edges, rng, cfg.feature_dim);
    } else {
      const double per = static_cast<double>(edges) / (static_cast<double>(cfg.communities) * cfg.p_in);
      const auto size = static_cast<std::size_t>(std::llround(0.5 + std::sqrt(0.25 + 2.0 * per)));
      g = gen_communities(cfg.communities, std::max<std::size_t>(size, 3), cfg.p_in, rng, cfg.feature_dim);
    }
    set.graphs.push_back(g.with_label(y));
  }
  return set;
}

ScalingReport check_p5(const Augmenter& aug, const ScalingConfig& cfg) {
  if (cfg.edge_sizes.size() < 2) throw std::invalid_argument("scaling check needs at least two sizes");
  if (cfg.repeats == 0) throw std::invalid_argument("repeats must be positive");
  using clock = std::chrono::steady_clock;
  ScalingReport out;
  for (std::size_t si = 0; si < cfg.edge_sizes.size(); ++si) {
    const GraphSet set = scaling_instance(cfg, cfg.edge_sizes[si], 0);
    Rng rng = make_stream(cfg.seed, si, 1);
    (void)aug.apply(set, 0, rng);  // warm-up
    std::vector<double> per_call;
    for (std::size_t r = 0; r < cfg.repeats; ++r) {
      std::size_t calls = 0;
      const auto start = clock::now();
      double elapsed = 0.0;
      do {
        (void)aug.apply(set, 0, rng);
        ++calls;
        elapsed = std::chrono::duration<double>(clock::now() - start).count();
      } while (elapsed < cfg.min_batch_seconds);
      per_call.push_back(elapsed / static_cast<double>(calls));
    }
    std::sort(per_call.begin(), per_call.end());
    out.rows.push_back({set.graphs[0].node_count(), set.graphs[0].edge_count(),
                        quantile_sorted(per_call, 0.5)});
  }
  std::vector<double> xs, ys;
  for (const auto& row : out.rows) {
    xs.push_back(static_cast<double>(row.edges));
    ys.push_back(row.seconds);
  }
  out.fit = fit_loglog(xs, ys);
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    const double doublings = std::log2(xs[i] / xs[i - 1]);
    if (doublings > 0) out.max_doubling_ratio = std::max(out.max_doubling_ratio, std::pow(ys[i] / ys[i - 1], 1.0 / doublings));
  }
  PropertyReport& rep = out.report;
  rep.method = aug.name();
  rep.property = Property::p5;
  rep.verdict = out.fit.slope <= kSlopeBound && out.fit.r2 >= kMinR2 ? Verdict::pass : Verdict::fail;
  rep.estimate = out.fit.slope;
  rep.ci_low = rep.ci_high = out.fit.slope;
  rep.trials = out.rows.size();
  rep.seed = cfg.seed;
  rep.note = "log-log slope over " + std::string(to_string(cfg.family)) + " graphs, R^2=" + fmt(out.fit.r2) +
             ", max per-doubling ratio=" + fmt(out.max_doubling_ratio);
  return out;
}

OracleReport oracle_split_triangles(const Graph& g, NodeId target, std::size_t trials, std::uint64_t seed) {
  g.check_node(target);
  OracleReport rep;
  rep.name = "split triangles";
  rep.predicted = static_cast<double>(count_triangles(g)) - static_cast<double>(triangles_at(g, target).count) / 2.0;
  std::vector<double> xs(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = make_stream(seed, t);
    xs[t] = static_cast<double>(count_triangles(split_node(g, target, rng).graph));
  }
  rep.observed = estimate_mean(xs);
  rep.pass = oracle_pass(rep.observed, rep.predicted);
  return rep;
}

OracleReport oracle_adjust_triangles(const Graph& g, NodeId target, NodeId u, std::size_t trials,
                                     std::uint64_t seed) {
  g.check_node(target);
  g.check_node(u);
  if (!g.has_edge(u, target)) throw std::invalid_argument("u must be adjacent to the split target");
  OracleReport rep;
  rep.name = "adjust triangles";
  rep.predicted = static_cast<double>(common_neighbors(g, u, target).size()) / 2.0 + 1.0;
  std::vector<double> xs(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = make_stream(seed, t);
    const SplitOutcome s = split_node(g, target, rng);
    const NodeId other = s.graph.has_edge(u, s.child_a) ? s.child_b : s.child_a;
    xs[t] = static_cast<double>(common_neighbors(s.graph, u, other).size());
  }
  rep.observed = estimate_mean(xs);
  rep.pass = oracle_pass(rep.observed, rep.predicted);
  return rep;
}

OracleReport oracle_merge_edges(const Graph& g, std::size_t trials, std::uint64_t seed) {
  if (g.edge_count() == 0) throw GraphError("merge oracle needs at least one edge");
  OracleReport rep;
  rep.name = "merge edges";
  const auto e = static_cast<double>(g.edge_count());
  rep.predicted = e - 3.0 * static_cast<double>(count_triangles(g)) / e - 1.0;
  std::vector<double> xs(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = make_stream(seed, t);
    xs[t] = static_cast<double>(merge(g, rng).graph.edge_count());
  }
  rep.observed = estimate_mean(xs);
  rep.pass = oracle_pass(rep.observed, rep.predicted);
  return rep;
}

DeltaDistribution delta_distribution(const Augmenter& aug, const GraphSet& set, std::string dataset,
                                     const TrialConfig& cfg) {
  const auto pool = applicable_pool(aug, set);
  const auto records = run_trials(aug, set, pool, cfg);
  DeltaDistribution d;
  d.method = aug.name();
  d.dataset = std::move(dataset);
  std::vector<double> xs;
  for (const auto& r : records) {
    d.deltas.push_back(r.edge_delta);
    xs.push_back(static_cast<double>(r.edge_delta));
  }
  if (!xs.empty()) d.summary = summarize(xs);
  return d;
}

std::string distribution_csv(const DeltaDistribution& d) {
  std::string out = "trial,edge_delta\n";
  for (std::size_t t = 0; t < d.deltas.size(); ++t) {
    out += std::to_string(t) + "," + std::to_string(d.deltas[t]) + "\n";
  }
  return out;
}

std::string distribution_summary_csv(std::span<const DeltaDistribution> ds) {
  std::string out = "method,dataset,n,min,q1,median,q3,max,mean\n";
  for (const auto& d : ds) {
    const auto& s = d.summary;
    out += d.method + "," + d.dataset + "," + std::to_string(d.deltas.size()) + "," + fmt(s.min) + "," +
           fmt(s.q1) + "," + fmt(s.median) + "," + fmt(s.q3) + "," + fmt(s.max) + "," + fmt(s.mean) + "\n";
  }
  return out;
}

std::optional<std::array<Verdict, 5>> expected_verdicts(Method m) {
  constexpr auto P = Verdict::pass;
  constexpr auto F = Verdict::fail;
  switch (m) {
    case Method::nodesam:
    case Method::submix: return std::array{P, P, P, P, P};
    case Method::drop_edge: return std::array{F, F, F, P, P};
    case Method::graph_crop:
    case Method::node_aug: return std::array{F, F, P, P, P};
    case Method::motif_swap: return std::array{P, P, F, F, F};
    case Method::drop_node: return std::array{F, F, P, P, P};
    case Method::add_edge: return std::array{F, F, F, P, P};
    case Method::change_attr: return std::array{P, P, P, F, P};
    case Method::identity: return std::nullopt;
  }
  return std::nullopt;
}

bool expectation_published(Method m) {
  switch (m) {
    case Method::nodesam:
    case Method::submix:
    case Method::drop_edge:
    case Method::graph_crop:
    case Method::node_aug:
    case Method::motif_swap: return true;
    default: return false;
  }
}

std::vector<PropertyReport> property_matrix(std::span<const Augmenter> methods, const GraphSet& set,
                                            const TrialConfig& cfg, const ScalingConfig& scaling) {
  std::vector<PropertyReport> out;
  for (const Augmenter& aug : methods) {
    const auto pool = applicable_pool(aug, set);
    if (pool.empty()) {
      for (Property p : {Property::p1, Property::p2, Property::p3, Property::p4}) out.push_back(empty_pool(aug, p, cfg));
    } else {
      const auto records = run_trials(aug, set, pool, cfg);
      const bool headroom = aug.method() == Method::nodesam && aug.options().variant == "full";
      out.push_back(headroom ? check_p1(aug, set, cfg) : stamp(evaluate_p1(records), aug, cfg));
      out.push_back(stamp(evaluate_p2(records), aug, cfg));
      out.push_back(stamp(evaluate_p3(records), aug, cfg));
      out.push_back(stamp(evaluate_p4(records), aug, cfg));
    }
    if (scaling.edge_sizes.size() >= 2) {
      out.push_back(check_p5(aug, scaling).report);
    } else {
      PropertyReport rep;
      rep.property = Property::p5;
      rep.note = "no sizes given";
      out.push_back(stamp(rep, aug, cfg));
    }
  }
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

std::string reports_csv(std::span<const PropertyReport> reports) {
  std::string out = "method,property,verdict,estimate,ci_low,ci_high,trials,seed,note\n";
  for (const auto& r : reports) {
    out += csv_field(r.method) + "," + std::string(to_string(r.property)) + "," + std::string(to_string(r.verdict)) +
           "," + fmt(r.estimate) + "," + fmt(r.ci_low) + "," + fmt(r.ci_high) + "," + std::to_string(r.trials) +
           "," + std::to_string(r.seed) + "," + csv_field(r.note) + "\n";
  }
  return out;
}

std::string timings_csv(std::string_view method, const ScalingReport& s) {
  std::string out;
  for (const auto& row : s.rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", row.seconds);
    out += std::string(method) + "," + std::to_string(row.nodes) + "," + std::to_string(row.edges) + "," + buf + "\n";
  }
  return out;
}

void steady_allocator() {
#if defined(__GLIBC__)
  mallopt(M_MMAP_THRESHOLD, 1 << 30);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
#endif
}

}  // namespace graphaug
