#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphaug/augmenter.hpp"
#include "graphaug/graph.hpp"
#include "graphaug/statistics.hpp"

namespace graphaug {

enum class Property { p1, p2, p3, p4, p5 };
enum class Verdict { pass, fail, not_applicable };

std::string_view to_string(Property p);
std::string_view to_string(Verdict v);
Property parse_property(std::string_view name);
inline constexpr std::array kAllProperties = {Property::p1, Property::p2, Property::p3, Property::p4,
                                              Property::p5};

// Decision rules.
inline constexpr double kSlopeBound = 1.15;
inline constexpr double kMinR2 = 0.95;
inline constexpr double kHeadroom = 20.0;  // NodeSam P1 pool: |E| >= kHeadroom * max_i h_i
inline constexpr double kOracleBand = 3.0; // oracle acceptance in standard errors

struct PropertyReport {
  std::string method;
  Property property = Property::p1;
  Verdict verdict = Verdict::not_applicable;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string note;
};

struct TrialRecord {
  std::size_t graph = 0;
  std::int64_t node_delta = 0;
  std::int64_t edge_delta = 0;
  bool same_shape = false;
  double feature_change = 0.0;  // squared Frobenius norm; 0 unless same_shape
  bool connected_before = false;
  bool connected_after = false;
};

struct TrialConfig {
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t threads = 0;  // 0: hardware concurrency
};

// Graphs of the set the augmenter can be applied to, ascending.
std::vector<std::size_t> applicable_pool(const Augmenter& aug, const GraphSet& set);

// Graphs whose size dwarfs NodeSam's per-node compensation term:
// |E| >= kHeadroom * max_i h_i. `min_ratio` receives min over the pool of
// |E| / max_i h_i (infinity when every h_i is 0).
std::vector<std::size_t> headroom_pool(const GraphSet& set, std::span<const std::size_t> candidates,
                                       double* min_ratio = nullptr);

// Trial t draws a uniform graph from `pool` and augments it with the stream
// make_stream(seed, t). Records are stored by trial index, so the result does
// not depend on the thread count.
std::vector<TrialRecord> run_trials(const Augmenter& aug, const GraphSet& set,
                                    std::span<const std::size_t> pool, const TrialConfig& cfg);

PropertyReport evaluate_p1(std::span<const TrialRecord> records);
PropertyReport evaluate_p2(std::span<const TrialRecord> records);
PropertyReport evaluate_p3(std::span<const TrialRecord> records);
PropertyReport evaluate_p4(std::span<const TrialRecord> records);

// Each check filters the set to applicable graphs (and, for NodeSam P1, to
// the headroom pool) and fills method/trials/seed.
PropertyReport check_p1(const Augmenter& aug, const GraphSet& set, const TrialConfig& cfg);
PropertyReport check_p2(const Augmenter& aug, const GraphSet& set, const TrialConfig& cfg);
PropertyReport check_p3(const Augmenter& aug, const GraphSet& set, const TrialConfig& cfg);
PropertyReport check_p4(const Augmenter& aug, const GraphSet& set, const TrialConfig& cfg);

enum class GraphFamily { er, communities };
std::string_view to_string(GraphFamily f);
GraphFamily parse_family(std::string_view name);

// Keeps freed heap memory mapped for the life of the process so repeated
// large allocations do not pay fresh page faults. No-op outside glibc.
void steady_allocator();

struct ScalingConfig {
  std::vector<std::size_t> edge_sizes;
  GraphFamily family = GraphFamily::er;
  double avg_degree = 6.0;        // er
  std::size_t communities = 8;    // communities
  double p_in = 0.5;              // communities
  std::size_t feature_dim = 8;
  std::size_t repeats = 5;        // median over this many batches
  double min_batch_seconds = 0.02;
  std::uint64_t seed = 0;
};

// Comma-separated sizes; accepts forms like 1e4 and 20000.
std::vector<std::size_t> parse_sizes(std::string_view text);

// Two graphs of roughly `edges` edges from the family (the second is SubMix's partner).
GraphSet scaling_instance(const ScalingConfig& cfg, std::size_t edges, std::uint64_t salt);

struct TimingRow {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double seconds = 0.0;  // median per-call wall time
};

struct ScalingReport {
  std::vector<TimingRow> rows;
  LinearFit fit;
  // Largest per-doubling runtime growth between consecutive sizes: (t2/t1)^(1/log2(e2/e1)).
  double max_doubling_ratio = 0.0;
  PropertyReport report;
};

// PASS iff slope <= kSlopeBound and R^2 >= kMinR2. Needs >= 2 sizes.
ScalingReport check_p5(const Augmenter& aug, const ScalingConfig& cfg);

struct OracleReport {
  std::string name;
  double predicted = 0.0;
  MeanEstimate observed;
  // pass iff |mean - predicted| <= kOracleBand * SE, or exact equality when SE == 0.
  bool pass = false;
};

// Mean of T(G') after splitting `target`, against T(G) - t_i / 2.
OracleReport oracle_split_triangles(const Graph& g, NodeId target, std::size_t trials, std::uint64_t seed);
// After splitting `target`, connect neighbor u to the child it is not adjacent
// to and count the triangles this closes; predicted |N_ui| / 2 + 1 where N_ui
// are the common neighbors of u and the target.
OracleReport oracle_adjust_triangles(const Graph& g, NodeId target, NodeId u, std::size_t trials,
                                     std::uint64_t seed);
// Mean of |E| after one uniform merge, against |E| - 3 T(G) / |E| - 1.
OracleReport oracle_merge_edges(const Graph& g, std::size_t trials, std::uint64_t seed);

struct DeltaDistribution {
  std::string method;
  std::string dataset;
  std::vector<std::int64_t> deltas;
  FiveNumberSummary summary;
};

DeltaDistribution delta_distribution(const Augmenter& aug, const GraphSet& set, std::string dataset,
                                     const TrialConfig& cfg);
// One row per trial: trial,edge_delta.
std::string distribution_csv(const DeltaDistribution& d);
// One row per distribution: method,dataset,n,min,q1,median,q3,max,mean.
std::string distribution_summary_csv(std::span<const DeltaDistribution> ds);

// Reference verdicts. Rows for nodesam, submix, dropedge, graphcrop, nodeaug
// and motifswap follow the published comparison (unmarked cells are fail);
// dropnode, addedge and changeattr are derived from the operator definitions.
std::optional<std::array<Verdict, 5>> expected_verdicts(Method m);
bool expectation_published(Method m);

std::vector<PropertyReport> property_matrix(std::span<const Augmenter> methods, const GraphSet& set,
                                            const TrialConfig& cfg, const ScalingConfig& scaling);

std::string reports_csv(std::span<const PropertyReport> reports);
inline constexpr std::string_view kTimingsHeader = "method,nodes,edges,seconds\n";
// Rows only; prepend kTimingsHeader once.
std::string timings_csv(std::string_view method, const ScalingReport& s);

}  // namespace graphaug
