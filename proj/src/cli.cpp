#include "graphaug/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "graphaug/augmenter.hpp"
#include "graphaug/baselines.hpp"
#include "graphaug/dataset.hpp"
#include "graphaug/verify.hpp"

namespace graphaug::cli {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(RunConfig, command, input, name, synthetic, corpus_size,
                                                corpus_seed, methods, variant, count, trials, seed, p, rho,
                                                repeat, properties, all_properties, matrix, sizes, family,
                                                degree, repeats, folds, threads, output)

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kManifestVersion = 1;
constexpr const char* kDefaultVerifySizes = "1000,3000,10000,30000,100000";
constexpr const char* kDefaultBenchSizes = "10000,30000,100000,300000,1000000";

// Usage errors detected after parsing.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DatasetError("cannot write " + path.string());
  out << text;
}

std::string fmt(double x, const char* format = "%.6g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

std::string file_safe(std::string s) {
  std::replace(s.begin(), s.end(), ':', '-');
  return s;
}

struct Input {
  GraphSet set;
  std::string label;  // dataset name for reports and output files
};

Input load_input(const RunConfig& cfg, std::ostream& err) {
  if (!cfg.synthetic.empty()) {
    if (!cfg.input.empty()) throw UsageError("--synthetic and --input are exclusive");
    Rng rng = make_stream(cfg.corpus_seed, 0);
    if (cfg.synthetic == "mixed") return {gen_mixed_corpus(cfg.corpus_size, rng), "synthetic-mixed"};
    if (cfg.synthetic == "clustered") return {gen_clustered_corpus(cfg.corpus_size, rng), "synthetic-clustered"};
    throw UsageError("--synthetic must be 'mixed' or 'clustered'");
  }
  if (cfg.input.empty() || cfg.name.empty()) throw UsageError("--input and --name are required (or --synthetic)");
  LoadReport rep;
  GraphSet set = load_tudataset(cfg.input, cfg.name, &rep);
  if (rep.one_directional > 0) {
    err << "warning: " << rep.one_directional << " edge lines have no reverse line\n";
  }
  return {std::move(set), cfg.name};
}

AugmentOptions augment_options(const RunConfig& cfg) {
  AugmentOptions o;
  o.variant = cfg.variant;
  o.p = cfg.p;
  o.rho = cfg.rho;
  o.repeat = cfg.repeat;
  return o;
}

std::vector<Augmenter> make_augmenters(const RunConfig& cfg, bool default_all) {
  std::vector<Augmenter> out;
  if (cfg.methods.empty()) {
    if (!default_all) throw UsageError("--method is required");
    AugmentOptions opts = augment_options(cfg);
    opts.variant = "full";
    for (Method m : all_methods()) {
      if (m != Method::identity) out.emplace_back(m, opts);
    }
    return out;
  }
  for (const auto& m : cfg.methods) {
    // A per-method "name:variant" overrides --variant.
    out.push_back(Augmenter::parse(m, augment_options(cfg)));
  }
  return out;
}

ScalingConfig scaling_config(const RunConfig& cfg, const char* default_sizes, GraphFamily default_family) {
  ScalingConfig s;
  s.edge_sizes = parse_sizes(cfg.sizes.empty() ? default_sizes : cfg.sizes);
  s.family = cfg.family.empty() ? default_family : parse_family(cfg.family);
  s.avg_degree = cfg.degree;
  s.repeats = cfg.repeats;
  s.seed = cfg.seed;
  return s;
}

void write_manifest(const RunConfig& cfg) {
  if (!cfg.output.empty()) write_text(fs::path(cfg.output) / "manifest.json", manifest_json(cfg));
}

json report_json(const PropertyReport& r) {
  return {{"method", r.method},         {"property", std::string(to_string(r.property))},
          {"verdict", std::string(to_string(r.verdict))},
          {"estimate", r.estimate},     {"ci_low", r.ci_low},
          {"ci_high", r.ci_high},       {"trials", r.trials},
          {"seed", r.seed},             {"note", r.note}};
}

std::string report_line(const PropertyReport& r) {
  std::ostringstream os;
  os << r.method << "  " << to_string(r.property) << "  " << to_string(r.verdict) << "  estimate=" << fmt(r.estimate)
     << "  ci=[" << fmt(r.ci_low) << ", " << fmt(r.ci_high) << "]  trials=" << r.trials;
  if (!r.note.empty()) os << "  (" << r.note << ")";
  return os.str();
}

int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  LoadReport rep;
  if (cfg.input.empty() || cfg.name.empty()) throw UsageError("stats needs --input and --name");
  const GraphSet set = load_tudataset(cfg.input, cfg.name, &rep);
  const DatasetStats s = stats(set);
  if (rep.one_directional > 0) err << "warning: " << rep.one_directional << " edge lines have no reverse line\n";
  std::vector<std::pair<std::string, DatasetStats>> rows = {{cfg.name, s}};
  out << format_stats_table(rows);
  if (!cfg.output.empty()) {
    json doc = {{"name", cfg.name},
                {"graphs", s.graphs},
                {"nodes", s.nodes},
                {"edges", s.edges},
                {"arcs", 2 * s.edges},
                {"features", s.features},
                {"labels", s.labels},
                {"feature_source", std::string(to_string(rep.features))},
                {"arc_lines", rep.arcs},
                {"one_directional_arcs", rep.one_directional},
                {"duplicate_arcs", rep.duplicate_arcs}};
    write_text(fs::path(cfg.output) / (cfg.name + "_stats.json"), doc.dump(2) + "\n");
    write_text(fs::path(cfg.output) / (cfg.name + "_stats.txt"), format_stats_table(rows));
    write_manifest(cfg);
  }
  return kExitOk;
}

int cmd_augment(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.output.empty()) throw UsageError("augment needs --output");
  if (cfg.methods.size() != 1) throw UsageError("augment takes exactly one --method");
  if (cfg.count == 0) throw UsageError("--count must be positive");
  const Input in = load_input(cfg, err);
  const Augmenter aug = make_augmenters(cfg, false).front();

  std::vector<AugmentedSample> samples;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < in.set.size(); ++i) {
    if (!aug.applicable(in.set, i)) {
      ++skipped;
      continue;
    }
    for (std::size_t c = 0; c < cfg.count; ++c) {
      Rng rng = make_stream(cfg.seed, i, c);
      samples.push_back(aug.apply(in.set, i, rng));
    }
  }
  if (skipped > 0) err << "warning: " << aug.name() << " skipped " << skipped << " inapplicable graphs\n";
  write_samples(samples, in.set, cfg.output, in.label);
  write_manifest(cfg);
  out << "wrote " << samples.size() << " graphs (" << aug.name() << ", seed " << cfg.seed << ") to " << cfg.output
      << "\n";
  return kExitOk;
}

std::vector<PropertyReport> evaluate(const Augmenter& aug, const GraphSet& set, std::span<const Property> props,
                                     const TrialConfig& tc, const ScalingConfig& sc,
                                     std::vector<std::pair<std::string, ScalingReport>>& timings) {
  std::vector<PropertyReport> out;
  const bool sampled = std::any_of(props.begin(), props.end(), [](Property p) { return p != Property::p5; });
  const auto pool = applicable_pool(aug, set);
  std::vector<TrialRecord> records;
  if (sampled && !pool.empty()) records = run_trials(aug, set, pool, tc);
  for (Property p : props) {
    if (p == Property::p5) {
      ScalingReport s = check_p5(aug, sc);
      out.push_back(s.report);
      timings.emplace_back(aug.name(), std::move(s));
      continue;
    }
    PropertyReport r;
    if (pool.empty()) {
      r.property = p;
      r.note = "no applicable graph";
    } else if (p == Property::p1) {
      const bool headroom = aug.method() == Method::nodesam && aug.options().variant == "full";
      r = headroom ? check_p1(aug, set, tc) : evaluate_p1(records);
    } else {
      r = p == Property::p2 ? evaluate_p2(records) : p == Property::p3 ? evaluate_p3(records) : evaluate_p4(records);
    }
    r.method = aug.name();
    r.seed = tc.seed;
    out.push_back(r);
  }
  return out;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.trials < 1000) throw UsageError("--trials must be at least 1000");
  const Input in = load_input(cfg, err);
  const auto augs = make_augmenters(cfg, cfg.matrix);
  std::vector<Property> props;
  if (cfg.matrix || cfg.all_properties) {
    props.assign(kAllProperties.begin(), kAllProperties.end());
  } else {
    for (const auto& p : cfg.properties) props.push_back(parse_property(p));
  }
  if (props.empty()) throw UsageError("give --property, --all-properties or --matrix");

  const TrialConfig tc{cfg.trials, cfg.seed, cfg.threads};
  const ScalingConfig sc = scaling_config(cfg, kDefaultVerifySizes, GraphFamily::communities);
  std::vector<PropertyReport> reports;
  std::vector<std::pair<std::string, ScalingReport>> timings;
  for (const auto& aug : augs) {
    auto r = evaluate(aug, in.set, props, tc, sc, timings);
    reports.insert(reports.end(), r.begin(), r.end());
  }

  bool ok = true;
  json mismatches = json::array();
  for (const auto& r : reports) {
    out << report_line(r) << "\n";
    if (!cfg.matrix) {
      ok = ok && r.verdict != Verdict::fail;
      continue;
    }
    const auto expected = expected_verdicts(parse_method(r.method.substr(0, r.method.find(':'))));
    if (!expected) continue;
    const Verdict want = (*expected)[static_cast<std::size_t>(r.property)];
    if (r.verdict != want) {
      ok = false;
      mismatches.push_back({{"method", r.method},
                            {"property", std::string(to_string(r.property))},
                            {"expected", std::string(to_string(want))},
                            {"observed", std::string(to_string(r.verdict))}});
      out << "  mismatch: expected " << to_string(want) << "\n";
    }
  }
  if (cfg.matrix) out << (ok ? "matrix matches reference verdicts\n" : "matrix differs from reference verdicts\n");

  if (!cfg.output.empty()) {
    json doc = {{"command", "verify"}, {"dataset", in.label}, {"trials", cfg.trials}, {"seed", cfg.seed}};
    doc["reports"] = json::array();
    for (const auto& r : reports) doc["reports"].push_back(report_json(r));
    if (cfg.matrix) doc["mismatches"] = mismatches;
    doc["passed"] = ok;
    const fs::path dir(cfg.output);
    write_text(dir / "report.json", doc.dump(2) + "\n");
    write_text(dir / "reports.csv", reports_csv(reports));
    if (!timings.empty()) {
      std::string csv(kTimingsHeader);
      for (const auto& [name, s] : timings) csv += timings_csv(name, s);
      write_text(dir / "timings.csv", csv);
    }
    write_manifest(cfg);
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_distribution(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.trials < 1000) throw UsageError("--trials must be at least 1000");
  const Input in = load_input(cfg, err);
  std::vector<DeltaDistribution> ds;
  for (const auto& aug : make_augmenters(cfg, false)) {
    ds.push_back(delta_distribution(aug, in.set, in.label, {cfg.trials, cfg.seed, cfg.threads}));
  }
  const std::string summary = distribution_summary_csv(ds);
  out << summary;
  if (!cfg.output.empty()) {
    const fs::path dir(cfg.output);
    for (const auto& d : ds) write_text(dir / ("deltas_" + file_safe(d.method) + ".csv"), distribution_csv(d));
    write_text(dir / "summary.csv", summary);
    write_manifest(cfg);
  }
  return kExitOk;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const ScalingConfig sc = scaling_config(cfg, kDefaultBenchSizes, GraphFamily::er);
  std::string timings(kTimingsHeader);
  std::string fits = "method,family,slope,r2,max_doubling_ratio,verdict\n";
  for (const auto& aug : make_augmenters(cfg, false)) {
    const ScalingReport s = check_p5(aug, sc);
    for (const auto& row : s.rows) {
      out << aug.name() << "  nodes=" << row.nodes << "  edges=" << row.edges << "  median=" << fmt(row.seconds, "%.3e")
          << " s\n";
    }
    out << aug.name() << "  slope=" << fmt(s.fit.slope, "%.3f") << "  R^2=" << fmt(s.fit.r2, "%.3f")
        << "  max per-doubling ratio=" << fmt(s.max_doubling_ratio, "%.2f") << "  " << to_string(s.report.verdict)
        << "\n";
    timings += timings_csv(aug.name(), s);
    fits += aug.name() + "," + std::string(to_string(sc.family)) + "," + fmt(s.fit.slope) + "," + fmt(s.fit.r2) +
            "," + fmt(s.max_doubling_ratio) + "," + std::string(to_string(s.report.verdict)) + "\n";
  }
  if (!cfg.output.empty()) {
    write_text(fs::path(cfg.output) / "timings.csv", timings);
    write_text(fs::path(cfg.output) / "fits.csv", fits);
    write_manifest(cfg);
  }
  return kExitOk;
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  }
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId a = 0; a < n; ++a) edges.emplace_back(a, static_cast<NodeId>((a + 1) % n));
  return Graph::from_edges(n, edges);
}

int cmd_oracles(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Graph k3 = complete_graph(3), k4 = complete_graph(4), k5 = complete_graph(5), c6 = cycle_graph(6);
  const std::vector<std::pair<std::string, OracleReport>> rows = {
      {"K5", oracle_split_triangles(k5, 0, cfg.trials, cfg.seed)},
      {"K3", oracle_split_triangles(k3, 0, cfg.trials, cfg.seed)},
      {"C6", oracle_split_triangles(c6, 0, cfg.trials, cfg.seed)},
      {"K4", oracle_adjust_triangles(k4, 0, 1, cfg.trials, cfg.seed)},
      {"C6", oracle_adjust_triangles(c6, 0, 1, cfg.trials, cfg.seed)},
      {"K4", oracle_merge_edges(k4, cfg.trials, cfg.seed)},
      {"K3", oracle_merge_edges(k3, cfg.trials, cfg.seed)},
      {"C6", oracle_merge_edges(c6, cfg.trials, cfg.seed)},
  };
  bool ok = true;
  std::string csv = "oracle,graph,predicted,mean,se,trials,verdict\n";
  for (const auto& [graph, r] : rows) {
    ok = ok && r.pass;
    out << r.name << " on " << graph << ": predicted " << fmt(r.predicted) << ", mean " << fmt(r.observed.mean)
        << " (se " << fmt(r.observed.se) << ")  " << (r.pass ? "PASS" : "FAIL") << "\n";
    csv += r.name + "," + graph + "," + fmt(r.predicted, "%.10g") + "," + fmt(r.observed.mean, "%.10g") + "," +
           fmt(r.observed.se, "%.10g") + "," + std::to_string(r.observed.n) + "," + (r.pass ? "PASS" : "FAIL") + "\n";
  }
  if (!cfg.output.empty()) {
    write_text(fs::path(cfg.output) / "oracles.csv", csv);
    write_manifest(cfg);
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_folds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.output.empty()) throw UsageError("folds needs --output");
  const Input in = load_input(cfg, err);
  Rng rng = make_stream(cfg.seed, 0);
  const FoldSplit split = make_folds(in.set, cfg.folds, rng);
  std::string text;
  for (std::size_t f : split.fold) text += std::to_string(f) + "\n";
  write_text(fs::path(cfg.output) / (in.label + "_folds.txt"), text);
  write_manifest(cfg);
  out << "wrote " << split.k << " folds for " << split.fold.size() << " graphs\n";
  return kExitOk;
}

void add_dataset_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--input", cfg.input, "TU dataset directory");
  sub->add_option("--name", cfg.name, "dataset name (file prefix)");
  sub->add_option("--synthetic", cfg.synthetic, "generated corpus instead of files: mixed or clustered");
  sub->add_option("--corpus-size", cfg.corpus_size, "graphs in the generated corpus")->capture_default_str();
  sub->add_option("--corpus-seed", cfg.corpus_seed, "seed of the generated corpus")->capture_default_str();
}

void add_method_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--method", cfg.methods, "augmenter name, or name:variant; repeatable or comma separated")
      ->delimiter(',');
  sub->add_option("--variant", cfg.variant, "nodesam: full|base|split-only|merge-only; submix: full|base")
      ->capture_default_str();
  sub->add_option("--p", cfg.p, "SubMix ratio bound")->capture_default_str();
  sub->add_option("--rho", cfg.rho, "GraphCrop keep ratio")->capture_default_str();
  sub->add_option("--repeat", cfg.repeat, "single-graph baseline applications per sample")->capture_default_str();
}

void add_scaling_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--sizes", cfg.sizes, "comma-separated edge counts, e.g. 1e4,3e4,1e5");
  sub->add_option("--family", cfg.family, "er or communities");
  sub->add_option("--degree", cfg.degree, "average degree of ER graphs")->capture_default_str();
  sub->add_option("--repeats", cfg.repeats, "timed batches per size (median taken)")->capture_default_str();
}

}  // namespace

std::string manifest_json(const RunConfig& cfg) {
  json doc = {{"manifest_version", kManifestVersion}, {"config", cfg}};
  return doc.dump(2) + "\n";
}

RunConfig manifest_from_json(const std::string& text) {
  const json doc = json::parse(text);
  if (doc.value("manifest_version", 0) != kManifestVersion) throw UsageError("unsupported manifest version");
  return doc.at("config").get<RunConfig>();
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "stats") return cmd_stats(cfg, out, err);
    if (cfg.command == "augment") return cmd_augment(cfg, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    if (cfg.command == "distribution") return cmd_distribution(cfg, out, err);
    if (cfg.command == "bench") return cmd_bench(cfg, out, err);
    if (cfg.command == "oracles") return cmd_oracles(cfg, out, err);
    if (cfg.command == "folds") return cmd_folds(cfg, out, err);
    err << "error: unknown command '" << cfg.command << "'\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string manifest_path;
  std::string replay_output;

  CLI::App app{"Graph augmentation toolkit: NodeSam, SubMix, baselines and property checks", "graphaug"};
  app.require_subcommand(1);

  auto* stats_cmd = app.add_subcommand("stats", "dataset summary table");
  stats_cmd->add_option("--input", cfg.input, "TU dataset directory")->required();
  stats_cmd->add_option("--name", cfg.name, "dataset name (file prefix)")->required();
  stats_cmd->add_option("--output", cfg.output, "also write <name>_stats.json/.txt here");

  auto* augment_cmd = app.add_subcommand("augment", "write augmented copies of a dataset");
  add_dataset_options(augment_cmd, cfg);
  add_method_options(augment_cmd, cfg);
  augment_cmd->add_option("--count", cfg.count, "samples per source graph")->capture_default_str();
  augment_cmd->add_option("--seed", cfg.seed, "master seed")->required();
  augment_cmd->add_option("--output", cfg.output, "output directory")->required();

  auto* verify_cmd = app.add_subcommand("verify", "statistical property checks");
  add_dataset_options(verify_cmd, cfg);
  add_method_options(verify_cmd, cfg);
  add_scaling_options(verify_cmd, cfg);
  verify_cmd->add_option("--property", cfg.properties, "p1..p5; repeatable or comma separated")->delimiter(',');
  verify_cmd->add_flag("--all-properties", cfg.all_properties, "check p1..p5");
  verify_cmd->add_flag("--matrix", cfg.matrix, "all properties, compared with the reference verdicts");
  verify_cmd->add_option("--trials", cfg.trials, "augmentations per check")->capture_default_str();
  verify_cmd->add_option("--seed", cfg.seed, "master seed")->required();
  verify_cmd->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
  verify_cmd->add_option("--output", cfg.output, "write report.json, reports.csv, timings.csv");

  auto* dist_cmd = app.add_subcommand("distribution", "edge-count delta distributions");
  add_dataset_options(dist_cmd, cfg);
  add_method_options(dist_cmd, cfg);
  dist_cmd->add_option("--trials", cfg.trials, "augmentations per method")->capture_default_str();
  dist_cmd->add_option("--seed", cfg.seed, "master seed")->required();
  dist_cmd->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
  dist_cmd->add_option("--output", cfg.output, "write deltas_<method>.csv and summary.csv");

  auto* bench_cmd = app.add_subcommand("bench", "runtime scaling on generated graphs");
  add_method_options(bench_cmd, cfg);
  add_scaling_options(bench_cmd, cfg);
  bench_cmd->add_option("--seed", cfg.seed, "master seed")->required();
  bench_cmd->add_option("--output", cfg.output, "write timings.csv and fits.csv");

  auto* oracle_cmd = app.add_subcommand("oracles", "Monte Carlo checks of the split, adjust and merge expectations");
  oracle_cmd->add_option("--trials", cfg.trials, "trials per oracle")->capture_default_str();
  oracle_cmd->add_option("--seed", cfg.seed, "master seed")->required();
  oracle_cmd->add_option("--output", cfg.output, "write oracles.csv");

  auto* folds_cmd = app.add_subcommand("folds", "stratified cross-validation folds");
  add_dataset_options(folds_cmd, cfg);
  folds_cmd->add_option("--folds", cfg.folds, "number of folds")->capture_default_str();
  folds_cmd->add_option("--seed", cfg.seed, "master seed")->required();
  folds_cmd->add_option("--output", cfg.output, "output directory")->required();

  auto* replay_cmd = app.add_subcommand("replay", "re-run the command recorded in a manifest.json");
  replay_cmd->add_option("--manifest", manifest_path, "manifest file")->required();
  replay_cmd->add_option("--output", replay_output, "override the recorded output directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (replay_cmd->parsed()) {
    try {
      std::ifstream in(manifest_path, std::ios::binary);
      if (!in) throw UsageError("cannot read " + manifest_path);
      std::ostringstream ss;
      ss << in.rdbuf();
      RunConfig replayed = manifest_from_json(ss.str());
      if (!replay_output.empty()) replayed.output = replay_output;
      return execute(replayed, out, err);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return execute(cfg, out, err);
}

}  // namespace graphaug::cli
