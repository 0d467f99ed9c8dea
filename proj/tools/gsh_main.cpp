// gsh: single-pass graph sample-and-hold sampling with Horvitz-Thompson
// estimation. Subcommands: sample, exact, experiment, enumerate.
// Exit codes: 0 success, 1 configuration error, 2 I/O error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gsh/errors.hpp"
#include "gsh/harness.hpp"
#include "gsh/rng.hpp"

using namespace gsh;

namespace {

struct CommonOpts {
  std::string input;
  bool directed = false;
  std::string format = "json";
  std::string out;
  unsigned threads = 1;
  std::vector<std::string> stats;

  GraphMode mode() const {
    return directed ? GraphMode::directed : GraphMode::undirected;
  }
  OutputFormat output_format() const {
    if (format == "json") return OutputFormat::json;
    if (format == "csv") return OutputFormat::csv;
    throw ConfigError("unknown format: " + format);
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_stats) {
  cmd->add_option("--input", opts.input, "edge-list file")->required();
  cmd->add_flag("--directed", opts.directed, "treat the stream as directed");
  cmd->add_option("--format", opts.format, "output format {json,csv}")
      ->default_val("json");
  cmd->add_option("--out", opts.out, "write output to this path (default stdout)");
  cmd->add_option("--threads", opts.threads, "worker threads")->default_val(1);
  if (with_stats) {
    cmd->add_option("--stats", opts.stats,
                    "statistics subset of {N_K,N_T,N_Lambda,alpha,N_V}")
        ->delimiter(',');
  }
}

std::vector<Statistic> parse_stats(const CommonOpts& opts) {
  if (opts.stats.empty()) {
    if (opts.directed) return {Statistic::edges, Statistic::nodes};
    return {Statistic::edges, Statistic::triangles, Statistic::wedges,
            Statistic::clustering};
  }
  std::vector<Statistic> out;
  for (const std::string& name : opts.stats) {
    const auto s = statistic_from_string(name);
    if (!s) throw ConfigError("unknown statistic: " + name);
    out.push_back(*s);
  }
  if (opts.directed) {
    for (Statistic s : out) {
      if (s != Statistic::edges && s != Statistic::nodes) {
        throw ConfigError(
            "directed streams support only N_K and N_V estimation");
      }
    }
  }
  return out;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot write output file: " + out_path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw IoError("failed writing output file: " + out_path);
}

nlohmann::json ingest_json(const IngestReport& rep) {
  return {{"data_lines", rep.data_lines},
          {"dropped_self_loops", rep.dropped_self_loops},
          {"dropped_duplicates", rep.dropped_duplicates}};
}

int cmd_sample(const CommonOpts& opts, double p, double q, bool closure,
               std::uint64_t seed) {
  IngestReport rep;
  const EdgeStream stream = ingest_edge_list_file(opts.input, opts.mode(), &rep);
  const auto statistics = parse_stats(opts);

  RunResult rr;
  rr.p = p;
  rr.q = q;
  rr.seed = derive_seed(seed, 0, 0, 0);
  const EdgeStream permuted = permute(stream, derive_seed(rr.seed, 1));
  const SamplerConfig cfg{p, q, closure, derive_seed(rr.seed, 2)};
  const auto t0 = std::chrono::steady_clock::now();
  const SampleState state = run(permuted, cfg);
  rr.times.sample_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rr.sample_size = state.size();
  rr.reports = estimate_all(state, statistics, opts.threads, &rr.times);

  if (opts.output_format() == OutputFormat::csv) {
    write_output(run_results_csv({rr}), opts.out);
  } else {
    nlohmann::json doc;
    doc["version"] = kVersion;
    doc["input"] = opts.input;
    doc["mode"] = opts.mode();
    doc["triangle_closure"] = closure;
    doc["ingest"] = ingest_json(rep);
    doc["sampling_fraction"] = sampling_fraction(state, stream);
    doc["run"] = rr;
    write_output(doc.dump(2), opts.out);
  }
  return 0;
}

int cmd_exact(const CommonOpts& opts) {
  IngestReport rep;
  const EdgeStream stream = ingest_edge_list_file(opts.input, opts.mode(), &rep);
  const ExactStats stats = exact_stats_cached(opts.input, stream);

  if (opts.output_format() == OutputFormat::csv) {
    std::string csv = "nodes,edges,triangles,wedges,alpha,density\n";
    csv += std::to_string(stats.nodes) + ',' + std::to_string(stats.edges) + ',' +
           std::to_string(stats.triangles) + ',' + std::to_string(stats.wedges) +
           ',' + (stats.alpha_defined ? format_double(stats.alpha) : "") + ',' +
           format_double(stats.density) + '\n';
    write_output(csv, opts.out);
  } else {
    nlohmann::json doc;
    doc["version"] = kVersion;
    doc["input"] = opts.input;
    doc["ingest"] = ingest_json(rep);
    doc["stats"] = stats;
    write_output(doc.dump(2), opts.out);
  }
  return 0;
}

int cmd_experiment(const CommonOpts& opts, ExperimentConfig cfg, bool per_run) {
  cfg.input = opts.input;
  cfg.mode = opts.mode();
  cfg.format = opts.output_format();
  cfg.threads = opts.threads;
  cfg.statistics = parse_stats(opts);
  cfg.validate();

  const EdgeStream stream = ingest_edge_list_file(opts.input, cfg.mode);
  const ExactStats exact = exact_stats_cached(opts.input, stream);
  const auto results = run_experiment(stream, cfg);
  const auto aggs = aggregate(results, exact);

  if (cfg.format == OutputFormat::csv) {
    write_output(per_run ? run_results_csv(results) : aggregates_csv(aggs),
                 opts.out);
  } else {
    write_output(experiment_json(cfg, &exact, results, aggs).dump(2), opts.out);
  }
  return 0;
}

int cmd_enumerate(const CommonOpts& opts, double p, double q, bool closure) {
  const EdgeStream stream = ingest_edge_list_file(opts.input, opts.mode());
  const OutcomeTree tree = enumerate_outcomes(stream, SamplerConfig{p, q, closure, 0});

  // Per-outcome edge weights (1/probability if held) and node degree
  // estimates (sum of incident weights).
  struct Row {
    std::string selection;
    double probability;
    std::vector<std::string> classes;
    std::vector<double> weights;
    std::map<NodeId, double> degrees;
  };
  std::vector<Row> rows;
  for (const Outcome& o : tree.outcomes) {
    Row row;
    row.probability = o.probability;
    const SampleState st = materialize(tree, o);
    for (std::size_t i = 0; i < stream.size(); ++i) {
      row.selection += ((o.mask >> i) & 1u) ? '1' : '0';
      row.weights.push_back(0.0);
    }
    for (const SampledEdge& se : st.held()) {
      const double w = 1.0 / st.config().numeric(se.prob);
      row.weights[se.arrival_index] = w;
      row.classes.push_back(to_string(se.prob));
      row.degrees[se.edge.a] += w;
      row.degrees[se.edge.b] += w;
    }
    rows.push_back(std::move(row));
  }

  if (opts.output_format() == OutputFormat::csv) {
    std::string csv = "selection,probability,classes";
    for (std::size_t i = 0; i < stream.size(); ++i) {
      csv += ",w" + std::to_string(i);
    }
    csv += '\n';
    for (const Row& row : rows) {
      csv += row.selection + ',' + format_double(row.probability) + ',';
      for (std::size_t i = 0; i < row.classes.size(); ++i) {
        if (i > 0) csv += ' ';
        csv += row.classes[i];
      }
      for (double w : row.weights) csv += ',' + format_double(w);
      csv += '\n';
    }
    write_output(csv, opts.out);
  } else {
    nlohmann::json doc;
    doc["version"] = kVersion;
    doc["input"] = opts.input;
    doc["p"] = p;
    doc["q"] = q;
    doc["triangle_closure"] = closure;
    auto& edges = doc["edges"] = nlohmann::json::array();
    for (const Edge& e : stream.edges) edges.push_back({e.a, e.b});
    auto& outcomes = doc["outcomes"] = nlohmann::json::array();
    for (const Row& row : rows) {
      nlohmann::json jo;
      jo["selection"] = row.selection;
      jo["probability"] = row.probability;
      jo["classes"] = row.classes;
      jo["weights"] = row.weights;
      nlohmann::json degrees;
      for (const auto& [node, d] : row.degrees) {
        degrees[std::to_string(node)] = d;
      }
      jo["degree_estimates"] = degrees;
      outcomes.push_back(std::move(jo));
    }
    write_output(doc.dump(2), opts.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-pass graph sample-and-hold sampling and estimation"};
  app.require_subcommand(1);

  CommonOpts sample_opts, exact_opts, exp_opts, enum_opts;

  auto* sample = app.add_subcommand("sample", "one sampling run with estimates");
  double s_p = 0.01, s_q = 0.01;
  bool s_closure = true;
  std::uint64_t s_seed = 0;
  add_common(sample, sample_opts, true);
  sample->add_option("--p", s_p, "fresh-edge selection probability")
      ->default_val(0.01);
  sample->add_option("--q", s_q, "adjacent-edge selection probability")
      ->default_val(0.01);
  sample->add_option("--triangle-closure", s_closure,
                     "select triangle-closing edges with probability 1")
      ->default_val(true);
  sample->add_option("--seed", s_seed, "base seed")->default_val(0);

  auto* exact = app.add_subcommand("exact", "exact full-graph statistics");
  add_common(exact, exact_opts, false);

  auto* experiment =
      app.add_subcommand("experiment", "repeated-run (p,q) grid sweep");
  ExperimentConfig exp_cfg;
  bool per_run = false;
  add_common(experiment, exp_opts, true);
  experiment->add_option("--p", exp_cfg.p_grid, "p grid values")
      ->delimiter(',')
      ->default_val(std::vector<double>{0.01});
  experiment->add_option("--q", exp_cfg.q_grid, "q grid values")
      ->delimiter(',')
      ->default_val(std::vector<double>{0.01});
  experiment
      ->add_option("--triangle-closure", exp_cfg.triangle_closure,
                   "select triangle-closing edges with probability 1")
      ->default_val(true);
  experiment->add_option("--runs", exp_cfg.runs, "independent runs per cell")
      ->default_val(100);
  experiment->add_option("--seed", exp_cfg.base_seed, "base seed")->default_val(0);
  experiment->add_flag("--per-run", per_run,
                       "emit per-run rows instead of aggregates (csv)");

  auto* enumerate_cmd = app.add_subcommand(
      "enumerate", "exhaustive outcome tree for a tiny stream");
  double e_p = 0.5, e_q = 1.0;
  bool e_closure = true;
  add_common(enumerate_cmd, enum_opts, false);
  enumerate_cmd->add_option("--p", e_p, "fresh-edge selection probability")
      ->default_val(0.5);
  enumerate_cmd->add_option("--q", e_q, "adjacent-edge selection probability")
      ->default_val(1.0);
  enumerate_cmd
      ->add_option("--triangle-closure", e_closure,
                   "select triangle-closing edges with probability 1")
      ->default_val(true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (sample->parsed()) return cmd_sample(sample_opts, s_p, s_q, s_closure, s_seed);
    if (exact->parsed()) return cmd_exact(exact_opts);
    if (experiment->parsed()) return cmd_experiment(exp_opts, exp_cfg, per_run);
    if (enumerate_cmd->parsed()) return cmd_enumerate(enum_opts, e_p, e_q, e_closure);
  } catch (const IoError& e) {  // covers ParseError for malformed inputs
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
