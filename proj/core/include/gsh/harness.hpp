#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gsh/estimators.hpp"
#include "gsh/oracle.hpp"
#include "gsh/variance.hpp"

namespace gsh {

extern const char* const kVersion;

enum class OutputFormat : std::uint8_t { json, csv };

NLOHMANN_JSON_SERIALIZE_ENUM(Statistic, {
                                            {Statistic::edges, "N_K"},
                                            {Statistic::triangles, "N_T"},
                                            {Statistic::wedges, "N_Lambda"},
                                            {Statistic::clustering, "alpha"},
                                            {Statistic::nodes, "N_V"},
                                        })

NLOHMANN_JSON_SERIALIZE_ENUM(GraphMode, {
                                            {GraphMode::undirected, "undirected"},
                                            {GraphMode::directed, "directed"},
                                        })

NLOHMANN_JSON_SERIALIZE_ENUM(OutputFormat, {
                                               {OutputFormat::json, "json"},
                                               {OutputFormat::csv, "csv"},
                                           })

struct ExperimentConfig {
  std::string input;
  GraphMode mode = GraphMode::undirected;
  std::vector<double> p_grid{1.0};
  std::vector<double> q_grid{1.0};
  bool triangle_closure = true;
  std::uint32_t runs = 100;
  std::uint64_t base_seed = 0;
  OutputFormat format = OutputFormat::json;
  std::vector<Statistic> statistics{Statistic::edges, Statistic::triangles,
                                    Statistic::wedges, Statistic::clustering};
  unsigned threads = 1;

  void validate() const;  // throws ConfigError

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct PhaseTimes {
  double sample_s = 0.0;
  double estimate_s = 0.0;
  double variance_s = 0.0;

  friend bool operator==(const PhaseTimes&, const PhaseTimes&) = default;
};

struct RunResult {
  double p = 1.0;
  double q = 1.0;
  std::uint32_t p_index = 0;
  std::uint32_t q_index = 0;
  std::uint32_t run_index = 0;
  std::uint64_t seed = 0;  // derived run seed
  std::uint64_t sample_size = 0;
  std::vector<EstimateReport> reports;
  PhaseTimes times;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

struct StatAggregate {
  Statistic statistic = Statistic::edges;
  double mean_estimate = 0.0;
  double rel_error = 0.0;  // |mean - actual| / actual
  double coverage = 0.0;   // fraction of runs whose CI contains the actual
  bool has_coverage = false;
  std::uint32_t defined_runs = 0;

  friend bool operator==(const StatAggregate&, const StatAggregate&) = default;
};

struct AggregateResult {
  double p = 1.0;
  double q = 1.0;
  double mean_sampling_fraction = 0.0;
  std::vector<StatAggregate> stats;

  friend bool operator==(const AggregateResult&, const AggregateResult&) = default;
};

// Point estimates, variance estimates and 95% bounds for the requested
// statistics on one finalized sample. Reports come back in a fixed canonical
// order (N_K, N_T, N_Lambda, alpha, N_V filtered to the request).
std::vector<EstimateReport> estimate_all(const SampleState& state,
                                         const std::vector<Statistic>& statistics,
                                         unsigned threads = 1,
                                         PhaseTimes* times = nullptr);

// Grid sweep: for every (p, q) cell and run index, re-permute the stream
// with a seed derived from (base_seed, p index, q index, run index), sample,
// and estimate. Runs are independent and may execute on cfg.threads workers;
// results always come back in deterministic (p, q, run) order.
std::vector<RunResult> run_experiment(const EdgeStream& stream,
                                      const ExperimentConfig& cfg);

// Per-cell means, relative errors, coverage and mean sampling fraction.
std::vector<AggregateResult> aggregate(const std::vector<RunResult>& results,
                                       const ExactStats& exact);

// Exact statistics with a sidecar manifest cache (`<input>.exact.json`)
// keyed by a content hash of the input file, since exact triangle counting
// dominates runtime on large inputs. Cache write failures are non-fatal.
ExactStats exact_stats_cached(const std::string& input_path,
                              const EdgeStream& stream);

std::uint64_t fnv1a64_file(const std::string& path);

// --- emission ---------------------------------------------------------

// Wide CSV, one row per run; per-statistic estimate/variance/bound columns.
std::string run_results_csv(const std::vector<RunResult>& results);

// Long CSV, one row per (cell, statistic):
// p,q,stat,mean,rel_err,coverage,frac
std::string aggregates_csv(const std::vector<AggregateResult>& aggregates);

// Full experiment document: version, timestamp, config, exact stats,
// per-run results and aggregates. The timestamp is the only
// non-deterministic field.
nlohmann::json experiment_json(const ExperimentConfig& cfg,
                               const ExactStats* exact,
                               const std::vector<RunResult>& runs,
                               const std::vector<AggregateResult>& aggregates);

// Shortest round-trip decimal form of a double (full precision).
std::string format_double(double v);

void to_json(nlohmann::json& j, const EstimateReport& r);
void from_json(const nlohmann::json& j, EstimateReport& r);
void to_json(nlohmann::json& j, const PhaseTimes& t);
void from_json(const nlohmann::json& j, PhaseTimes& t);
void to_json(nlohmann::json& j, const RunResult& r);
void from_json(const nlohmann::json& j, RunResult& r);
void to_json(nlohmann::json& j, const StatAggregate& s);
void from_json(const nlohmann::json& j, StatAggregate& s);
void to_json(nlohmann::json& j, const AggregateResult& a);
void from_json(const nlohmann::json& j, AggregateResult& a);
void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);
void to_json(nlohmann::json& j, const ExactStats& s);
void from_json(const nlohmann::json& j, ExactStats& s);

}  // namespace gsh
