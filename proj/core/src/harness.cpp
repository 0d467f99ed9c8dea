#include "gsh/harness.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "gsh/errors.hpp"
#include "gsh/rng.hpp"

namespace gsh {

#ifdef GSH_VERSION
const char* const kVersion = GSH_VERSION;
#else
const char* const kVersion = "0.0.0";
#endif

namespace {

constexpr Statistic kCanonicalOrder[] = {Statistic::edges, Statistic::triangles,
                                         Statistic::wedges, Statistic::clustering,
                                         Statistic::nodes};

bool contains(const std::vector<Statistic>& v, Statistic s) {
  for (Statistic x : v) {
    if (x == s) return true;
  }
  return false;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (p_grid.empty() || q_grid.empty()) {
    throw ConfigError("p and q grids must be non-empty");
  }
  for (double v : p_grid) {
    SamplerConfig probe{v, 1.0, triangle_closure, 0};
    probe.validate();
  }
  for (double v : q_grid) {
    SamplerConfig probe{1.0, v, triangle_closure, 0};
    probe.validate();
  }
  if (statistics.empty()) throw ConfigError("statistics list must be non-empty");
  if (mode == GraphMode::directed) {
    throw ConfigError(
        "experiments require an undirected stream; directed sampling is "
        "available through single runs restricted to N_K and N_V");
  }
}

std::vector<EstimateReport> estimate_all(const SampleState& state,
                                         const std::vector<Statistic>& statistics,
                                         unsigned threads, PhaseTimes* times) {
  const bool want_alpha = contains(statistics, Statistic::clustering);
  const bool need_tri = want_alpha || contains(statistics, Statistic::triangles);
  const bool need_wedge = want_alpha || contains(statistics, Statistic::wedges);
  const bool need_edge = contains(statistics, Statistic::edges);

  const auto t_est = std::chrono::steady_clock::now();
  SubgraphFamily edges_fam, tri_fam, wedge_fam;
  double nk = 0.0, nt = 0.0, nl = 0.0;
  if (need_edge) {
    edges_fam = enumerate(state, SubgraphKind::edge);
    nk = subgraph_sum(edges_fam, threads);
  }
  if (need_tri) {
    tri_fam = enumerate(state, SubgraphKind::triangle);
    nt = subgraph_sum(tri_fam, threads);
  }
  if (need_wedge) {
    wedge_fam = enumerate(state, SubgraphKind::wedge);
    nl = subgraph_sum(wedge_fam, threads);
  }
  double nv = 0.0;
  if (contains(statistics, Statistic::nodes)) nv = node_estimate(state);
  const double estimate_s = seconds_since(t_est);

  const auto t_var = std::chrono::steady_clock::now();
  double var_k = 0.0, var_t = 0.0, var_l = 0.0, cov_tl = 0.0;
  if (need_edge) var_k = var_single(edges_fam);
  if (need_tri) var_t = var_family(tri_fam, state, threads);
  if (need_wedge) var_l = var_family(wedge_fam, state, threads);
  if (want_alpha) cov_tl = cov_triangle_wedge(tri_fam, wedge_fam, state, threads);
  const double variance_s = seconds_since(t_var);

  if (times != nullptr) {
    times->estimate_s = estimate_s;
    times->variance_s = variance_s;
  }

  std::vector<EstimateReport> reports;
  for (Statistic s : kCanonicalOrder) {
    if (!contains(statistics, s)) continue;
    EstimateReport r;
    r.statistic = s;
    switch (s) {
      case Statistic::edges: {
        r.estimate = nk;
        r.variance = var_k;
        break;
      }
      case Statistic::triangles: {
        r.estimate = nt;
        r.variance = var_t;
        break;
      }
      case Statistic::wedges: {
        r.estimate = nl;
        r.variance = var_l;
        break;
      }
      case Statistic::clustering: {
        const auto alpha = clustering_estimate(nt, nl);
        if (!alpha) {
          r.defined = false;
          r.has_variance = false;
          reports.push_back(r);
          continue;
        }
        r.estimate = *alpha;
        const ClusteringVariance cv = var_clustering(nt, nl, var_t, var_l, cov_tl);
        r.variance = cv.value;
        r.variance_clamped = cv.clamped;
        break;
      }
      case Statistic::nodes: {
        r.estimate = nv;
        r.has_variance = false;  // no variance estimator exists for N_V
        reports.push_back(r);
        continue;
      }
    }
    const Interval ci = confidence_interval(r.estimate, r.variance);
    r.lb = ci.lb;
    r.ub = ci.ub;
    reports.push_back(r);
  }
  return reports;
}

std::vector<RunResult> run_experiment(const EdgeStream& stream,
                                      const ExperimentConfig& cfg) {
  cfg.validate();
  if (stream.empty()) throw ConfigError("experiment requires a non-empty stream");

  struct Job {
    std::uint32_t pi, qi, run;
  };
  std::vector<Job> jobs;
  jobs.reserve(cfg.p_grid.size() * cfg.q_grid.size() * cfg.runs);
  for (std::uint32_t pi = 0; pi < cfg.p_grid.size(); ++pi) {
    for (std::uint32_t qi = 0; qi < cfg.q_grid.size(); ++qi) {
      for (std::uint32_t run = 0; run < cfg.runs; ++run) {
        jobs.push_back({pi, qi, run});
      }
    }
  }

  std::vector<RunResult> results(jobs.size());
  // Runs are independent given their derived seeds, so any scheduling order
  // produces the same slot contents. Parallelism is spent across runs;
  // within a run estimation stays single-threaded.
  const unsigned inner_threads = 1;
  auto do_job = [&](std::size_t slot) {
    const Job& job = jobs[slot];
    RunResult rr;
    rr.p = cfg.p_grid[job.pi];
    rr.q = cfg.q_grid[job.qi];
    rr.p_index = job.pi;
    rr.q_index = job.qi;
    rr.run_index = job.run;
    rr.seed = derive_seed(cfg.base_seed, job.pi, job.qi, job.run);

    const EdgeStream permuted = permute(stream, derive_seed(rr.seed, 1));
    SamplerConfig sampler_cfg{rr.p, rr.q, cfg.triangle_closure,
                              derive_seed(rr.seed, 2)};
    const auto t0 = std::chrono::steady_clock::now();
    const SampleState state = run(permuted, sampler_cfg);
    rr.times.sample_s = seconds_since(t0);
    rr.sample_size = state.size();
    rr.reports = estimate_all(state, cfg.statistics, inner_threads, &rr.times);
    results[slot] = std::move(rr);
  };

  if (cfg.threads <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) do_job(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < cfg.threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < jobs.size();
             i = next.fetch_add(1)) {
          do_job(i);
        }
      });
    }
    for (auto& w : workers) w.join();
  }
  return results;
}

namespace {

double actual_for(const ExactStats& exact, Statistic s) {
  switch (s) {
    case Statistic::edges: return static_cast<double>(exact.edges);
    case Statistic::triangles: return static_cast<double>(exact.triangles);
    case Statistic::wedges: return static_cast<double>(exact.wedges);
    case Statistic::clustering: return exact.alpha;
    default: return static_cast<double>(exact.nodes);
  }
}

}  // namespace

std::vector<AggregateResult> aggregate(const std::vector<RunResult>& results,
                                       const ExactStats& exact) {
  std::vector<AggregateResult> out;
  if (results.empty()) return out;

  // Results arrive ordered by (p index, q index, run); group accordingly.
  std::size_t i = 0;
  while (i < results.size()) {
    const std::uint32_t pi = results[i].p_index;
    const std::uint32_t qi = results[i].q_index;
    std::size_t j = i;
    while (j < results.size() && results[j].p_index == pi &&
           results[j].q_index == qi) {
      ++j;
    }

    AggregateResult agg;
    agg.p = results[i].p;
    agg.q = results[i].q;
    double frac_sum = 0.0;
    for (std::size_t r = i; r < j; ++r) {
      frac_sum += static_cast<double>(results[r].sample_size) /
                  static_cast<double>(exact.edges);
    }
    agg.mean_sampling_fraction = frac_sum / static_cast<double>(j - i);

    for (Statistic s : kCanonicalOrder) {
      StatAggregate sa;
      sa.statistic = s;
      double sum = 0.0;
      std::uint32_t defined = 0;
      std::uint32_t covered = 0;
      bool present = false;
      bool any_ci = false;
      const double actual = actual_for(exact, s);
      for (std::size_t r = i; r < j; ++r) {
        for (const EstimateReport& rep : results[r].reports) {
          if (rep.statistic != s) continue;
          present = true;
          if (!rep.defined) continue;
          ++defined;
          sum += rep.estimate;
          if (rep.has_variance) {
            any_ci = true;
            if (rep.lb <= actual && actual <= rep.ub) ++covered;
          }
        }
      }
      if (!present) continue;
      sa.defined_runs = defined;
      sa.mean_estimate = defined > 0 ? sum / defined : 0.0;
      sa.rel_error = actual != 0.0
                         ? std::abs(sa.mean_estimate - actual) / std::abs(actual)
                         : std::abs(sa.mean_estimate);
      if (any_ci && defined > 0) {
        sa.coverage = static_cast<double>(covered) / defined;
        sa.has_coverage = true;
      }
      agg.stats.push_back(sa);
    }
    out.push_back(std::move(agg));
    i = j;
  }
  return out;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file: " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

ExactStats exact_stats_cached(const std::string& input_path,
                              const EdgeStream& stream) {
  const std::string manifest_path = input_path + ".exact.json";
  const std::uint64_t hash = fnv1a64_file(input_path);

  {
    std::ifstream in(manifest_path);
    if (in) {
      try {
        nlohmann::json j;
        in >> j;
        if (j.at("content_hash").get<std::uint64_t>() == hash &&
            j.at("mode").get<std::string>() ==
                (stream.mode == GraphMode::directed ? "directed" : "undirected")) {
          return j.at("stats").get<ExactStats>();
        }
      } catch (const nlohmann::json::exception&) {
        // stale or corrupt manifest; fall through and recompute
      }
    }
  }

  const ExactStats stats = exact_count(stream);
  nlohmann::json j;
  j["content_hash"] = hash;
  j["mode"] = stream.mode == GraphMode::directed ? "directed" : "undirected";
  j["stats"] = stats;
  std::ofstream out(manifest_path);
  if (out) {
    out << j.dump(2) << '\n';
  } else {
    std::cerr << "warning: could not write exact-stats manifest "
              << manifest_path << '\n';
  }
  return stats;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string run_results_csv(const std::vector<RunResult>& results) {
  std::ostringstream out;
  std::vector<Statistic> stats;
  if (!results.empty()) {
    for (const EstimateReport& r : results.front().reports) {
      stats.push_back(r.statistic);
    }
  }
  out << "p,q,run,seed,sample_size,sample_s,estimate_s,variance_s";
  for (Statistic s : stats) {
    const std::string n = to_string(s);
    out << ',' << n << "_est," << n << "_var," << n << "_lb," << n << "_ub";
  }
  out << '\n';
  for (const RunResult& rr : results) {
    out << format_double(rr.p) << ',' << format_double(rr.q) << ','
        << rr.run_index << ',' << rr.seed << ',' << rr.sample_size << ','
        << format_double(rr.times.sample_s) << ','
        << format_double(rr.times.estimate_s) << ','
        << format_double(rr.times.variance_s);
    for (const EstimateReport& rep : rr.reports) {
      if (!rep.defined) {
        out << ",,,,";
        continue;
      }
      out << ',' << format_double(rep.estimate);
      if (rep.has_variance) {
        out << ',' << format_double(rep.variance) << ','
            << format_double(rep.lb) << ',' << format_double(rep.ub);
      } else {
        out << ",,,";
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string aggregates_csv(const std::vector<AggregateResult>& aggregates) {
  std::ostringstream out;
  out << "p,q,stat,mean,rel_err,coverage,frac\n";
  for (const AggregateResult& agg : aggregates) {
    for (const StatAggregate& sa : agg.stats) {
      out << format_double(agg.p) << ',' << format_double(agg.q) << ','
          << to_string(sa.statistic) << ',' << format_double(sa.mean_estimate)
          << ',' << format_double(sa.rel_error) << ',';
      if (sa.has_coverage) out << format_double(sa.coverage);
      out << ',' << format_double(agg.mean_sampling_fraction) << '\n';
    }
  }
  return out.str();
}

// --- JSON serialization -----------------------------------------------

void to_json(nlohmann::json& j, const EstimateReport& r) {
  j = nlohmann::json{{"stat", r.statistic},
                     {"estimate", r.estimate},
                     {"variance", r.variance},
                     {"lb", r.lb},
                     {"ub", r.ub},
                     {"defined", r.defined},
                     {"has_variance", r.has_variance},
                     {"variance_clamped", r.variance_clamped}};
}

void from_json(const nlohmann::json& j, EstimateReport& r) {
  j.at("stat").get_to(r.statistic);
  j.at("estimate").get_to(r.estimate);
  j.at("variance").get_to(r.variance);
  j.at("lb").get_to(r.lb);
  j.at("ub").get_to(r.ub);
  j.at("defined").get_to(r.defined);
  j.at("has_variance").get_to(r.has_variance);
  j.at("variance_clamped").get_to(r.variance_clamped);
}

void to_json(nlohmann::json& j, const PhaseTimes& t) {
  j = nlohmann::json{{"sample_s", t.sample_s},
                     {"estimate_s", t.estimate_s},
                     {"variance_s", t.variance_s}};
}

void from_json(const nlohmann::json& j, PhaseTimes& t) {
  j.at("sample_s").get_to(t.sample_s);
  j.at("estimate_s").get_to(t.estimate_s);
  j.at("variance_s").get_to(t.variance_s);
}

void to_json(nlohmann::json& j, const RunResult& r) {
  j = nlohmann::json{{"p", r.p},
                     {"q", r.q},
                     {"p_index", r.p_index},
                     {"q_index", r.q_index},
                     {"run", r.run_index},
                     {"seed", r.seed},
                     {"sample_size", r.sample_size},
                     {"reports", r.reports},
                     {"times", r.times}};
}

void from_json(const nlohmann::json& j, RunResult& r) {
  j.at("p").get_to(r.p);
  j.at("q").get_to(r.q);
  j.at("p_index").get_to(r.p_index);
  j.at("q_index").get_to(r.q_index);
  j.at("run").get_to(r.run_index);
  j.at("seed").get_to(r.seed);
  j.at("sample_size").get_to(r.sample_size);
  j.at("reports").get_to(r.reports);
  j.at("times").get_to(r.times);
}

void to_json(nlohmann::json& j, const StatAggregate& s) {
  j = nlohmann::json{{"stat", s.statistic},
                     {"mean", s.mean_estimate},
                     {"rel_err", s.rel_error},
                     {"coverage", s.coverage},
                     {"has_coverage", s.has_coverage},
                     {"defined_runs", s.defined_runs}};
}

void from_json(const nlohmann::json& j, StatAggregate& s) {
  j.at("stat").get_to(s.statistic);
  j.at("mean").get_to(s.mean_estimate);
  j.at("rel_err").get_to(s.rel_error);
  j.at("coverage").get_to(s.coverage);
  j.at("has_coverage").get_to(s.has_coverage);
  j.at("defined_runs").get_to(s.defined_runs);
}

void to_json(nlohmann::json& j, const AggregateResult& a) {
  j = nlohmann::json{{"p", a.p},
                     {"q", a.q},
                     {"mean_sampling_fraction", a.mean_sampling_fraction},
                     {"stats", a.stats}};
}

void from_json(const nlohmann::json& j, AggregateResult& a) {
  j.at("p").get_to(a.p);
  j.at("q").get_to(a.q);
  j.at("mean_sampling_fraction").get_to(a.mean_sampling_fraction);
  j.at("stats").get_to(a.stats);
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = nlohmann::json{{"input", c.input},
                     {"mode", c.mode},
                     {"p_grid", c.p_grid},
                     {"q_grid", c.q_grid},
                     {"triangle_closure", c.triangle_closure},
                     {"runs", c.runs},
                     {"base_seed", c.base_seed},
                     {"format", c.format},
                     {"statistics", c.statistics},
                     {"threads", c.threads}};
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  j.at("input").get_to(c.input);
  j.at("mode").get_to(c.mode);
  j.at("p_grid").get_to(c.p_grid);
  j.at("q_grid").get_to(c.q_grid);
  j.at("triangle_closure").get_to(c.triangle_closure);
  j.at("runs").get_to(c.runs);
  j.at("base_seed").get_to(c.base_seed);
  j.at("format").get_to(c.format);
  j.at("statistics").get_to(c.statistics);
  j.at("threads").get_to(c.threads);
}

void to_json(nlohmann::json& j, const ExactStats& s) {
  j = nlohmann::json{{"nodes", s.nodes},
                     {"edges", s.edges},
                     {"triangles", s.triangles},
                     {"wedges", s.wedges},
                     {"alpha", s.alpha},
                     {"alpha_defined", s.alpha_defined},
                     {"density", s.density}};
}

void from_json(const nlohmann::json& j, ExactStats& s) {
  j.at("nodes").get_to(s.nodes);
  j.at("edges").get_to(s.edges);
  j.at("triangles").get_to(s.triangles);
  j.at("wedges").get_to(s.wedges);
  j.at("alpha").get_to(s.alpha);
  j.at("alpha_defined").get_to(s.alpha_defined);
  j.at("density").get_to(s.density);
}

nlohmann::json experiment_json(const ExperimentConfig& cfg,
                               const ExactStats* exact,
                               const std::vector<RunResult>& runs,
                               const std::vector<AggregateResult>& aggregates) {
  nlohmann::json doc;
  doc["version"] = kVersion;
  doc["timestamp"] = iso8601_utc_now();
  doc["config"] = cfg;
  if (exact != nullptr) {
    doc["exact"] = *exact;
  } else {
    doc["exact"] = nullptr;
  }
  doc["runs"] = runs;
  doc["aggregates"] = aggregates;
  return doc;
}

}  // namespace gsh
