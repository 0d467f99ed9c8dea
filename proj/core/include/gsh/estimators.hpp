#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "gsh/sampler.hpp"

namespace gsh {

enum class SubgraphKind : std::uint8_t { edge, wedge, triangle };

// One sampled subgraph J: 1 (edge), 2 (wedge) or 3 (triangle) held-edge
// indices in ascending arrival order, plus 1/P(J), the inverse product of the
// member edges' selection probabilities.
struct SubgraphInstance {
  std::array<std::uint32_t, 3> held_idx{};
  std::uint8_t n_edges = 0;
  double inv_prob = 1.0;

  friend bool operator==(const SubgraphInstance&, const SubgraphInstance&) = default;
};

// All sampled subgraphs of one kind, with an optional per-instance weight
// (the selection-criterion hook; defaults to constant 1).
struct SubgraphFamily {
  SubgraphKind kind = SubgraphKind::edge;
  std::vector<SubgraphInstance> instances;
  std::function<double(const SubgraphInstance&)> weight_fn;
};

// Enumerates every subgraph of `kind` in the held sample exactly once.
//   edge     - all held edges
//   wedge    - all pairs of held edges sharing exactly one node
//   triangle - all held 3-cycles
// Wedge and triangle enumeration require an undirected sample.
SubgraphFamily enumerate(const SampleState& state, SubgraphKind kind);

// Horvitz-Thompson subgraph sum: sum of f(J)/P(J) over sampled instances.
// With f == 1 this is the unbiased count estimator for the family's kind.
double subgraph_sum(const SubgraphFamily& family, unsigned threads = 1);

// Unbiased estimator of the number of non-isolated nodes: for each node x
// with held edges, 1 - prod over held edges k at x of (1 - 1/p_k).
double node_estimate(const SampleState& state);

// Plug-in global clustering coefficient 3*nt/nl (consistent-style, not
// unbiased). Empty when nl_hat == 0.
std::optional<double> clustering_estimate(double nt_hat, double nl_hat);

// ---------------------------------------------------------------------------
// Reporting types shared with the variance module and the harness.

enum class Statistic : std::uint8_t { edges, triangles, wedges, clustering, nodes };

// Wire names: N_K, N_T, N_Lambda, alpha, N_V.
const char* to_string(Statistic s);
std::optional<Statistic> statistic_from_string(std::string_view name);

struct EstimateReport {
  Statistic statistic = Statistic::edges;
  double estimate = 0.0;
  double variance = 0.0;
  double lb = 0.0;
  double ub = 0.0;
  bool defined = true;        // false when alpha has a zero wedge estimate
  bool has_variance = true;   // false for N_V (no variance estimator exists)
  bool variance_clamped = false;  // delta-method value was negative

  friend bool operator==(const EstimateReport&, const EstimateReport&) = default;
};

}  // namespace gsh
