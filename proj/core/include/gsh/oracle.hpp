#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gsh/sampler.hpp"

namespace gsh {

// Compensated (Kahan) accumulator; outcome-tree expectations are compared
// against exact values at 1e-12, so plain summation noise matters.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const noexcept { return sum; }
};

struct ExactStats {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  std::uint64_t triangles = 0;
  std::uint64_t wedges = 0;
  double alpha = 0.0;  // 3*triangles/wedges; meaningful only when defined
  bool alpha_defined = false;
  double density = 0.0;  // 2*edges / (nodes*(nodes-1))

  friend bool operator==(const ExactStats&, const ExactStats&) = default;
};

// Exact full-graph statistics. Triangles are counted by per-edge sorted
// neighbor intersection (each triangle seen from all three edges, divided
// by 3), wedges as sum over nodes of C(deg, 2). Undirected streams only.
ExactStats exact_count(const EdgeStream& stream);

// One leaf of the exhaustive select/reject branch tree.
struct Outcome {
  std::uint32_t mask = 0;  // bit i set -> stream edge i held
  double probability = 0.0;
  std::vector<ProbClass> classes;  // one per held edge, arrival order
};

struct OutcomeTree {
  EdgeStream stream;
  SamplerConfig config;
  std::vector<Outcome> outcomes;
};

// Enumerates every sampling outcome with its exact probability by branching
// on each arrival's select/reject decision. Zero-probability rejections
// (selection probability 1) are pruned. Refuses streams above 20 edges.
OutcomeTree enumerate_outcomes(const EdgeStream& stream,
                               const SamplerConfig& config);

// Rebuilds the held sample a given outcome describes.
SampleState materialize(const OutcomeTree& tree, const Outcome& outcome);

using StatisticFn = std::function<double(const SampleState&)>;

// Probability-weighted moments of statistics over the tree.
double expected_value(const OutcomeTree& tree, const StatisticFn& statistic);
double exact_variance(const OutcomeTree& tree, const StatisticFn& statistic);
double exact_covariance(const OutcomeTree& tree, const StatisticFn& f,
                        const StatisticFn& g);

}  // namespace gsh
