#pragma once

#include <cstdint>
#include <random>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gsh/graph.hpp"

namespace gsh {

// Which selection rule was in force when an edge was held. Fits in 2 bits;
// the numeric probability is resolved through SamplerConfig at estimation
// time rather than stored per edge.
enum class ProbClass : std::uint8_t { p = 0, q = 1, one = 2 };

const char* to_string(ProbClass c);

struct SamplerConfig {
  double p = 1.0;
  double q = 1.0;
  bool triangle_closure = true;  // select triangle-closing edges with prob 1
  std::uint64_t seed = 0;

  double numeric(ProbClass c) const noexcept {
    switch (c) {
      case ProbClass::p: return p;
      case ProbClass::q: return q;
      default: return 1.0;
    }
  }

  // Throws ConfigError unless 1e-6 <= p,q <= 1. The floor keeps inclusion
  // probability products for 3-edge subgraphs well inside double range.
  void validate() const;
};

struct SampledEdge {
  Edge edge;
  ProbClass prob = ProbClass::p;
  std::uint32_t arrival_index = 0;  // 0-based position in the stream
};

// The sampler's entire memory: held edges in arrival order plus a
// node -> incident-held-edge index. Size is O(held), never O(stream).
class SampleState {
 public:
  SampleState() = default;
  SampleState(SamplerConfig config, GraphMode mode);

  // Selection probability class for an arriving edge. Precedence: triangle
  // closure, then adjacency, then fresh. Expects k not already held.
  ProbClass classify(const Edge& k) const;

  void append(const Edge& k, ProbClass c, std::uint32_t arrival_index);
  // Removes the most recently appended edge. Used by outcome enumeration.
  void pop_back();

  const std::vector<SampledEdge>& held() const noexcept { return held_; }
  std::size_t size() const noexcept { return held_.size(); }
  bool contains(const Edge& k) const {
    return edge_set_.count(canonical(k, mode_)) > 0;
  }
  const std::unordered_map<NodeId, std::vector<std::uint32_t>>& node_index()
      const noexcept {
    return node_index_;
  }
  const SamplerConfig& config() const noexcept { return config_; }
  GraphMode mode() const noexcept { return mode_; }

  double numeric_prob(std::size_t held_idx) const {
    return config_.numeric(held_[held_idx].prob);
  }

 private:
  std::vector<SampledEdge> held_;
  std::unordered_map<NodeId, std::vector<std::uint32_t>> node_index_;
  std::unordered_set<Edge, EdgeHash> edge_set_;
  SamplerConfig config_;
  GraphMode mode_ = GraphMode::undirected;
};

struct StepResult {
  bool selected = false;
  ProbClass cls = ProbClass::p;
};

// One Bernoulli decision for an arriving edge. Exactly one uniform draw is
// consumed per call regardless of class, so runs with coupled seeds stay
// aligned step for step.
StepResult step(SampleState& state, const Edge& k, std::uint32_t arrival_index,
                std::mt19937_64& rng);

// Single pass over the stream. Deterministic given config.seed.
// Throws ConfigError for invalid p/q or triangle closure on directed streams.
SampleState run(const EdgeStream& stream, const SamplerConfig& config);

// |held| / |stream|. Throws ConfigError on an empty stream.
double sampling_fraction(const SampleState& state, const EdgeStream& stream);

}  // namespace gsh
