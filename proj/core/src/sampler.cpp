#include "gsh/sampler.hpp"

#include <cassert>

#include "gsh/errors.hpp"
#include "gsh/rng.hpp"

namespace gsh {

const char* to_string(ProbClass c) {
  switch (c) {
    case ProbClass::p: return "p";
    case ProbClass::q: return "q";
    default: return "1";
  }
}

void SamplerConfig::validate() const {
  if (!(p >= 1e-6 && p <= 1.0)) {
    throw ConfigError("sampling probability p must be in [1e-6, 1]");
  }
  if (!(q >= 1e-6 && q <= 1.0)) {
    throw ConfigError("sampling probability q must be in [1e-6, 1]");
  }
}

SampleState::SampleState(SamplerConfig config, GraphMode mode)
    : config_(config), mode_(mode) {}

ProbClass SampleState::classify(const Edge& k) const {
  assert(!contains(k));
  if (config_.triangle_closure) {
    // Common held neighbor of both endpoints closes a triangle. Walk the
    // lower-degree endpoint and probe the held edge set for the other side.
    auto it_a = node_index_.find(k.a);
    auto it_b = node_index_.find(k.b);
    if (it_a != node_index_.end() && it_b != node_index_.end()) {
      const bool a_smaller = it_a->second.size() <= it_b->second.size();
      const auto& walk = a_smaller ? it_a->second : it_b->second;
      const NodeId walk_node = a_smaller ? k.a : k.b;
      const NodeId other = a_smaller ? k.b : k.a;
      for (std::uint32_t idx : walk) {
        const Edge& h = held_[idx].edge;
        const NodeId w = h.a == walk_node ? h.b : h.a;
        if (w == other) continue;
        if (edge_set_.count(canonical(Edge{w, other}, mode_)) > 0) {
          return ProbClass::one;
        }
      }
    }
  }
  if (mode_ == GraphMode::undirected) {
    if (node_index_.count(k.a) > 0 || node_index_.count(k.b) > 0) {
      return ProbClass::q;
    }
  } else {
    // Directed match: some held k' with head(k) == tail(k') or
    // tail(k) == head(k').
    if (auto it = node_index_.find(k.b); it != node_index_.end()) {
      for (std::uint32_t idx : it->second) {
        if (held_[idx].edge.a == k.b) return ProbClass::q;
      }
    }
    if (auto it = node_index_.find(k.a); it != node_index_.end()) {
      for (std::uint32_t idx : it->second) {
        if (held_[idx].edge.b == k.a) return ProbClass::q;
      }
    }
  }
  return ProbClass::p;
}

void SampleState::append(const Edge& k, ProbClass c, std::uint32_t arrival_index) {
  const Edge e = canonical(k, mode_);
  const auto idx = static_cast<std::uint32_t>(held_.size());
  held_.push_back(SampledEdge{e, c, arrival_index});
  node_index_[e.a].push_back(idx);
  node_index_[e.b].push_back(idx);
  edge_set_.insert(e);
}

void SampleState::pop_back() {
  assert(!held_.empty());
  const Edge e = held_.back().edge;
  const auto idx = static_cast<std::uint32_t>(held_.size() - 1);
  for (NodeId x : {e.a, e.b}) {
    auto it = node_index_.find(x);
    assert(it != node_index_.end() && it->second.back() == idx);
    (void)idx;
    it->second.pop_back();
    if (it->second.empty()) node_index_.erase(it);
  }
  edge_set_.erase(e);
  held_.pop_back();
}

StepResult step(SampleState& state, const Edge& k, std::uint32_t arrival_index,
                std::mt19937_64& rng) {
  const ProbClass cls = state.classify(k);
  const double r = state.config().numeric(cls);
  const double u = uniform01(rng);  // consumed even when r == 1
  const bool selected = u < r;
  if (selected) state.append(k, cls, arrival_index);
  return StepResult{selected, cls};
}

SampleState run(const EdgeStream& stream, const SamplerConfig& config) {
  config.validate();
  if (stream.mode == GraphMode::directed && config.triangle_closure) {
    throw ConfigError(
        "triangle closure is defined for undirected streams only");
  }
  SampleState state(config, stream.mode);
  std::mt19937_64 rng(config.seed);
  for (std::size_t i = 0; i < stream.edges.size(); ++i) {
    step(state, stream.edges[i], static_cast<std::uint32_t>(i), rng);
  }
  return state;
}

double sampling_fraction(const SampleState& state, const EdgeStream& stream) {
  if (stream.empty()) {
    throw ConfigError("sampling fraction undefined for an empty stream");
  }
  return static_cast<double>(state.size()) / static_cast<double>(stream.size());
}

}  // namespace gsh
