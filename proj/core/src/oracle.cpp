#include "gsh/oracle.hpp"

#include <algorithm>
#include <unordered_map>

#include "gsh/errors.hpp"

namespace gsh {

ExactStats exact_count(const EdgeStream& stream) {
  if (stream.mode == GraphMode::directed) {
    throw ConfigError("exact statistics are defined for undirected streams");
  }
  std::unordered_map<NodeId, std::vector<NodeId>> adj;
  for (const Edge& e : stream.edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (auto& [node, neighbors] : adj) {
    (void)node;
    std::sort(neighbors.begin(), neighbors.end());
  }

  ExactStats stats;
  stats.nodes = adj.size();
  stats.edges = stream.edges.size();

  for (const auto& [node, neighbors] : adj) {
    (void)node;
    const std::uint64_t d = neighbors.size();
    stats.wedges += d * (d - 1) / 2;
  }

  std::uint64_t triangle_edge_incidences = 0;
  for (const Edge& e : stream.edges) {
    const auto& na = adj.at(e.a);
    const auto& nb = adj.at(e.b);
    std::size_t i = 0, j = 0;
    while (i < na.size() && j < nb.size()) {
      if (na[i] < nb[j]) {
        ++i;
      } else if (nb[j] < na[i]) {
        ++j;
      } else {
        ++triangle_edge_incidences;
        ++i;
        ++j;
      }
    }
  }
  stats.triangles = triangle_edge_incidences / 3;

  if (stats.wedges > 0) {
    stats.alpha =
        3.0 * static_cast<double>(stats.triangles) / static_cast<double>(stats.wedges);
    stats.alpha_defined = true;
  }
  if (stats.nodes > 1) {
    stats.density = 2.0 * static_cast<double>(stats.edges) /
                    (static_cast<double>(stats.nodes) *
                     static_cast<double>(stats.nodes - 1));
  }
  return stats;
}

namespace {

constexpr std::size_t kMaxEnumerableEdges = 20;

struct OutcomeDfs {
  const EdgeStream& stream;
  OutcomeTree& tree;
  SampleState state;
  double probability = 1.0;
  std::uint32_t mask = 0;

  void walk(std::size_t i) {
    if (i == stream.edges.size()) {
      Outcome o;
      o.mask = mask;
      o.probability = probability;
      o.classes.reserve(state.size());
      for (const SampledEdge& se : state.held()) o.classes.push_back(se.prob);
      tree.outcomes.push_back(std::move(o));
      return;
    }
    const Edge& k = stream.edges[i];
    const ProbClass cls = state.classify(k);
    const double r = state.config().numeric(cls);

    const double saved = probability;
    mask |= 1u << i;
    probability = saved * r;
    state.append(k, cls, static_cast<std::uint32_t>(i));
    walk(i + 1);
    state.pop_back();
    mask &= ~(1u << i);

    if (r < 1.0) {  // rejection branch has probability 0 when r == 1
      probability = saved * (1.0 - r);
      walk(i + 1);
    }
    probability = saved;
  }
};

}  // namespace

OutcomeTree enumerate_outcomes(const EdgeStream& stream,
                               const SamplerConfig& config) {
  config.validate();
  if (stream.mode == GraphMode::directed && config.triangle_closure) {
    throw ConfigError("triangle closure is defined for undirected streams only");
  }
  if (stream.edges.size() > kMaxEnumerableEdges) {
    throw ConfigError("outcome enumeration refused: stream exceeds " +
                      std::to_string(kMaxEnumerableEdges) + " edges");
  }
  OutcomeTree tree{stream, config, {}};
  OutcomeDfs dfs{stream, tree, SampleState(config, stream.mode)};
  dfs.walk(0);
  return tree;
}

SampleState materialize(const OutcomeTree& tree, const Outcome& outcome) {
  SampleState state(tree.config, tree.stream.mode);
  std::size_t next_class = 0;
  for (std::size_t i = 0; i < tree.stream.edges.size(); ++i) {
    if (outcome.mask & (1u << i)) {
      state.append(tree.stream.edges[i], outcome.classes.at(next_class++),
                   static_cast<std::uint32_t>(i));
    }
  }
  return state;
}

double expected_value(const OutcomeTree& tree, const StatisticFn& statistic) {
  KahanSum acc;
  for (const Outcome& o : tree.outcomes) {
    acc.add(o.probability * statistic(materialize(tree, o)));
  }
  return acc.value();
}

double exact_variance(const OutcomeTree& tree, const StatisticFn& statistic) {
  KahanSum mean, second;
  for (const Outcome& o : tree.outcomes) {
    const double x = statistic(materialize(tree, o));
    mean.add(o.probability * x);
    second.add(o.probability * x * x);
  }
  return second.value() - mean.value() * mean.value();
}

double exact_covariance(const OutcomeTree& tree, const StatisticFn& f,
                        const StatisticFn& g) {
  KahanSum mean_f, mean_g, cross;
  for (const Outcome& o : tree.outcomes) {
    const SampleState state = materialize(tree, o);
    const double x = f(state);
    const double y = g(state);
    mean_f.add(o.probability * x);
    mean_g.add(o.probability * y);
    cross.add(o.probability * x * y);
  }
  return cross.value() - mean_f.value() * mean_g.value();
}

}  // namespace gsh
