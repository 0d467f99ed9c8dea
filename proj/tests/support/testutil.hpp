#pragma once

// Shared test helpers: tiny graph builders, an Erdos-Renyi generator, and
// deliberately naive reference implementations of subgraph enumeration and
// the pairwise variance/covariance sums. The naive versions stay independent
// of the library's algorithms so the two can check each other.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "gsh/estimators.hpp"
#include "gsh/graph.hpp"
#include "gsh/oracle.hpp"
#include "gsh/rng.hpp"
#include "gsh/sampler.hpp"

namespace gsh::test {

inline EdgeStream make_stream(std::vector<std::pair<NodeId, NodeId>> pairs,
                              GraphMode mode = GraphMode::undirected) {
  EdgeStream s;
  s.mode = mode;
  for (auto [a, b] : pairs) s.edges.push_back(canonical(Edge{a, b}, mode));
  return s;
}

// G(n, p) with all node ids present as 0..n-1 not guaranteed; only nodes with
// incident edges appear in the stream, like any edge-list input.
inline EdgeStream er_graph(std::uint64_t n, double edge_prob, std::uint64_t seed) {
  EdgeStream s;
  std::mt19937_64 rng(seed);
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (uniform01(rng) < edge_prob) s.edges.push_back(Edge{a, b});
    }
  }
  return s;
}

inline EdgeStream er_graph_mean_degree(std::uint64_t n, double mean_degree,
                                       std::uint64_t seed) {
  return er_graph(n, mean_degree / static_cast<double>(n - 1), seed);
}

// Builds a held state directly from (edge, class) pairs; arrival order is
// list order.
inline SampleState make_state(const SamplerConfig& cfg,
                              std::vector<std::pair<Edge, ProbClass>> held,
                              GraphMode mode = GraphMode::undirected) {
  SampleState state(cfg, mode);
  std::uint32_t i = 0;
  for (auto& [e, c] : held) state.append(e, c, i++);
  return state;
}

// --- naive references ---------------------------------------------------

inline bool share_node(const Edge& x, const Edge& y) {
  return x.a == y.a || x.a == y.b || x.b == y.a || x.b == y.b;
}

// All held-edge pairs sharing exactly one node.
inline std::vector<SubgraphInstance> naive_wedges(const SampleState& state) {
  std::vector<SubgraphInstance> out;
  const auto& held = state.held();
  for (std::uint32_t i = 0; i < held.size(); ++i) {
    for (std::uint32_t j = i + 1; j < held.size(); ++j) {
      if (!share_node(held[i].edge, held[j].edge)) continue;
      SubgraphInstance inst;
      inst.held_idx = {i, j, 0};
      inst.n_edges = 2;
      inst.inv_prob = 1.0 / (state.numeric_prob(i) * state.numeric_prob(j));
      out.push_back(inst);
    }
  }
  return out;
}

// All held-edge triples covering exactly three nodes (a 3-cycle).
inline std::vector<SubgraphInstance> naive_triangles(const SampleState& state) {
  std::vector<SubgraphInstance> out;
  const auto& held = state.held();
  for (std::uint32_t i = 0; i < held.size(); ++i) {
    for (std::uint32_t j = i + 1; j < held.size(); ++j) {
      for (std::uint32_t k = j + 1; k < held.size(); ++k) {
        std::vector<NodeId> nodes{held[i].edge.a, held[i].edge.b,
                                  held[j].edge.a, held[j].edge.b,
                                  held[k].edge.a, held[k].edge.b};
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        if (nodes.size() != 3) continue;
        // Three distinct edges on three nodes form the 3-cycle.
        SubgraphInstance inst;
        inst.held_idx = {i, j, k};
        inst.n_edges = 3;
        inst.inv_prob = 1.0 / (state.numeric_prob(i) * state.numeric_prob(j) *
                               state.numeric_prob(k));
        out.push_back(inst);
      }
    }
  }
  return out;
}

inline std::vector<std::uint32_t> shared_edges(const SubgraphInstance& x,
                                               const SubgraphInstance& y) {
  std::vector<std::uint32_t> out;
  for (std::uint8_t i = 0; i < x.n_edges; ++i) {
    for (std::uint8_t j = 0; j < y.n_edges; ++j) {
      if (x.held_idx[i] == y.held_idx[j]) out.push_back(x.held_idx[i]);
    }
  }
  return out;
}

// Covariance term for one instance pair, computed from first principles:
// (1/P(J u J')) (1/P(J n J') - 1), zero when disjoint.
inline double pair_cov_term(const SubgraphInstance& x, const SubgraphInstance& y,
                            const SampleState& state) {
  const auto shared = shared_edges(x, y);
  if (shared.empty()) return 0.0;
  double p_shared = 1.0;
  for (std::uint32_t e : shared) p_shared *= state.numeric_prob(e);
  const double inv_union = x.inv_prob * y.inv_prob * p_shared;
  return inv_union * (1.0 / p_shared - 1.0);
}

// Quadratic-cost variance estimate: diagonal plus all ordered distinct pairs.
inline double naive_var_family(const SubgraphFamily& family,
                               const SampleState& state) {
  double total = 0.0;
  const auto& inst = family.instances;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    total += inst[i].inv_prob * (inst[i].inv_prob - 1.0);
    for (std::size_t j = 0; j < inst.size(); ++j) {
      if (i == j) continue;
      total += pair_cov_term(inst[i], inst[j], state);
    }
  }
  return total;
}

inline double naive_cov_triangle_wedge(const SubgraphFamily& tri,
                                       const SubgraphFamily& wedge,
                                       const SampleState& state) {
  double total = 0.0;
  for (const auto& t : tri.instances) {
    for (const auto& l : wedge.instances) {
      total += pair_cov_term(t, l, state);
    }
  }
  return total;
}

// Exact counts by adjacency-matrix brute force; for tiny graphs only.
struct BruteCounts {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  std::uint64_t triangles = 0;
  std::uint64_t wedges = 0;
};

inline BruteCounts brute_counts(const EdgeStream& stream) {
  std::vector<NodeId> nodes;
  for (const Edge& e : stream.edges) {
    nodes.push_back(e.a);
    nodes.push_back(e.b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  const std::size_t n = nodes.size();
  auto index_of = [&](NodeId x) {
    return static_cast<std::size_t>(
        std::lower_bound(nodes.begin(), nodes.end(), x) - nodes.begin());
  };
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const Edge& e : stream.edges) {
    adj[index_of(e.a)][index_of(e.b)] = true;
    adj[index_of(e.b)][index_of(e.a)] = true;
  }
  BruteCounts c;
  c.nodes = n;
  c.edges = stream.edges.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const int cnt = int(adj[i][j]) + int(adj[i][k]) + int(adj[j][k]);
        if (cnt == 3) ++c.triangles;
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::uint64_t deg = 0;
    for (std::size_t u = 0; u < n; ++u) deg += adj[v][u];
    c.wedges += deg * (deg - 1) / 2;
  }
  return c;
}

// --- statistic functions over a sample -----------------------------------

inline double est_edges(const SampleState& s) {
  return subgraph_sum(enumerate(s, SubgraphKind::edge));
}
inline double est_triangles(const SampleState& s) {
  return subgraph_sum(enumerate(s, SubgraphKind::triangle));
}
inline double est_wedges(const SampleState& s) {
  return subgraph_sum(enumerate(s, SubgraphKind::wedge));
}

inline double mean_of(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
}

inline double sample_variance(const std::vector<double>& xs) {
  const double m = mean_of(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return acc / (xs.size() - 1);
}

// Scaled tolerance for exhaustive-identity checks.
inline bool close(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace gsh::test
