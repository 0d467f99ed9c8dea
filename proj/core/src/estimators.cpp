#include "gsh/estimators.hpp"

#include <algorithm>
#include <thread>

#include "gsh/errors.hpp"

namespace gsh {

namespace {

SubgraphInstance make_instance(std::uint32_t i, double inv) {
  SubgraphInstance inst;
  inst.held_idx = {i, 0, 0};
  inst.n_edges = 1;
  inst.inv_prob = inv;
  return inst;
}

SubgraphInstance make_instance(std::uint32_t i, std::uint32_t j, double inv) {
  SubgraphInstance inst;
  inst.held_idx = {std::min(i, j), std::max(i, j), 0};
  inst.n_edges = 2;
  inst.inv_prob = inv;
  return inst;
}

SubgraphInstance make_instance(std::uint32_t i, std::uint32_t j, std::uint32_t k,
                               double inv) {
  SubgraphInstance inst;
  inst.held_idx = {i, j, k};
  std::sort(inst.held_idx.begin(), inst.held_idx.end());
  inst.n_edges = 3;
  inst.inv_prob = inv;
  return inst;
}

// Node ids compacted to [0, n) over the held sample, ranked by
// (held degree, id). Triangle enumeration directs each held edge from its
// lower- to its higher-ranked endpoint so every triangle is reported exactly
// once, from its lowest-ranked node.
struct CompactGraph {
  std::vector<NodeId> ids;                      // compact -> NodeId
  std::vector<std::uint32_t> rank;              // compact -> rank
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> fwd;
  // fwd[u] = (rank of v, held edge index) for held edges u-v with
  // rank[u] < rank[v], sorted by rank of v.
};

}  // namespace

SubgraphFamily enumerate(const SampleState& state, SubgraphKind kind) {
  SubgraphFamily family;
  family.kind = kind;
  const auto& held = state.held();

  if (kind == SubgraphKind::edge) {
    family.instances.reserve(held.size());
    for (std::uint32_t i = 0; i < held.size(); ++i) {
      family.instances.push_back(make_instance(i, 1.0 / state.numeric_prob(i)));
    }
    return family;
  }

  if (state.mode() == GraphMode::directed) {
    throw ConfigError("wedge/triangle enumeration requires an undirected sample");
  }

  if (kind == SubgraphKind::wedge) {
    // Each wedge has exactly one center node, so iterating nodes and
    // emitting incident-edge pairs yields every wedge once.
    for (const auto& [node, incident] : state.node_index()) {
      (void)node;
      for (std::size_t x = 0; x + 1 < incident.size(); ++x) {
        const std::uint32_t i = incident[x];
        const double inv_i = 1.0 / state.numeric_prob(i);
        for (std::size_t y = x + 1; y < incident.size(); ++y) {
          const std::uint32_t j = incident[y];
          family.instances.push_back(
              make_instance(i, j, inv_i / state.numeric_prob(j)));
        }
      }
    }
    return family;
  }

  // Triangles.
  CompactGraph g;
  std::unordered_map<NodeId, std::uint32_t> compact;
  compact.reserve(state.node_index().size());
  for (const auto& [node, incident] : state.node_index()) {
    (void)incident;
    compact.emplace(node, static_cast<std::uint32_t>(g.ids.size()));
    g.ids.push_back(node);
  }
  const std::uint32_t n = static_cast<std::uint32_t>(g.ids.size());

  std::vector<std::uint32_t> order(n);
  for (std::uint32_t u = 0; u < n; ++u) order[u] = u;
  auto degree = [&](std::uint32_t u) {
    return state.node_index().at(g.ids[u]).size();
  };
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    const auto dx = degree(x), dy = degree(y);
    return dx != dy ? dx < dy : g.ids[x] < g.ids[y];
  });
  g.rank.assign(n, 0);
  for (std::uint32_t r = 0; r < n; ++r) g.rank[order[r]] = r;

  g.fwd.assign(n, {});
  for (std::uint32_t e = 0; e < held.size(); ++e) {
    std::uint32_t u = compact.at(held[e].edge.a);
    std::uint32_t v = compact.at(held[e].edge.b);
    if (g.rank[u] > g.rank[v]) std::swap(u, v);
    g.fwd[u].emplace_back(g.rank[v], e);
  }
  for (auto& list : g.fwd) std::sort(list.begin(), list.end());

  for (std::uint32_t e = 0; e < held.size(); ++e) {
    std::uint32_t u = compact.at(held[e].edge.a);
    std::uint32_t v = compact.at(held[e].edge.b);
    if (g.rank[u] > g.rank[v]) std::swap(u, v);
    // Merge the forward lists of u and v; common neighbors close triangles.
    const auto& lu = g.fwd[u];
    const auto& lv = g.fwd[v];
    std::size_t x = 0, y = 0;
    const double inv_e = 1.0 / state.numeric_prob(e);
    while (x < lu.size() && y < lv.size()) {
      if (lu[x].first < lv[y].first) {
        ++x;
      } else if (lv[y].first < lu[x].first) {
        ++y;
      } else {
        const double inv = inv_e / (state.numeric_prob(lu[x].second) *
                                    state.numeric_prob(lv[y].second));
        family.instances.push_back(
            make_instance(e, lu[x].second, lv[y].second, inv));
        ++x;
        ++y;
      }
    }
  }
  return family;
}

double subgraph_sum(const SubgraphFamily& family, unsigned threads) {
  const auto& inst = family.instances;
  auto partial = [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    if (family.weight_fn) {
      for (std::size_t i = lo; i < hi; ++i) {
        s += family.weight_fn(inst[i]) * inst[i].inv_prob;
      }
    } else {
      for (std::size_t i = lo; i < hi; ++i) s += inst[i].inv_prob;
    }
    return s;
  };

  if (threads <= 1 || inst.size() < 2048) return partial(0, inst.size());

  const std::size_t chunk = (inst.size() + threads - 1) / threads;
  std::vector<double> sums(threads, 0.0);
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = std::min(inst.size(), t * chunk);
    const std::size_t hi = std::min(inst.size(), lo + chunk);
    workers.emplace_back([&, t, lo, hi] { sums[t] = partial(lo, hi); });
  }
  for (auto& w : workers) w.join();
  double total = 0.0;
  for (double s : sums) total += s;  // fixed order keeps results reproducible
  return total;
}

double node_estimate(const SampleState& state) {
  double total = 0.0;
  for (const auto& [node, incident] : state.node_index()) {
    (void)node;
    double prod = 1.0;
    for (std::uint32_t i : incident) {
      prod *= 1.0 - 1.0 / state.numeric_prob(i);
    }
    total += 1.0 - prod;
  }
  return total;
}

std::optional<double> clustering_estimate(double nt_hat, double nl_hat) {
  if (nl_hat == 0.0) return std::nullopt;
  return 3.0 * nt_hat / nl_hat;
}

const char* to_string(Statistic s) {
  switch (s) {
    case Statistic::edges: return "N_K";
    case Statistic::triangles: return "N_T";
    case Statistic::wedges: return "N_Lambda";
    case Statistic::clustering: return "alpha";
    default: return "N_V";
  }
}

std::optional<Statistic> statistic_from_string(std::string_view name) {
  if (name == "N_K") return Statistic::edges;
  if (name == "N_T") return Statistic::triangles;
  if (name == "N_Lambda") return Statistic::wedges;
  if (name == "alpha") return Statistic::clustering;
  if (name == "N_V") return Statistic::nodes;
  return std::nullopt;
}

}  // namespace gsh
