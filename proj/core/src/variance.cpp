#include "gsh/variance.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace gsh {

namespace {

constexpr double kZ95 = 1.96;

// Runs fn(t, lo, hi) over `threads` contiguous chunks of [0, n).
template <typename Fn>
void parallel_chunks(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n < 4096) {
    fn(0u, std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = std::min(n, t * chunk);
    const std::size_t hi = std::min(n, lo + chunk);
    workers.emplace_back([&fn, t, lo, hi] { fn(t, lo, hi); });
  }
  for (auto& w : workers) w.join();
}

// Per held edge e: sums of 1/P(J) and 1/P(J)^2 over the instances containing
// e. The ordered-pair covariance sum grouped by shared edge then collapses to
// (S_e^2 - Q_e) * (1 - P(e)) per edge.
struct EdgeMoments {
  std::vector<double> sum;     // S_e
  std::vector<double> sum_sq;  // Q_e
};

EdgeMoments accumulate_moments(const SubgraphFamily& family,
                               std::size_t held_count, unsigned threads) {
  const unsigned lanes = std::max(1u, threads);
  std::vector<EdgeMoments> local(lanes);
  parallel_chunks(family.instances.size(), threads,
                  [&](unsigned t, std::size_t lo, std::size_t hi) {
                    auto& m = local[t];
                    m.sum.assign(held_count, 0.0);
                    m.sum_sq.assign(held_count, 0.0);
                    for (std::size_t i = lo; i < hi; ++i) {
                      const auto& inst = family.instances[i];
                      for (std::uint8_t k = 0; k < inst.n_edges; ++k) {
                        const std::uint32_t e = inst.held_idx[k];
                        m.sum[e] += inst.inv_prob;
                        m.sum_sq[e] += inst.inv_prob * inst.inv_prob;
                      }
                    }
                  });
  for (unsigned t = 1; t < lanes; ++t) {
    if (local[t].sum.empty()) continue;
    for (std::size_t e = 0; e < held_count; ++e) {
      local[0].sum[e] += local[t].sum[e];
      local[0].sum_sq[e] += local[t].sum_sq[e];
    }
  }
  if (local[0].sum.empty()) {
    local[0].sum.assign(held_count, 0.0);
    local[0].sum_sq.assign(held_count, 0.0);
  }
  return std::move(local[0]);
}

}  // namespace

std::optional<PairOverlap> pair_overlap(const SubgraphInstance& j1,
                                        const SubgraphInstance& j2,
                                        const SampleState& state) {
  PairOverlap overlap;
  overlap.j1 = j1;
  overlap.j2 = j2;
  double p_shared = 1.0;
  for (std::uint8_t a = 0; a < j1.n_edges; ++a) {
    for (std::uint8_t b = 0; b < j2.n_edges; ++b) {
      if (j1.held_idx[a] == j2.held_idx[b]) {
        overlap.shared.push_back(j1.held_idx[a]);
        p_shared *= state.numeric_prob(j1.held_idx[a]);
      }
    }
  }
  if (overlap.shared.empty()) return std::nullopt;
  // P(J u J') = P(J) P(J') / P(J n J')
  overlap.union_inv_prob = j1.inv_prob * j2.inv_prob * p_shared;
  overlap.shared_inv_prob = 1.0 / p_shared;
  return overlap;
}

double var_single(const SubgraphFamily& family) {
  double total = 0.0;
  for (const auto& inst : family.instances) {
    total += inst.inv_prob * (inst.inv_prob - 1.0);
  }
  return total;
}

double var_family(const SubgraphFamily& family, const SampleState& state,
                  unsigned threads) {
  const std::size_t held_count = state.size();
  const EdgeMoments m = accumulate_moments(family, held_count, threads);

  const unsigned lanes = std::max(1u, threads);
  std::vector<double> partial(lanes, 0.0);
  parallel_chunks(held_count, threads,
                  [&](unsigned t, std::size_t lo, std::size_t hi) {
                    double s = 0.0;
                    for (std::size_t e = lo; e < hi; ++e) {
                      const double pe = state.numeric_prob(e);
                      s += (m.sum[e] * m.sum[e] - m.sum_sq[e]) * (1.0 - pe);
                    }
                    partial[t] += s;
                  });
  double off_diag = 0.0;
  for (double s : partial) off_diag += s;
  return var_single(family) + off_diag;
}

double cov_triangle_wedge(const SubgraphFamily& tri, const SubgraphFamily& wedge,
                          const SampleState& state, unsigned threads) {
  const std::size_t held_count = state.size();
  const EdgeMoments mt = accumulate_moments(tri, held_count, threads);
  const EdgeMoments ml = accumulate_moments(wedge, held_count, threads);

  const unsigned lanes = std::max(1u, threads);
  std::vector<double> partial(lanes, 0.0);
  // Pairs sharing exactly one edge, grouped by that edge. This also counts
  // each triangle-internal wedge at both of its edges with 1-edge weights;
  // corrected below.
  parallel_chunks(held_count, threads,
                  [&](unsigned t, std::size_t lo, std::size_t hi) {
                    double s = 0.0;
                    for (std::size_t e = lo; e < hi; ++e) {
                      s += mt.sum[e] * ml.sum[e] * (1.0 - state.numeric_prob(e));
                    }
                    partial[t] += s;
                  });

  std::vector<double> correction(lanes, 0.0);
  parallel_chunks(tri.instances.size(), threads,
                  [&](unsigned t, std::size_t lo, std::size_t hi) {
                    double s = 0.0;
                    for (std::size_t i = lo; i < hi; ++i) {
                      const auto& tau = tri.instances[i];
                      for (int x = 0; x < 3; ++x) {
                        for (int y = x + 1; y < 3; ++y) {
                          const std::uint32_t e1 = tau.held_idx[x];
                          const std::uint32_t e2 = tau.held_idx[y];
                          const double p1 = state.numeric_prob(e1);
                          const double p2 = state.numeric_prob(e2);
                          const double inv_l = 1.0 / (p1 * p2);
                          // Replace the two single-edge countings of this
                          // internal wedge by the true two-edge term.
                          s += tau.inv_prob * inv_l *
                               ((1.0 - p1 * p2) - (1.0 - p1) - (1.0 - p2));
                        }
                      }
                    }
                    correction[t] += s;
                  });

  double total = 0.0;
  for (unsigned t = 0; t < lanes; ++t) total += partial[t] + correction[t];
  return total;
}

ClusteringVariance var_clustering(double nt, double nl, double var_t,
                                  double var_l, double cov_tl) {
  if (nl == 0.0) {
    throw std::invalid_argument("clustering variance undefined: nl == 0");
  }
  const double nl2 = nl * nl;
  const double v =
      9.0 * (var_t / nl2 + nt * nt * var_l / (nl2 * nl2) -
             2.0 * nt * cov_tl / (nl2 * nl));
  if (v < 0.0) return {0.0, true};
  return {v, false};
}

Interval confidence_interval(double estimate, double variance) {
  if (variance < 0.0) {
    throw std::invalid_argument("negative variance; clamp before calling");
  }
  const double half = kZ95 * std::sqrt(variance);
  return {estimate - half, estimate + half};
}

}  // namespace gsh
