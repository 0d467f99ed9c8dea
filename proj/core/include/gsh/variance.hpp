#pragma once

#include <optional>

#include "gsh/estimators.hpp"

namespace gsh {

// One intersecting instance pair (J, J') and the quantities its covariance
// term needs: 1/P(J u J') and the shared edges (J n J'). Disjoint pairs
// contribute zero and are never materialized. The production sums below
// avoid building these at all by grouping on the shared edge; this form
// backs the quadratic reference scan used in tests.
struct PairOverlap {
  SubgraphInstance j1;
  SubgraphInstance j2;
  std::vector<std::uint32_t> shared;  // held-edge indices of J n J'
  double union_inv_prob = 1.0;        // 1 / P(J u J')
  double shared_inv_prob = 1.0;       // 1 / P(J n J')

  // (1/P(J u J')) * (1/P(J n J') - 1); non-negative.
  double cov_term() const { return union_inv_prob * (shared_inv_prob - 1.0); }
};

// Empty when the instances share no edge.
std::optional<PairOverlap> pair_overlap(const SubgraphInstance& j1,
                                        const SubgraphInstance& j2,
                                        const SampleState& state);

// Diagonal variance term: sum over instances of (1/P(J)) * (1/P(J) - 1).
// For the edge family this is already the complete variance estimate,
// since distinct single edges never intersect.
double var_single(const SubgraphFamily& family);

// Unbiased variance estimate for a family count: var_single plus, for every
// ordered pair of distinct intersecting instances, the covariance term
// (1/P(J u J')) * (1/P(J n J') - 1). Distinct triangles (and distinct
// wedges) of a simple graph intersect in at most one edge, so the pair sum
// is grouped by that shared held edge. Partial sums over held edges may be
// computed on `threads` workers; reduction order is fixed.
double var_family(const SubgraphFamily& family, const SampleState& state,
                  unsigned threads = 1);

// Covariance estimate between the triangle and wedge count estimators:
// sum over sampled pairs (tau, L) with a non-empty edge intersection of
// (1/P(tau u L)) * (1/P(tau n L) - 1). A wedge inside tau shares two edges
// with it; those pairs are handled by iterating each sampled triangle's
// three internal wedges directly.
double cov_triangle_wedge(const SubgraphFamily& tri, const SubgraphFamily& wedge,
                          const SampleState& state, unsigned threads = 1);

struct ClusteringVariance {
  double value = 0.0;
  bool clamped = false;  // delta-method value was negative and clamped to 0
};

// Delta-method variance of alpha = 3*N_T/N_Lambda with all quantities
// replaced by their estimates:
//   9 * [ var_t/nl^2 + nt^2*var_l/nl^4 - 2*nt*cov_tl/nl^3 ].
// Throws std::invalid_argument when nl == 0.
ClusteringVariance var_clustering(double nt, double nl, double var_t,
                                  double var_l, double cov_tl);

struct Interval {
  double lb = 0.0;
  double ub = 0.0;
};

// 95% normal interval: estimate -/+ 1.96*sqrt(variance). Bounds are not
// truncated at zero. Throws std::invalid_argument on negative variance.
Interval confidence_interval(double estimate, double variance);

}  // namespace gsh
