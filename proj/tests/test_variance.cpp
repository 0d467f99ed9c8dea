#include <cmath>

#include "doctest.h"
#include "gsh/variance.hpp"
#include "support/testutil.hpp"

using namespace gsh;

TEST_SUITE_BEGIN("variance");

TEST_CASE("var_single on one held edge of class p") {
  SamplerConfig cfg{0.5, 0.5, true, 0};
  const SampleState state = test::make_state(cfg, {{Edge{1, 2}, ProbClass::p}});
  const auto fam = enumerate(state, SubgraphKind::edge);
  CHECK(var_single(fam) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("all variance estimates vanish at p=q=1") {
  const EdgeStream s = test::er_graph(30, 0.25, 3);
  const SampleState state = run(s, SamplerConfig{1.0, 1.0, true, 0});
  for (SubgraphKind kind :
       {SubgraphKind::edge, SubgraphKind::wedge, SubgraphKind::triangle}) {
    const auto fam = enumerate(state, kind);
    CHECK(var_single(fam) == 0.0);
    CHECK(var_family(fam, state) == 0.0);
  }
  const auto tri = enumerate(state, SubgraphKind::triangle);
  const auto wed = enumerate(state, SubgraphKind::wedge);
  CHECK(cov_triangle_wedge(tri, wed, state) == 0.0);
}

TEST_CASE("single fully closing triangle has zero variance") {
  SamplerConfig cfg{0.5, 0.5, true, 0};
  const SampleState state = test::make_state(cfg, {{Edge{1, 2}, ProbClass::one},
                                                   {Edge{2, 3}, ProbClass::one},
                                                   {Edge{1, 3}, ProbClass::one}});
  const auto tri = enumerate(state, SubgraphKind::triangle);
  CHECK(var_family(tri, state) == 0.0);
}

TEST_CASE("two triangles sharing one edge: hand-computed total") {
  // nodes 1-4; triangles (1,2,3) and (2,3,4) share edge (2,3); all class p=0.5
  SamplerConfig cfg{0.5, 0.5, true, 0};
  const SampleState state = test::make_state(cfg, {{Edge{1, 2}, ProbClass::p},
                                                   {Edge{2, 3}, ProbClass::p},
                                                   {Edge{1, 3}, ProbClass::p},
                                                   {Edge{2, 4}, ProbClass::p},
                                                   {Edge{3, 4}, ProbClass::p}});
  const auto tri = enumerate(state, SubgraphKind::triangle);
  REQUIRE(tri.instances.size() == 2);
  // diagonal: 2 * 8*7 = 112; ordered off-diagonal: 2 * 32 * (1/0.5 - 1) = 64
  CHECK(var_family(tri, state) == doctest::Approx(176.0).epsilon(1e-12));
  CHECK(test::naive_var_family(tri, state) == doctest::Approx(176.0).epsilon(1e-12));
}

TEST_CASE("edge-grouped pairing equals the naive all-pairs scan") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const EdgeStream s = test::er_graph(30, 0.25, 500 + seed);
    const SampleState state = run(s, SamplerConfig{0.4, 0.7, true, seed});
    for (SubgraphKind kind : {SubgraphKind::wedge, SubgraphKind::triangle}) {
      const auto fam = enumerate(state, kind);
      if (fam.instances.empty() || fam.instances.size() > 200) continue;
      ++checked;
      const double grouped = var_family(fam, state);
      const double naive = test::naive_var_family(fam, state);
      CHECK(std::abs(grouped - naive) <=
            1e-9 * std::max(1.0, std::abs(naive)));
    }
  }
  CHECK(checked > 4);
}

TEST_CASE("cov_triangle_wedge on a fully held K3 with p classes") {
  SamplerConfig cfg{0.5, 0.5, true, 0};
  const SampleState state = test::make_state(cfg, {{Edge{1, 2}, ProbClass::p},
                                                   {Edge{2, 3}, ProbClass::p},
                                                   {Edge{1, 3}, ProbClass::p}});
  const auto tri = enumerate(state, SubgraphKind::triangle);
  const auto wed = enumerate(state, SubgraphKind::wedge);
  // three internal wedges, each sharing two edges with the triangle:
  // 3 * (1/P(tau)) * (1/P(L) - 1) = 3 * 8 * 3 = 72
  CHECK(cov_triangle_wedge(tri, wed, state) == doctest::Approx(72.0).epsilon(1e-12));
  CHECK(test::naive_cov_triangle_wedge(tri, wed, state) ==
        doctest::Approx(72.0).epsilon(1e-12));
}

TEST_CASE("cov_triangle_wedge equals the naive pair scan") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const EdgeStream s = test::er_graph(25, 0.35, 900 + seed);
    const SampleState state = run(s, SamplerConfig{0.5, 0.8, true, seed});
    const auto tri = enumerate(state, SubgraphKind::triangle);
    const auto wed = enumerate(state, SubgraphKind::wedge);
    const double grouped = cov_triangle_wedge(tri, wed, state);
    const double naive = test::naive_cov_triangle_wedge(tri, wed, state);
    CHECK(std::abs(grouped - naive) <= 1e-9 * std::max(1.0, std::abs(naive)));
  }
}

TEST_CASE("pair_overlap matches the independent per-pair computation") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const EdgeStream s = test::er_graph(20, 0.35, 2200 + seed);
    const SampleState state = run(s, SamplerConfig{0.5, 0.8, true, seed});
    const auto tri = enumerate(state, SubgraphKind::triangle);
    const auto wed = enumerate(state, SubgraphKind::wedge);
    for (const auto& t : tri.instances) {
      for (const auto& l : wed.instances) {
        const auto overlap = pair_overlap(t, l, state);
        const double expected = test::pair_cov_term(t, l, state);
        if (!overlap) {
          CHECK(expected == 0.0);
          continue;
        }
        CHECK(test::close(overlap->cov_term(), expected));
        CHECK(overlap->shared.size() ==
              test::shared_edges(t, l).size());
      }
    }
  }
}

TEST_CASE("pair covariance terms are non-negative and ordered") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const EdgeStream s = test::er_graph(30, 0.25, 1300 + seed);
    const SampleState state = run(s, SamplerConfig{0.3, 0.6, true, seed});
    for (SubgraphKind kind : {SubgraphKind::wedge, SubgraphKind::triangle}) {
      const auto fam = enumerate(state, kind);
      const double diag = var_single(fam);
      const double full = var_family(fam, state);
      CHECK(diag >= 0.0);
      CHECK(full >= diag - 1e-12 * std::max(1.0, diag));
      for (std::size_t i = 0; i < fam.instances.size(); ++i) {
        for (std::size_t j = i + 1; j < fam.instances.size(); ++j) {
          CHECK(test::pair_cov_term(fam.instances[i], fam.instances[j], state) >=
                0.0);
        }
      }
    }
  }
}

TEST_CASE("partitioned variance matches sequential within 1e-9") {
  const EdgeStream s = test::er_graph_mean_degree(300, 12.0, 7);
  const SampleState state = run(s, SamplerConfig{0.5, 0.5, true, 11});
  const auto wed = enumerate(state, SubgraphKind::wedge);
  const auto tri = enumerate(state, SubgraphKind::triangle);
  REQUIRE(wed.instances.size() > 4096);

  const double seq = var_family(wed, state, 1);
  const double par = var_family(wed, state, 4);
  CHECK(std::abs(seq - par) <= 1e-9 * std::abs(seq));

  const double cseq = cov_triangle_wedge(tri, wed, state, 1);
  const double cpar = cov_triangle_wedge(tri, wed, state, 4);
  CHECK(std::abs(cseq - cpar) <= 1e-9 * std::max(1.0, std::abs(cseq)));
}

TEST_CASE("delta-method clustering variance") {
  CHECK(var_clustering(1.0, 3.0, 0.0, 0.0, 0.0).value == 0.0);
  const auto single = var_clustering(1.0, 3.0, 0.5, 0.0, 0.0);
  CHECK(single.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_FALSE(single.clamped);

  // a large covariance term drives the expansion negative; clamp and flag
  const auto clamped = var_clustering(1.0, 1.0, 0.0, 0.0, 5.0);
  CHECK(clamped.value == 0.0);
  CHECK(clamped.clamped);

  CHECK_THROWS_AS(var_clustering(1.0, 0.0, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("confidence intervals") {
  const Interval exact = confidence_interval(100.0, 0.0);
  CHECK(exact.lb == 100.0);
  CHECK(exact.ub == 100.0);

  const Interval unit = confidence_interval(0.0, 1.0);
  CHECK(unit.lb == doctest::Approx(-1.96).epsilon(1e-12));
  CHECK(unit.ub == doctest::Approx(1.96).epsilon(1e-12));

  // bounds are not truncated at zero
  const Interval wide = confidence_interval(1.0, 4.0);
  CHECK(wide.lb == doctest::Approx(1.0 - 3.92).epsilon(1e-12));

  CHECK_THROWS_AS(confidence_interval(1.0, -0.5), std::invalid_argument);
}

TEST_SUITE_END();
