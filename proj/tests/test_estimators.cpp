#include <cmath>

#include "doctest.h"
#include "lrp/errors.hpp"
#include "lrp/estimators.hpp"
#include "lrp/stats.hpp"
#include "lrp/weights.hpp"
#include "oracles.hpp"

using namespace lrp;

TEST_CASE("bfs distances match Floyd-Warshall on random graphs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int d = 1 + static_cast<int>(seed % 2);
    const BoxSpec box(d, d == 1 ? 30 : 6);
    const Graph g = sample_graph_eager(box, ModelParams(0.5 + 0.1 * seed, d), seed);
    const auto dist = oracle::all_pairs(g);
    std::uint32_t diameter = 0;
    for (SiteIndex x = 0; x < box.site_count(); ++x) {
      const auto field = bfs_distances(g, x);
      for (SiteIndex y = 0; y < box.site_count(); ++y) CHECK(field.dist[y] == dist[x][y]);
      CHECK(field.eccentricity() == *std::max_element(dist[x].begin(), dist[x].end()));
      diameter = std::max(diameter, field.eccentricity());
    }
    CHECK(diameter_exact(g) == diameter);
    CHECK(diameter_exact(g, 3) == diameter);
    CHECK(diameter <= static_cast<std::uint32_t>(box.max_distance()));
    std::vector<SiteIndex> sources;
    for (SiteIndex x = 0; x < box.site_count(); ++x) sources.push_back(x);
    const auto ecc = eccentricities(g, sources, 2);
    for (SiteIndex x = 0; x < box.site_count(); ++x) {
      CHECK(ecc[x] == *std::max_element(dist[x].begin(), dist[x].end()));
    }
  }
}

TEST_CASE("diameter examples") {
  const Graph path = sample_graph_eager(BoxSpec(1, 20), ModelParams(1e-12, 1), 1);
  CHECK(diameter_exact(path) == 20);
  CHECK(diameter_exact(sample_graph_eager(BoxSpec(1, 1), ModelParams(1.0, 1), 1)) == 1);
  CHECK(diameter_sampled(path, path.site_count(), 3) == 20);
  for (std::uint64_t k = 1; k < 5; ++k) CHECK(diameter_sampled(path, k, 3) <= 20);
  CHECK(diameter_sampled(path, 1, 3) >= 10);
  CHECK_THROWS_AS(diameter_exact(path, 1, 5), BudgetExceeded);

  const Graph g = sample_graph_eager(BoxSpec(2, 12), ModelParams(1.0, 2), 4);
  const auto exact = diameter_exact(g);
  std::uint32_t previous = 0;
  for (std::uint64_t k : {1, 10, 50, 169}) {
    const auto s = diameter_sampled(g, k, 77);
    CHECK(s <= exact);
    CHECK(s >= previous);
    previous = s;
  }
  CHECK(previous == exact);
}

TEST_CASE("scaling statistic") {
  CHECK(scaling_statistic(0, 100) == 0.0);
  const double n = 16.0;
  CHECK(scaling_statistic(5, 16) == doctest::Approx(5 * std::log(std::log(n)) / std::log(n)));
  CHECK_THROWS_AS(scaling_statistic(3, 15), DomainError);
}

TEST_CASE("two-ball parameters") {
  const BoxSpec box(1, 512);
  const double ln = std::log(512.0);
  CHECK(two_ball_m_star(box, 0.4) == static_cast<std::uint64_t>(std::floor(0.7 * ln / std::log(ln))));
  CHECK(two_ball_event_threshold(box, 0.4) == doctest::Approx(std::pow(512.0, 0.6)));
}

TEST_CASE("two-ball procedure") {
  const BoxSpec box(1, 256);
  const ConnectionKernel k(box, ModelParams(1.0, 1));
  const Site x = make_site(box, Coords{100});
  const Site near = make_site(box, Coords{104});
  Rng rng(1);
  const auto touching = two_ball_tau_annealed(k, x, near, 2, 0.4, rng);
  CHECK(touching.tau == 0);
  CHECK(touching.distance_bound == 4);

  const Site far = make_site(box, Coords{250});
  const auto o = two_ball_tau_annealed(k, x, far, 2, 0.4, rng);
  CHECK(o.tau > 0);
  CHECK(o.distance_bound == 4 + o.tau);
  CHECK(o.m_star == two_ball_m_star(box, 0.4));
  CHECK_FALSE(o.timed_out);

  CHECK_THROWS_AS(two_ball_tau_annealed(k, x, far, 0, 0.4, rng), DomainError);
  CHECK_THROWS_AS(two_ball_tau_annealed(k, x, far, 2, 0.5, rng), DomainError);

  const auto a = two_ball_tau_annealed(box, k.params(), x, far, 2, 0.4, 9);
  const auto b = two_ball_tau_annealed(box, k.params(), x, far, 2, 0.4, 9);
  CHECK(a.tau == b.tau);
  CHECK(a.boundary_x_at_m_star == b.boundary_x_at_m_star);

  const auto capped = two_ball_tau_annealed(k, x, far, 1, 0.4, rng, 1);
  CHECK(capped.timed_out);
}

TEST_CASE("quenched two-ball bound is sound") {
  const BoxSpec box(1, 128);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Graph g = sample_graph_eager(box, ModelParams(1.0, 1), seed);
    Rng pick(seed + 1000);
    const Site x = site_from_index(box, pick.below(box.site_count()));
    const Site y = site_from_index(box, pick.below(box.site_count()));
    const auto o = two_ball_tau_quenched(g, x, y, 2, 0.4);
    CHECK(bfs_distances(g, x).dist[y.index] <= o.distance_bound);
  }
}

TEST_CASE("chernoff check at a fixed state") {
  const BoxSpec box(1, 128);
  const ConnectionKernel k(box, ModelParams(1.0, 1));
  const BallState s = init_ball(box, {64});
  const auto c = chernoff_tail_check(k, s, 0.5, 2000, 3);
  CHECK(c.conditional_mean == doctest::Approx(expected_boundary_growth(k, s)));
  CHECK(c.bound == doctest::Approx(2 * std::exp(-0.25 * c.conditional_mean / 3)));
  CHECK(c.passed());
  CHECK_THROWS_AS(chernoff_tail_check(k, s, 0.5, 10, 3), DomainError);
}

TEST_CASE("growth constants and default radius") {
  const BoxSpec box(1, 256);
  const ConnectionKernel k(box, ModelParams(1.0, 1));
  const auto g = calibrate_growth_constants(k, {128}, 0.7, 50, 2);
  CHECK(g.steps_used > 0);
  CHECK(g.c1 > 0.0);
  CHECK(g.c1 <= g.upper);
  CHECK(g.c2 == doctest::Approx(g.c_lower / 12));
  CHECK(growth_ratio_coverage(k, {128}, 0.7, g, 50, 2) == 1.0);
  const auto r = default_radius(g.c2, box);
  const double ln = std::log(256.0);
  CHECK(4 * std::exp(-g.c2 * r * ln) < 1e-3);
  if (r > 1) CHECK(4 * std::exp(-g.c2 * (r - 1) * ln) >= 1e-3);
}

TEST_CASE("statistics helpers") {
  CHECK(stats::quantile({1, 2, 3, 4}, 0.5) == 2.5);
  CHECK(stats::quantile({5, 1, 3}, 0.0) == 1.0);
  CHECK(stats::quantile({1, 2, 3, 4, 5}, 0.1) == doctest::Approx(1.4));
  CHECK(stats::variance(std::vector<double>{1, 2, 3, 4}) == doctest::Approx(5.0 / 3));
  CHECK(stats::binomial_standard_error(0.5, 100) == doctest::Approx(0.05));
  const auto same = stats::ks_two_sample({1, 2, 3, 4}, {1, 2, 3, 4});
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == doctest::Approx(1.0));
  std::vector<double> a;
  std::vector<double> b;
  for (int i = 0; i < 500; ++i) {
    a.push_back(i);
    b.push_back(i + 250);
  }
  CHECK(stats::ks_two_sample(a, b).statistic == doctest::Approx(0.5));
  CHECK(stats::ks_two_sample(a, b).p_value < 1e-10);
  CHECK(stats::kolmogorov_survival(1.36) == doctest::Approx(0.05).epsilon(0.02));
}
