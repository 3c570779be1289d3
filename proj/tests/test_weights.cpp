#include <cmath>

#include "doctest.h"
#include "lrp/errors.hpp"
#include "lrp/weights.hpp"
#include "oracles.hpp"

using namespace lrp;

TEST_CASE("rho examples") {
  const BoxSpec box(1, 8);
  const ModelParams p(1.0, 1);
  const Site origin = make_site(box, Coords{0});
  CHECK(rho(p, box, origin, SiteSet{}) == 0.0);
  CHECK(rho(p, box, origin, SiteSet{1, 2, 4}) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(rho(p, box, origin, SiteSet{0, 1}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(rho(ConnectionKernel(box, p), 9, SiteSet{1}), DomainError);
}

TEST_CASE("rho is additive over disjoint sets and matches the oracle") {
  const BoxSpec box(2, 7);
  const ConnectionKernel k(box, ModelParams(1.2, 2));
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    SiteSet a;
    SiteSet b;
    for (SiteIndex i = 0; i < box.site_count(); ++i) {
      const auto u = rng.below(4);
      if (u == 0) a.push_back(i);
      if (u == 1) b.push_back(i);
    }
    SiteSet both = a;
    both.insert(both.end(), b.begin(), b.end());
    std::sort(both.begin(), both.end());
    const SiteIndex y = rng.below(box.site_count());
    CHECK(rho(k, y, both) == doctest::Approx(rho(k, y, a) + rho(k, y, b)).epsilon(1e-13));
    CHECK(rho(k, y, both) == doctest::Approx(oracle::rho(box, 1.2, 2.0, y, both)).epsilon(1e-13));
  }
}

TEST_CASE("connection probability") {
  const BoxSpec box(1, 10);
  const ConnectionKernel k(box, ModelParams(1.0, 1));
  CHECK(connection_probability(k, 3, SiteSet{4, 8}) == 1.0);
  CHECK(connection_probability(k, 0, SiteSet{2, 4}) == doctest::Approx(1.0 - std::exp(-0.75)));
  CHECK_THROWS_AS(connection_probability(k, 2, SiteSet{2}), DomainError);
}

TEST_CASE("expected boundary growth") {
  const BoxSpec small(1, 2);
  const ConnectionKernel k(small, ModelParams(1.0, 1));
  // Site 1 joins surely; site 2 at distance 2 with probability 1 - e^{-1/2}.
  CHECK(expected_boundary_growth(k, init_ball(small, {0})) == doctest::Approx(1.3934693).epsilon(1e-7));
  CHECK(expected_boundary_growth(k, init_ball(small, {0, 1, 2})) == 0.0);

  const BoxSpec box(2, 6);
  const ConnectionKernel k2(box, ModelParams(0.9, 2));
  const SiteSet u{3, 10, 24};
  double sum = 0;
  for (SiteIndex y = 0; y < box.site_count(); ++y) {
    if (std::binary_search(u.begin(), u.end(), y)) continue;
    bool adjacent = false;
    for (auto x : u) adjacent = adjacent || l1_distance(box, x, y) == 1;
    sum += adjacent ? 1.0 : 1.0 - std::exp(-oracle::rho(box, 0.9, 2.0, y, u));
  }
  CHECK(expected_boundary_growth(k2, init_ball(box, u)) == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("elementary bounds examples") {
  const auto zero = elementary_bounds(0.0);
  CHECK(zero.lower == 0.0);
  CHECK(zero.upper == 0.0);
  const auto half = elementary_bounds(0.5);
  CHECK(half.lower == 0.25);
  CHECK(half.upper == 0.5);
  CHECK(half.lower <= -std::expm1(-0.5));
  CHECK(-std::expm1(-0.5) <= half.upper);
  const auto two = elementary_bounds(2.0);
  CHECK(two.lower == -2.0);
  CHECK(two.upper >= -std::expm1(-2.0));
  CHECK_THROWS_AS(elementary_bounds(-1e-9), DomainError);
}

TEST_CASE("extremal rho examples") {
  const BoxSpec box(1, 4);
  const ConnectionKernel k(box, ModelParams(1.0, 1));
  const auto e = extremal_rho(k, 0, 2);
  CHECK(e.max_rho == doctest::Approx(1.5));
  CHECK(e.min_rho == doctest::Approx(1.0 / 3 + 0.25));
  const auto full = extremal_rho(k, 2, 4);
  CHECK(full.min_rho == doctest::Approx(full.max_rho));
  CHECK(full.max_rho == doctest::Approx(rho(k, 2, SiteSet{0, 1, 3, 4})));
  CHECK_THROWS_AS(extremal_rho(k, 0, 0), DomainError);
  CHECK_THROWS_AS(extremal_rho(k, 0, 5), DomainError);
}

TEST_CASE("extremal rho equals subset enumeration") {
  for (int d = 1; d <= 2; ++d) {
    const BoxSpec box(d, d == 1 ? 10 : 2);
    const ConnectionKernel k(box, ModelParams(1.0, d));
    for (SiteIndex x = 0; x < box.site_count(); x += 2) {
      for (std::uint64_t size = 1; size < box.site_count(); ++size) {
        const auto [lo, hi] = oracle::extremal_by_enumeration(box, 1.0, d, x, size);
        const auto e = extremal_rho(k, x, size);
        CHECK(e.min_rho == doctest::Approx(lo).epsilon(1e-13));
        CHECK(e.max_rho == doctest::Approx(hi).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("weight constants calibrated on a small box") {
  const BoxSpec box(1, 32);
  const ConnectionKernel k(box, ModelParams(1.0, 1));
  SiteSet sites;
  for (SiteIndex i = 0; i < box.site_count(); ++i) sites.push_back(i);
  const auto c = calibrate_weight_constants(k, sites);
  CHECK(c.lower > 0.0);
  CHECK(c.upper > c.lower);
  const auto report = weight_bound_check(k, sites, c);
  CHECK(report.passed());
  CHECK(report.checks == 2 * sites.size() * (box.site_count() - 2));
  const auto strict = weight_bound_check(k, sites, {c.lower * 2, c.upper / 2});
  CHECK_FALSE(strict.passed());
}

TEST_CASE("iterative bounds hold on random states") {
  const BoxSpec box(1, 128);
  const ConnectionKernel k(box, ModelParams(1.0, 1));
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    BallState s = init_ball(box, {rng.below(box.site_count())});
    for (int m = 0; m < 3 && !s.covers_box(); ++m) {
      const auto r = iterative_bound_report(k, s, 0.6);
      CHECK(r.omega == doctest::Approx(1.0 / std::log(128.0)));
      CHECK(r.sandwich_holds());
      CHECK(r.pigeonhole_holds());
      CHECK(r.expected_growth == doctest::Approx(expected_boundary_growth(k, s)));
      s = expand_annealed(s, k, rng);
    }
  }
}
