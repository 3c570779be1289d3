#include "lrp/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lrp/errors.hpp"
#include "lrp/graph.hpp"

namespace lrp {
namespace {

/// rho(t, set) for every target t, each accumulated over `set` in order.
std::vector<double> rho_each(const ConnectionKernel& kernel, std::span<const SiteIndex> targets,
                             std::span<const SiteIndex> set) {
  const BoxSpec& box = kernel.box();
  const int d = box.dim();
  std::vector<Coord> set_coords(set.size() * static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < set.size(); ++i) {
    decode_into(box, set[i], std::span<Coord>(set_coords.data() + i * d, static_cast<std::size_t>(d)));
  }
  std::vector<double> out;
  out.reserve(targets.size());
  Coords y(static_cast<std::size_t>(d));
  for (SiteIndex t : targets) {
    decode_into(box, t, y);
    CompensatedSum sum;
    for (std::size_t i = 0; i < set.size(); ++i) {
      const Coord* x = set_coords.data() + i * d;
      std::int64_t r = 0;
      for (int k = 0; k < d; ++k) r += std::abs(x[k] - y[k]);
      if (r != 0) sum.add(kernel.rate(r));
    }
    out.push_back(sum.value());
  }
  return out;
}

double total(std::span<const double> values) {
  CompensatedSum sum;
  for (double v : values) sum.add(v);
  return sum.value();
}

void check_site(const BoxSpec& box, SiteIndex y) {
  if (y >= box.site_count()) throw DomainError("site index " + std::to_string(y) + " outside box");
}

}  // namespace

double rho(const ConnectionKernel& kernel, SiteIndex y, std::span<const SiteIndex> set) {
  check_site(kernel.box(), y);
  for (SiteIndex x : set) check_site(kernel.box(), x);
  const SiteIndex target[] = {y};
  return rho_each(kernel, target, set).front();
}

double rho(const ModelParams& params, const BoxSpec& box, const Site& y, std::span<const SiteIndex> set) {
  return rho(ConnectionKernel(box, params), site_index(box, y.coords), set);
}

WeightReport weight_report(const ConnectionKernel& kernel, const Site& y, std::span<const SiteIndex> set) {
  WeightReport report;
  report.rho = rho(kernel, site_index(kernel.box(), y.coords), set);
  report.site = y;
  report.set_size = set.size();
  report.complement_size = kernel.box().site_count() - set.size();
  return report;
}

double connection_probability(const ConnectionKernel& kernel, SiteIndex y, std::span<const SiteIndex> set) {
  check_site(kernel.box(), y);
  const BoxSpec& box = kernel.box();
  for (SiteIndex x : set) {
    check_site(box, x);
    if (x == y) throw DomainError("connection_probability: site belongs to the set");
    if (l1_distance(box, x, y) == 1) return 1.0;
  }
  return -std::expm1(-rho(kernel, y, set));
}

double expected_boundary_growth(const ConnectionKernel& kernel, const BallState& state) {
  if (state.boundary().empty()) return 0.0;
  const auto round = hit_probabilities(kernel, state.tags(), state.boundary());
  return total(round.probability);
}

ElementaryBounds elementary_bounds(double rho_value) {
  if (!(rho_value >= 0.0)) throw DomainError("elementary_bounds: rho must be >= 0");
  return {rho_value * (1.0 - rho_value), rho_value};
}

ExtremalRhoProfile extremal_rho_profile(const ConnectionKernel& kernel, SiteIndex x) {
  const BoxSpec& box = kernel.box();
  check_site(box, x);
  const std::uint64_t n = box.site_count();
  std::vector<std::uint64_t> at_distance(static_cast<std::size_t>(box.max_distance()) + 1, 0);
  for (SiteIndex y = 0; y < n; ++y) {
    if (y != x) ++at_distance[static_cast<std::size_t>(l1_distance(box, x, y))];
  }

  ExtremalRhoProfile profile;
  profile.max_rho.assign(n, 0.0);
  profile.min_rho.assign(n, 0.0);
  CompensatedSum near;
  std::uint64_t k = 0;
  for (std::size_t r = 1; r < at_distance.size(); ++r) {
    for (std::uint64_t i = 0; i < at_distance[r]; ++i) {
      near.add(kernel.rate(static_cast<std::int64_t>(r)));
      profile.max_rho[++k] = near.value();
    }
  }
  CompensatedSum far;
  k = 0;
  for (std::size_t r = at_distance.size() - 1; r >= 1; --r) {
    for (std::uint64_t i = 0; i < at_distance[r]; ++i) {
      far.add(kernel.rate(static_cast<std::int64_t>(r)));
      profile.min_rho[++k] = far.value();
    }
  }
  return profile;
}

ExtremalRho extremal_rho(const ConnectionKernel& kernel, SiteIndex x, std::uint64_t k) {
  const std::uint64_t n = kernel.box().site_count();
  if (k < 1 || k > n - 1) {
    throw DomainError("extremal_rho: k = " + std::to_string(k) + " outside [1, " + std::to_string(n - 1) + "]");
  }
  const auto profile = extremal_rho_profile(kernel, x);
  return {profile.min_rho[k], profile.max_rho[k]};
}

namespace {

/// log(N^d / (site_count - k)).
double lower_log(const BoxSpec& box, std::uint64_t k) {
  return box.dim() * std::log(static_cast<double>(box.side())) -
         std::log(static_cast<double>(box.site_count() - k));
}

}  // namespace

WeightConstants calibrate_weight_constants(const ConnectionKernel& kernel, std::span<const SiteIndex> sites,
                                           double margin) {
  const BoxSpec& box = kernel.box();
  const std::uint64_t n = box.site_count();
  if (n < 3) throw DomainError("calibration needs at least three sites");
  double c = std::numeric_limits<double>::infinity();
  double upper = 0.0;
  for (SiteIndex x : sites) {
    const auto profile = extremal_rho_profile(kernel, x);
    for (std::uint64_t k = 2; k < n; ++k) {
      const double l = lower_log(box, k);
      if (l > 0.0) c = std::min(c, profile.min_rho[k] / l);
      upper = std::max(upper, profile.max_rho[k] / std::log(static_cast<double>(k)));
    }
  }
  return {c * (1.0 - margin), upper * (1.0 + margin)};
}

WeightBoundReport weight_bound_check(const ConnectionKernel& kernel, std::span<const SiteIndex> sites,
                                     const WeightConstants& constants) {
  const BoxSpec& box = kernel.box();
  const std::uint64_t n = box.site_count();
  WeightBoundReport report;
  report.constants = constants;
  for (SiteIndex x : sites) {
    const auto profile = extremal_rho_profile(kernel, x);
    for (std::uint64_t k = 2; k < n; ++k) {
      const double lower = constants.lower * lower_log(box, k);
      const double upper = constants.upper * std::log(static_cast<double>(k));
      report.checks += 2;
      if (profile.min_rho[k] < lower) report.violations.push_back({x, k, true, profile.min_rho[k], lower});
      if (profile.max_rho[k] > upper) report.violations.push_back({x, k, false, profile.max_rho[k], upper});
    }
  }
  return report;
}

IterativeBoundReport iterative_bound_report(const ConnectionKernel& kernel, const BallState& state, double alpha) {
  const BoxSpec& box = kernel.box();
  IterativeBoundReport report;
  report.omega = 1.0 / std::log(static_cast<double>(box.side()));
  report.side_condition = static_cast<double>(state.ball_size()) <= size_threshold(box, alpha);
  report.expected_growth = expected_boundary_growth(kernel, state);

  SiteSet outside;
  for (SiteIndex y = 0; y < box.site_count(); ++y) {
    if (!state.in_ball(y)) outside.push_back(y);
  }
  const SiteSet& boundary = state.boundary();
  const auto rho_outside = rho_each(kernel, outside, boundary);

  SiteSet light;  // V_m
  for (std::size_t i = 0; i < outside.size(); ++i) {
    if (rho_outside[i] < report.omega) light.push_back(outside[i]);
  }
  report.heavy_count = outside.size() - light.size();
  report.v_complement_size = box.site_count() - light.size();
  report.pigeonhole_bound = total(rho_outside) / report.omega;

  // Outer sum over the boundary: the swapped order of the double sum above.
  report.upper = total(rho_each(kernel, boundary, outside));
  report.lower = (1.0 - report.omega) * total(rho_each(kernel, boundary, light));
  return report;
}

}  // namespace lrp
