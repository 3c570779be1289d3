#include "lrp/estimators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "lrp/errors.hpp"
#include "lrp/parallel.hpp"
#include "lrp/stats.hpp"
#include "lrp/weights.hpp"

namespace lrp {

std::uint32_t DistanceField::eccentricity() const noexcept {
  return dist.empty() ? 0 : *std::max_element(dist.begin(), dist.end());
}

DistanceField bfs_distances(const Graph& graph, SiteIndex source) {
  if (source >= graph.site_count()) throw DomainError("BFS source outside box");
  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  DistanceField field{site_from_index(graph.box(), source), std::vector<std::uint32_t>(graph.site_count(), kUnseen)};
  std::vector<SiteIndex> queue;
  queue.reserve(graph.site_count());
  queue.push_back(source);
  field.dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const SiteIndex u = queue[head];
    for (SiteIndex w : graph.neighbors(u)) {
      if (field.dist[w] == kUnseen) {
        field.dist[w] = field.dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return field;
}

DistanceField bfs_distances(const Graph& graph, const Site& source) {
  return bfs_distances(graph, site_index(graph.box(), source.coords));
}

namespace {

void eccentricity_batch(const Graph& graph, std::span<const SiteIndex> sources, std::span<std::uint32_t> out) {
  const std::uint64_t n = graph.site_count();
  std::vector<std::uint64_t> frontier(n, 0);
  std::vector<std::uint64_t> visited(n, 0);
  std::vector<std::uint64_t> next(n, 0);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    frontier[sources[i]] |= std::uint64_t{1} << i;
    visited[sources[i]] |= std::uint64_t{1} << i;
    out[i] = 0;
  }
  const std::uint64_t all = sources.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << sources.size()) - 1;
  for (std::uint32_t level = 1;; ++level) {
    std::uint64_t reached = 0;
    for (SiteIndex v = 0; v < n; ++v) {
      if (visited[v] == all) {
        next[v] = 0;
        continue;
      }
      std::uint64_t m = 0;
      for (SiteIndex u : graph.neighbors(v)) m |= frontier[u];
      m &= ~visited[v];
      next[v] = m;
      reached |= m;
    }
    if (reached == 0) break;
    for (std::uint64_t bits = reached; bits != 0; bits &= bits - 1) out[std::countr_zero(bits)] = level;
    for (SiteIndex v = 0; v < n; ++v) visited[v] |= next[v];
    frontier.swap(next);
  }
}

}  // namespace

std::vector<std::uint32_t> eccentricities(const Graph& graph, std::span<const SiteIndex> sources, unsigned threads) {
  for (SiteIndex s : sources) {
    if (s >= graph.site_count()) throw DomainError("BFS source outside box");
  }
  std::vector<std::uint32_t> ecc(sources.size(), 0);
  const std::uint64_t batches = (sources.size() + 63) / 64;
  parallel_for(batches, threads, [&](std::uint64_t b) {
    const std::size_t lo = b * 64;
    const std::size_t len = std::min<std::size_t>(64, sources.size() - lo);
    eccentricity_batch(graph, sources.subspan(lo, len), std::span<std::uint32_t>(ecc).subspan(lo, len));
  });
  return ecc;
}

std::uint32_t diameter_exact(const Graph& graph, unsigned threads, std::uint64_t source_budget) {
  if (graph.site_count() > source_budget) {
    throw BudgetExceeded("exact diameter needs " + std::to_string(graph.site_count()) +
                         " BFS sources (budget " + std::to_string(source_budget) + "); use diameter_sampled");
  }
  std::vector<SiteIndex> sources(graph.site_count());
  std::iota(sources.begin(), sources.end(), SiteIndex{0});
  const auto ecc = eccentricities(graph, sources, threads);
  return *std::max_element(ecc.begin(), ecc.end());
}

std::uint32_t diameter_sampled(const Graph& graph, std::uint64_t k, std::uint64_t seed, unsigned threads) {
  if (k < 1) throw DomainError("diameter_sampled needs k >= 1");
  const std::uint64_t n = graph.site_count();
  k = std::min(k, n);
  std::vector<SiteIndex> perm(n);
  std::iota(perm.begin(), perm.end(), SiteIndex{0});
  Rng rng(seed);
  for (std::uint64_t i = 0; i < k; ++i) std::swap(perm[i], perm[i + rng.below(n - i)]);
  const auto ecc = eccentricities(graph, std::span<const SiteIndex>(perm).first(k), threads);
  return *std::max_element(ecc.begin(), ecc.end());
}

std::uint64_t two_ball_m_star(const BoxSpec& box, double eps) {
  const double log_n = std::log(static_cast<double>(box.side()));
  return static_cast<std::uint64_t>(std::floor((0.5 + eps / 2.0) * box.dim() * log_n / std::log(log_n)));
}

double two_ball_event_threshold(const BoxSpec& box, double eps) {
  return std::pow(static_cast<double>(box.side()), (0.5 + eps / 4.0) * box.dim());
}

namespace {

template <class Expand>
TwoBallOutcome run_two_ball(GrowthMode mode, const BoxSpec& box, const Site& x, const Site& y, std::int64_t radius,
                            double eps, std::uint64_t max_steps, Expand&& expand) {
  if (radius < 1) throw DomainError("two-ball radius R must be >= 1");
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("two-ball epsilon must lie in (0, 1/2)");
  if (!box.contains(x.coords) || !box.contains(y.coords)) throw DomainError("two-ball endpoints outside box");
  if (max_steps == 0) max_steps = 2 * static_cast<std::uint64_t>(box.max_distance()) + 2;

  TwoBallOutcome out;
  out.mode = mode;
  out.x = x;
  out.y = y;
  out.radius = radius;
  out.m_star = two_ball_m_star(box, eps);

  BallState bx = BallState::init(box, l1_ball(box, x, radius));
  BallState by = BallState::init(box, l1_ball(box, y, radius));
  // history[m] = |dB_m| for each chain.
  std::vector<std::uint64_t> hx{bx.boundary().size()};
  std::vector<std::uint64_t> hy{by.boundary().size()};

  const auto step = [&](BallState& ball, std::vector<std::uint64_t>& history) {
    if (ball.boundary().empty()) {
      history.push_back(0);
      return;
    }
    ball = expand(ball);
    history.push_back(ball.boundary().size());
  };

  bool met = std::any_of(bx.boundary().begin(), bx.boundary().end(), [&](SiteIndex s) { return by.in_ball(s); });
  std::uint64_t t = 0;
  while (!met && t < max_steps) {
    ++t;
    BallState& mover = (t % 2 == 1) ? bx : by;
    const BallState& other = (t % 2 == 1) ? by : bx;
    step(mover, (t % 2 == 1) ? hx : hy);
    met = std::any_of(mover.boundary().begin(), mover.boundary().end(),
                      [&](SiteIndex s) { return other.in_ball(s); });
  }
  out.timed_out = !met;
  out.tau = t;
  out.distance_bound = 2 * static_cast<std::uint64_t>(radius) + t;

  while (hx.size() <= out.m_star) step(bx, hx);
  while (hy.size() <= out.m_star) step(by, hy);
  const double threshold = two_ball_event_threshold(box, eps);
  out.boundary_x_at_m_star = hx[out.m_star];
  out.boundary_y_at_m_star = hy[out.m_star];
  out.event_x = static_cast<double>(out.boundary_x_at_m_star) >= threshold;
  out.event_y = static_cast<double>(out.boundary_y_at_m_star) >= threshold;
  return out;
}

}  // namespace

TwoBallOutcome two_ball_tau_annealed(const ConnectionKernel& kernel, const Site& x, const Site& y,
                                     std::int64_t radius, double eps, Rng& rng, std::uint64_t max_steps) {
  return run_two_ball(GrowthMode::Annealed, kernel.box(), x, y, radius, eps, max_steps,
                      [&](const BallState& s) { return expand_annealed(s, kernel, rng); });
}

TwoBallOutcome two_ball_tau_annealed(const BoxSpec& box, const ModelParams& params, const Site& x, const Site& y,
                                     std::int64_t radius, double eps, std::uint64_t seed, std::uint64_t max_steps) {
  const ConnectionKernel kernel(box, params);
  Rng rng(seed);
  return two_ball_tau_annealed(kernel, x, y, radius, eps, rng, max_steps);
}

TwoBallOutcome two_ball_tau_quenched(const Graph& graph, const Site& x, const Site& y, std::int64_t radius,
                                     double eps, std::uint64_t max_steps) {
  return run_two_ball(GrowthMode::Quenched, graph.box(), x, y, radius, eps, max_steps,
                      [&](const BallState& s) { return expand_quenched(graph, s); });
}

double scaling_statistic(std::uint64_t diameter, std::int64_t side) {
  if (side < 16) throw DomainError("scaling statistic needs N >= 16, got " + std::to_string(side));
  const double log_n = std::log(static_cast<double>(side));
  return static_cast<double>(diameter) * std::log(log_n) / log_n;
}

ChernoffCheck chernoff_tail_check(const ConnectionKernel& kernel, const BallState& state, double delta,
                                  std::uint64_t trials, std::uint64_t seed) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("Chernoff delta must lie in (0, 1)");
  if (trials < 1000) throw DomainError("Chernoff check needs at least 1000 trials");
  ChernoffCheck check;
  check.delta = delta;
  check.trials = trials;
  check.conditional_mean = state.boundary().empty() ? 0.0 : expected_boundary_growth(kernel, state);
  check.bound = 2.0 * std::exp(-delta * delta * check.conditional_mean / 3.0);
  if (check.conditional_mean <= 0.0) {
    check.skipped = true;
    return check;
  }
  const auto round = hit_probabilities(kernel, state.tags(), state.boundary());
  Rng rng(seed);
  std::uint64_t outside = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    std::uint64_t hits = 0;
    for (double p : round.probability) hits += rng.bernoulli(p) ? 1 : 0;
    const double ratio = static_cast<double>(hits) / check.conditional_mean;
    if (ratio < 1.0 - delta || ratio > 1.0 + delta) ++outside;
  }
  check.empirical_tail = static_cast<double>(outside) / static_cast<double>(trials);
  check.standard_error = stats::binomial_standard_error(check.empirical_tail, trials);
  return check;
}

namespace {

/// Runs annealed chains and reports, for every step taken from a state with
/// |B_m| <= threshold, (|dB_m|, E[|dB_{m+1}| | B_m], |dB_{m+1}|).
template <class Visit>
void visit_growth_steps(const ConnectionKernel& kernel, const SiteSet& start, double alpha, std::uint64_t trials,
                        std::uint64_t seed, Visit&& visit) {
  const double threshold = size_threshold(kernel.box(), alpha);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, "growth-steps", trial, "chain"));
    BallState state = BallState::init(kernel.box(), start);
    while (!state.covers_box() && static_cast<double>(state.ball_size()) <= threshold) {
      const double expected = expected_boundary_growth(kernel, state);
      const std::uint64_t before = state.boundary().size();
      state = expand_annealed(state, kernel, rng);
      visit(before, expected, state.boundary().size());
    }
  }
}

}  // namespace

GrowthConstants calibrate_growth_constants(const ConnectionKernel& kernel, const SiteSet& start, double alpha,
                                           std::uint64_t trials, std::uint64_t seed) {
  const double log_n = std::log(static_cast<double>(kernel.box().side()));
  GrowthConstants k;
  k.c1 = std::numeric_limits<double>::infinity();
  k.c_lower = std::numeric_limits<double>::infinity();
  visit_growth_steps(kernel, start, alpha, trials, seed,
                     [&](std::uint64_t before, double expected, std::uint64_t after) {
                       const double ratio = static_cast<double>(after) / static_cast<double>(before) / log_n;
                       k.c1 = std::min(k.c1, ratio);
                       k.upper = std::max(k.upper, ratio);
                       k.c_lower = std::min(k.c_lower, expected / static_cast<double>(before) / log_n);
                       ++k.steps_used;
                     });
  if (k.steps_used == 0) throw DomainError("no chain step satisfied the size condition; raise alpha");
  k.c2 = k.c_lower / 12.0;
  return k;
}

double growth_ratio_coverage(const ConnectionKernel& kernel, const SiteSet& start, double alpha,
                             const GrowthConstants& constants, std::uint64_t trials, std::uint64_t seed) {
  const double log_n = std::log(static_cast<double>(kernel.box().side()));
  std::uint64_t inside = 0;
  std::uint64_t steps = 0;
  visit_growth_steps(kernel, start, alpha, trials, seed, [&](std::uint64_t before, double, std::uint64_t after) {
    const double ratio = static_cast<double>(after) / static_cast<double>(before);
    ++steps;
    if (ratio >= constants.c1 * log_n && ratio <= constants.upper * log_n) ++inside;
  });
  return steps == 0 ? 1.0 : static_cast<double>(inside) / static_cast<double>(steps);
}

std::int64_t default_radius(double c2, const BoxSpec& box) {
  if (!(c2 > 0.0)) throw DomainError("default_radius needs c2 > 0");
  const double needed = std::log(4000.0) / (c2 * std::log(static_cast<double>(box.side())));
  auto r = static_cast<std::int64_t>(std::floor(std::pow(needed, 1.0 / box.dim()))) + 1;
  return std::max<std::int64_t>(1, r);
}

}  // namespace lrp
