#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lrp/ballgrowth.hpp"
#include "lrp/graph.hpp"
#include "lrp/kernel.hpp"
#include "lrp/lattice.hpp"
#include "lrp/random.hpp"

namespace lrp {

/// Graph distances from one source to every site.
struct DistanceField {
  Site source;
  std::vector<std::uint32_t> dist;

  std::uint32_t eccentricity() const noexcept;
};

DistanceField bfs_distances(const Graph& graph, const Site& source);
DistanceField bfs_distances(const Graph& graph, SiteIndex source);

/// Eccentricities of the given sources, computed 64 sources at a time with
/// bit-parallel breadth-first search over the shared graph.
std::vector<std::uint32_t> eccentricities(const Graph& graph, std::span<const SiteIndex> sources,
                                          unsigned threads = 1);

inline constexpr std::uint64_t kDefaultBfsSourceBudget = 1'000'000;

/// Max eccentricity over all sources. Refuses (BudgetExceeded) boxes with
/// more sites than `source_budget`; use diameter_sampled there.
std::uint32_t diameter_exact(const Graph& graph, unsigned threads = 1,
                             std::uint64_t source_budget = kDefaultBfsSourceBudget);

/// Lower bound on the diameter: max eccentricity over k sources drawn
/// uniformly without replacement (a prefix of a seeded random permutation,
/// so larger k gives a superset of sources).
std::uint32_t diameter_sampled(const Graph& graph, std::uint64_t k, std::uint64_t seed, unsigned threads = 1);

/// floor((1/2 + eps/2) d log N / log log N).
std::uint64_t two_ball_m_star(const BoxSpec& box, double eps);
/// N^{(1/2 + eps/4) d}.
double two_ball_event_threshold(const BoxSpec& box, double eps);

struct TwoBallOutcome {
  GrowthMode mode = GrowthMode::Annealed;
  Site x;
  Site y;
  std::int64_t radius = 0;
  std::uint64_t tau = 0;
  std::uint64_t distance_bound = 0;  // 2R + tau
  std::uint64_t m_star = 0;
  std::uint64_t boundary_x_at_m_star = 0;
  std::uint64_t boundary_y_at_m_star = 0;
  bool event_x = false;
  bool event_y = false;
  bool timed_out = false;
};

/// Alternating growth from the l1 balls of radius R around x and y; the
/// x-ball moves at odd t, the y-ball at even t, so after step t the balls
/// have radii floor((t+1)/2) and floor(t/2). tau is the first t at which
/// the two balls share a site. With fresh randomness per step, a new site of
/// one ball lying in the other includes every edge between the two current
/// boundaries. The chains are then continued (if needed) to step m_star to
/// evaluate the boundary-size events.
TwoBallOutcome two_ball_tau_annealed(const ConnectionKernel& kernel, const Site& x, const Site& y,
                                     std::int64_t radius, double eps, Rng& rng, std::uint64_t max_steps = 0);
TwoBallOutcome two_ball_tau_annealed(const BoxSpec& box, const ModelParams& params, const Site& x, const Site& y,
                                     std::int64_t radius, double eps, std::uint64_t seed,
                                     std::uint64_t max_steps = 0);
/// Same procedure on a stored graph; D(x, y) <= 2R + tau holds exactly.
TwoBallOutcome two_ball_tau_quenched(const Graph& graph, const Site& x, const Site& y, std::int64_t radius,
                                     double eps, std::uint64_t max_steps = 0);

/// D log log N / log N with natural logarithms; N must be at least 16.
double scaling_statistic(std::uint64_t diameter, std::int64_t side);

struct ChernoffCheck {
  double delta = 0.0;
  double conditional_mean = 0.0;
  std::uint64_t trials = 0;
  double empirical_tail = 0.0;
  double bound = 0.0;  // 2 exp(-delta^2 mean / 3)
  double standard_error = 0.0;
  bool skipped = false;  // conditional mean is zero

  bool passed() const noexcept { return skipped || empirical_tail <= bound + 3.0 * standard_error; }
};

/// Repeats one annealed step from `state` and measures how often
/// |dB_{m+1}| / E leaves [1 - delta, 1 + delta].
ChernoffCheck chernoff_tail_check(const ConnectionKernel& kernel, const BallState& state, double delta,
                                  std::uint64_t trials, std::uint64_t seed);

/// Growth constants fitted from annealed chain runs, over steps whose
/// starting ball satisfies |B_m| <= N^{alpha d}:
///   c1      = min |dB_{m+1}| / |dB_m| / log N
///   upper   = max |dB_{m+1}| / |dB_m| / log N
///   c_lower = min E[|dB_{m+1}| | B_m] / (|dB_m| log N)
///   c2      = c_lower / 12 (the Chernoff exponent delta^2 c_lower / 3 at delta = 1/2)
struct GrowthConstants {
  double c1 = 0.0;
  double upper = 0.0;
  double c_lower = 0.0;
  double c2 = 0.0;
  std::uint64_t steps_used = 0;
};

GrowthConstants calibrate_growth_constants(const ConnectionKernel& kernel, const SiteSet& start, double alpha,
                                           std::uint64_t trials, std::uint64_t seed);

/// Fraction of steps (with |B_m| <= N^{alpha d}) whose ratio lies in
/// [c1 log N, upper log N].
double growth_ratio_coverage(const ConnectionKernel& kernel, const SiteSet& start, double alpha,
                             const GrowthConstants& constants, std::uint64_t trials, std::uint64_t seed);

/// Smallest R >= 1 with 4 N^{-c2 R^d} < 1e-3.
std::int64_t default_radius(double c2, const BoxSpec& box);

}  // namespace lrp
