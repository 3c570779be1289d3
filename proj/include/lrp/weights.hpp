#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lrp/ballgrowth.hpp"
#include "lrp/kernel.hpp"
#include "lrp/lattice.hpp"

namespace lrp {

/// rho(y, S) = sum over x in S, x != y of beta / ||x - y||^s, accumulated
/// with compensated summation in ascending site-index order.
double rho(const ConnectionKernel& kernel, SiteIndex y, std::span<const SiteIndex> set);
double rho(const ModelParams& params, const BoxSpec& box, const Site& y, std::span<const SiteIndex> set);

struct WeightReport {
  double rho = 0.0;
  Site site;
  std::uint64_t set_size = 0;
  std::uint64_t complement_size = 0;
};
WeightReport weight_report(const ConnectionKernel& kernel, const Site& y, std::span<const SiteIndex> set);

/// Probability that y (not in S) is joined to S by one draw of the graph:
/// 1 when S holds a lattice neighbour of y, else 1 - exp(-rho(y, S)).
double connection_probability(const ConnectionKernel& kernel, SiteIndex y, std::span<const SiteIndex> set);

/// E[|dB_{m+1}| | B_m] = sum over y outside B_m of P(y joined to dB_m).
double expected_boundary_growth(const ConnectionKernel& kernel, const BallState& state);

struct ElementaryBounds {
  double lower = 0.0;  // rho (1 - rho)
  double upper = 0.0;  // rho
};
/// Bounds bracketing 1 - exp(-rho) for rho >= 0.
ElementaryBounds elementary_bounds(double rho_value);

struct ExtremalRho {
  double min_rho = 0.0;
  double max_rho = 0.0;
};

/// Exact min / max of rho(x, V) over |V| = k, x not in V, for every k at
/// once: the maximum takes the k sites closest to x, the minimum the k
/// farthest. Entry k of each array holds the value for |V| = k.
struct ExtremalRhoProfile {
  std::vector<double> min_rho;
  std::vector<double> max_rho;
};
ExtremalRhoProfile extremal_rho_profile(const ConnectionKernel& kernel, SiteIndex x);
ExtremalRho extremal_rho(const ConnectionKernel& kernel, SiteIndex x, std::uint64_t k);

/// Constants for c log(N^d / |V^c|) <= rho(x, V) <= C log |V| (k = |V| >= 2).
struct WeightConstants {
  double lower = 0.0;  // c
  double upper = 0.0;  // C
};

/// Fits (c, C) from the extremal profiles of the given sites, then shrinks c
/// and inflates C by `margin`.
WeightConstants calibrate_weight_constants(const ConnectionKernel& kernel, std::span<const SiteIndex> sites,
                                           double margin = 0.1);

struct WeightViolation {
  SiteIndex site = 0;
  std::uint64_t k = 0;
  bool lower_side = false;  // false: upper bound violated
  double rho = 0.0;
  double bound = 0.0;
};

struct WeightBoundReport {
  WeightConstants constants;
  std::uint64_t checks = 0;
  std::vector<WeightViolation> violations;
  bool passed() const noexcept { return violations.empty(); }
};

/// Checks both bounds against the extremal values for every k in
/// [2, site_count - 1] and every listed site.
WeightBoundReport weight_bound_check(const ConnectionKernel& kernel, std::span<const SiteIndex> sites,
                                     const WeightConstants& constants);

/// Quantities of the one-step growth sandwich at a chain state, with
/// omega = 1 / log N and V_m = { y outside B_m : rho(y, dB_m) < omega }.
struct IterativeBoundReport {
  double expected_growth = 0.0;
  double upper = 0.0;   // sum over z in dB_m of rho(z, B_m^c)
  double lower = 0.0;   // (1 - omega) sum over z in dB_m of rho(z, V_m)
  double omega = 0.0;
  std::uint64_t v_complement_size = 0;  // |V_m^c|
  std::uint64_t heavy_count = 0;        // |V_m^c \ B_m|
  double pigeonhole_bound = 0.0;        // sum over y outside B_m of rho(y, dB_m), divided by omega
  bool side_condition = true;           // |B_m| <= N^{alpha d}

  bool lower_holds() const noexcept { return lower <= expected_growth; }
  bool upper_holds() const noexcept { return expected_growth <= upper; }
  bool pigeonhole_holds() const noexcept { return static_cast<double>(heavy_count) <= pigeonhole_bound; }
  bool sandwich_holds() const noexcept { return lower_holds() && upper_holds(); }
};

IterativeBoundReport iterative_bound_report(const ConnectionKernel& kernel, const BallState& state, double alpha);

}  // namespace lrp
