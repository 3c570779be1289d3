#include "lrp/ballgrowth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lrp/errors.hpp"

namespace lrp {

std::string_view to_string(GrowthMode mode) noexcept {
  return mode == GrowthMode::Quenched ? "quenched" : "annealed";
}

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::Covered:
      return "covered";
    case StopReason::MaxSteps:
      return "max_steps";
    case StopReason::ThresholdExceeded:
      return "threshold_exceeded";
  }
  return "unknown";
}

BallState BallState::init(const BoxSpec& box, std::vector<SiteIndex> start) {
  if (start.empty()) throw DomainError("the starting set U must be nonempty");
  BallState state(box);
  state.boundary_ = normalize_set(std::move(start));
  for (SiteIndex x : state.boundary_) {
    if (x >= box.site_count()) throw DomainError("start site " + std::to_string(x) + " outside box");
    state.tags_[x] = kBoundaryTag;
  }
  return state;
}

SiteSet BallState::interior() const {
  SiteSet out;
  out.reserve(interior_size_);
  for (SiteIndex x = 0; x < tags_.size(); ++x) {
    if (tags_[x] == kInteriorTag) out.push_back(x);
  }
  return out;
}

void BallState::advance(const SiteSet& next) {
  for (SiteIndex x : boundary_) tags_[x] = kInteriorTag;
  interior_size_ += boundary_.size();
  for (SiteIndex x : next) {
    if (tags_[x] != kOutsideTag) throw DomainError("new boundary site " + std::to_string(x) + " already in the ball");
    tags_[x] = kBoundaryTag;
  }
  boundary_ = next;
  ++step_;
}

namespace {

void require_live(const BallState& state) {
  if (state.boundary().empty()) {
    throw ChainHalted("cannot expand from an empty boundary at step " + std::to_string(state.step()));
  }
}

}  // namespace

BallState expand_annealed(const BallState& state, const ConnectionKernel& kernel, Rng& rng) {
  require_live(state);
  if (!(kernel.box() == state.box())) throw DomainError("kernel and state refer to different boxes");
  SiteSet hits = draw_hits(hit_probabilities(kernel, state.tags(), state.boundary()), rng);
  // Lattice neighbours of the boundary are hit with probability one, so a
  // ball that does not cover the box always gains a site.
  if (hits.empty() && !state.covers_box()) {
    throw ChainHalted("annealed step produced no sites although the ball does not cover the box");
  }
  BallState next = state;
  next.advance(hits);
  return next;
}

BallState expand_annealed(const BallState& state, const ModelParams& params, std::uint64_t seed) {
  const ConnectionKernel kernel(state.box(), params);
  Rng rng(seed);
  return expand_annealed(state, kernel, rng);
}

BallState expand_quenched(const Graph& graph, const BallState& state) {
  require_live(state);
  if (!(graph.box() == state.box())) throw DomainError("graph and state refer to different boxes");
  std::vector<SiteIndex> layer;
  for (SiteIndex u : state.boundary()) {
    for (SiteIndex w : graph.neighbors(u)) {
      if (!state.in_ball(w)) layer.push_back(w);
    }
  }
  BallState next = state;
  next.advance(normalize_set(std::move(layer)));
  return next;
}

double size_threshold(const BoxSpec& box, double alpha) {
  return std::pow(static_cast<double>(box.side()), alpha * box.dim());
}

namespace {

template <class Expand>
GrowthTrajectory run_chain(GrowthMode mode, BallState state, const StopRule& stop, const StateObserver& observe,
                           Expand&& expand) {
  GrowthTrajectory traj;
  traj.mode = mode;
  traj.boundary_sizes.push_back(state.boundary().size());
  if (observe) observe(state);
  while (true) {
    if (state.covers_box()) {
      traj.covered_step = state.step();
      traj.stop_reason = StopReason::Covered;
      break;
    }
    if (stop.size_threshold && static_cast<double>(state.ball_size()) > *stop.size_threshold) {
      traj.stop_reason = StopReason::ThresholdExceeded;
      break;
    }
    if (stop.max_steps && state.step() >= *stop.max_steps) {
      traj.stop_reason = StopReason::MaxSteps;
      break;
    }
    state = expand(state);
    traj.boundary_sizes.push_back(state.boundary().size());
    if (observe) observe(state);
  }
  return traj;
}

}  // namespace

GrowthTrajectory run_chain_quenched(const Graph& graph, BallState start, const StopRule& stop,
                                    const StateObserver& observe) {
  return run_chain(GrowthMode::Quenched, std::move(start), stop, observe,
                   [&](const BallState& s) { return expand_quenched(graph, s); });
}

GrowthTrajectory run_chain_annealed(const ConnectionKernel& kernel, BallState start, const StopRule& stop, Rng& rng,
                                    const StateObserver& observe) {
  return run_chain(GrowthMode::Annealed, std::move(start), stop, observe,
                   [&](const BallState& s) { return expand_annealed(s, kernel, rng); });
}

}  // namespace lrp
