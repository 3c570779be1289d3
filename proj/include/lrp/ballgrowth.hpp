#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lrp/graph.hpp"
#include "lrp/kernel.hpp"
#include "lrp/lattice.hpp"
#include "lrp/random.hpp"

namespace lrp {

enum class GrowthMode { Quenched, Annealed };
std::string_view to_string(GrowthMode mode) noexcept;

/// State (B_{m-1}, dB_m) of the ball-growth chain: the interior already
/// explored before step m and the current boundary, kept disjoint.
///
/// Membership is a per-site tag (0 outside, 1 boundary, 2 interior) next to
/// an explicit sorted boundary list.
class BallState {
 public:
  /// The chain start (empty interior, boundary U) at step 0.
  static BallState init(const BoxSpec& box, std::vector<SiteIndex> start);

  const BoxSpec& box() const noexcept { return box_; }
  std::uint64_t step() const noexcept { return step_; }
  const SiteSet& boundary() const noexcept { return boundary_; }
  SiteSet interior() const;
  std::uint64_t interior_size() const noexcept { return interior_size_; }
  /// |B_m| = |interior| + |boundary|.
  std::uint64_t ball_size() const noexcept { return interior_size_ + boundary_.size(); }
  bool covers_box() const noexcept { return ball_size() == box_.site_count(); }

  bool in_boundary(SiteIndex x) const noexcept { return tags_[x] == kBoundaryTag; }
  bool in_interior(SiteIndex x) const noexcept { return tags_[x] == kInteriorTag; }
  bool in_ball(SiteIndex x) const noexcept { return tags_[x] != kOutsideTag; }
  std::span<const std::uint8_t> tags() const noexcept { return tags_; }

  /// Folds the boundary into the interior and installs `next` (sorted,
  /// disjoint from the current ball) as the new boundary.
  void advance(const SiteSet& next);

  static constexpr std::uint8_t kOutsideTag = kTagFree;
  static constexpr std::uint8_t kBoundaryTag = kTagBoundary;
  static constexpr std::uint8_t kInteriorTag = 2;

 private:
  explicit BallState(const BoxSpec& box) : box_(box), tags_(box.site_count(), kOutsideTag) {}

  BoxSpec box_;
  std::uint64_t step_ = 0;
  std::uint64_t interior_size_ = 0;
  std::vector<std::uint8_t> tags_;
  SiteSet boundary_;
};

inline BallState init_ball(const BoxSpec& box, std::vector<SiteIndex> start) {
  return BallState::init(box, std::move(start));
}

/// One step with fresh randomness: the new boundary is every site outside
/// the current ball joined to the current boundary in an independent copy
/// of the graph.
BallState expand_annealed(const BallState& state, const ConnectionKernel& kernel, Rng& rng);
BallState expand_annealed(const BallState& state, const ModelParams& params, std::uint64_t seed);

/// One breadth-first layer of a fixed graph.
BallState expand_quenched(const Graph& graph, const BallState& state);

/// N^{alpha d}.
double size_threshold(const BoxSpec& box, double alpha);

struct StopRule {
  std::optional<std::uint64_t> max_steps;
  /// Stop once |B_m| first exceeds this; the step that crossed it completes.
  std::optional<double> size_threshold;
};

enum class StopReason { Covered, MaxSteps, ThresholdExceeded };
std::string_view to_string(StopReason reason) noexcept;

struct GrowthTrajectory {
  GrowthMode mode = GrowthMode::Annealed;
  std::vector<std::uint64_t> boundary_sizes;
  std::optional<std::uint64_t> covered_step;
  StopReason stop_reason = StopReason::MaxSteps;
};

/// Called on the start state and after each step.
using StateObserver = std::function<void(const BallState&)>;

GrowthTrajectory run_chain_quenched(const Graph& graph, BallState start, const StopRule& stop,
                                    const StateObserver& observe = {});
GrowthTrajectory run_chain_annealed(const ConnectionKernel& kernel, BallState start, const StopRule& stop,
                                    Rng& rng, const StateObserver& observe = {});

}  // namespace lrp
