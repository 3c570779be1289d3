#pragma once

#include <cstdint>
#include <vector>

#include "lrp/lattice.hpp"

namespace lrp {

/// Connection law parameters: beta > 0 and the decay exponent s > 0.
/// `critical()` records whether s equals the box dimension.
class ModelParams {
 public:
  /// Critical law, s = d.
  ModelParams(double beta, int dim);
  ModelParams(double beta, double exponent, int dim);

  double beta() const noexcept { return beta_; }
  double exponent() const noexcept { return exponent_; }
  bool critical() const noexcept { return critical_; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double beta_;
  double exponent_;
  bool critical_;
};

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Per-distance rates beta/r^s and connection probabilities, tabulated for
/// r = 0..dN once per (box, params). Index 0 is unused (zero).
class ConnectionKernel {
 public:
  ConnectionKernel(const BoxSpec& box, const ModelParams& params);

  const BoxSpec& box() const noexcept { return box_; }
  const ModelParams& params() const noexcept { return params_; }

  /// beta / r^s.
  double rate(std::int64_t r) const noexcept { return rate_[static_cast<std::size_t>(r)]; }
  /// 1 for r = 1, otherwise 1 - exp(-beta / r^s).
  double probability(std::int64_t r) const noexcept { return prob_[static_cast<std::size_t>(r)]; }

 private:
  BoxSpec box_;
  ModelParams params_;
  std::vector<double> rate_;
  std::vector<double> prob_;
};

}  // namespace lrp
