#include "lrp/kernel.hpp"

#include <cmath>
#include <string>

#include "lrp/errors.hpp"

namespace lrp {

ModelParams::ModelParams(double beta, int dim) : ModelParams(beta, static_cast<double>(dim), dim) {}

ModelParams::ModelParams(double beta, double exponent, int dim)
    : beta_(beta), exponent_(exponent), critical_(exponent == static_cast<double>(dim)) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be a positive finite number");
  if (!(exponent > 0.0) || !std::isfinite(exponent)) throw DomainError("exponent must be a positive finite number");
}

ConnectionKernel::ConnectionKernel(const BoxSpec& box, const ModelParams& params)
    : box_(box), params_(params) {
  const auto n = static_cast<std::size_t>(box.max_distance()) + 1;
  rate_.assign(n, 0.0);
  prob_.assign(n, 0.0);
  for (std::size_t r = 1; r < n; ++r) {
    rate_[r] = params.beta() / std::pow(static_cast<double>(r), params.exponent());
    prob_[r] = r == 1 ? 1.0 : -std::expm1(-rate_[r]);
  }
}

}  // namespace lrp
