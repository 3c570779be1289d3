#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lrp::stats {

double mean(std::span<const double> xs);
/// Sample variance with n - 1 denominator.
double variance(std::span<const double> xs);
/// Standard error of the sample mean.
double standard_error(std::span<const double> xs);
/// Standard error of a binomial proportion estimate, sqrt(p(1-p)/n).
double binomial_standard_error(double p, std::uint64_t n);

/// Linear-interpolation quantile (type 7) of an unsorted sample, q in [0, 1].
double quantile(std::vector<double> xs, double q);
inline double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov
/// distribution (effective-size correction sqrt(ne) + 0.12 + 0.11/sqrt(ne)).
/// Conservative for discrete data.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

}  // namespace lrp::stats
