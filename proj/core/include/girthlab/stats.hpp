#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace girthlab {

/// Recursive pairwise summation; deterministic and O(log n) error growth.
double pairwise_sum(std::span<const double> xs);

struct Moments {
  std::int64_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // ddof = 1
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double min = 0.0;
  double max = 0.0;
};
Moments compute_moments(std::span<const double> xs);

/// Sample covariance with ddof = 1.
double sample_covariance(std::span<const double> xs, std::span<const double> ys);

/// Leave-one-out jackknife standard error of the sample covariance (variance
/// included as the xs == ys case). Makes no distributional assumption.
double jackknife_covariance_se(std::span<const double> xs, std::span<const double> ys);

/// One-sample Kolmogorov-Smirnov distance against Normal(mean, stddev^2).
double ks_statistic(std::span<const double> xs, double mean, double stddev);

/// Asymptotic Kolmogorov p-value with the small-sample size correction.
double ks_asymptotic_p(double stat, std::int64_t n);

struct NormalityReport {
  Moments moments;
  double std_error_mean = 0.0;
  double ks_stat = 0.0;
  double ks_p = 0.0;
  /// Set when the sample spread is at rounding level relative to `scale_hint`
  /// (or to the sample magnitude); the distribution statistics are then
  /// meaningless and left at zero.
  bool degenerate = false;
};

/// Moment and KS summary of a sample against the fitted normal. Needs at
/// least 100 samples. `scale_hint` should be the natural magnitude of the
/// values (e.g. an a priori bound) so exact-zero data is flagged rather than
/// tested; pass 0 to fall back on the sample's own magnitude.
NormalityReport normality_report(std::span<const double> xs, double scale_hint = 0.0);

}  // namespace girthlab
