#include "girthlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace girthlab {

double pairwise_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

Moments compute_moments(std::span<const double> xs) {
  Moments m;
  m.n = static_cast<std::int64_t>(xs.size());
  if (m.n == 0) return m;
  m.mean = pairwise_sum(xs) / static_cast<double>(m.n);
  m.min = xs[0];
  m.max = xs[0];
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double c = x - m.mean;
    const double c2 = c * c;
    m2 += c2;
    m3 += c2 * c;
    m4 += c2 * c2;
    m.min = std::min(m.min, x);
    m.max = std::max(m.max, x);
  }
  const auto n = static_cast<double>(m.n);
  m.variance = (m.n > 1) ? m2 / (n - 1.0) : 0.0;
  if (m2 > 0.0) {
    m2 /= n;
    m3 /= n;
    m4 /= n;
    m.skewness = m3 / std::pow(m2, 1.5);
    m.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return m;
}

double sample_covariance(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("sample_covariance: length mismatch");
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  const double mx = pairwise_sum(xs) / static_cast<double>(n);
  const double my = pairwise_sum(ys) / static_cast<double>(n);
  std::vector<double> prods(n);
  for (std::size_t i = 0; i < n; ++i) prods[i] = (xs[i] - mx) * (ys[i] - my);
  return pairwise_sum(prods) / static_cast<double>(n - 1);
}

double jackknife_covariance_se(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("jackknife: length mismatch");
  const std::size_t n = xs.size();
  if (n < 3) return 0.0;
  const auto dn = static_cast<double>(n);

  const double mx = pairwise_sum(xs) / dn;
  const double my = pairwise_sum(ys) / dn;
  // All leave-one-out covariances come from three centered sums.
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) sxy += (xs[i] - mx) * (ys[i] - my);

  std::vector<double> loo(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double cx = xs[i] - mx;
    const double cy = ys[i] - my;
    // Means of the n-1 remaining points shift by -c/(n-1).
    const double cross = sxy - cx * cy - cx * cy / (dn - 1.0);
    loo[i] = cross / (dn - 2.0);
  }
  const double mean_loo = pairwise_sum(loo) / dn;
  double ss = 0.0;
  for (double v : loo) ss += (v - mean_loo) * (v - mean_loo);
  return std::sqrt(ss * (dn - 1.0) / dn);
}

double ks_statistic(std::span<const double> xs, double mean, double stddev) {
  if (xs.empty() || !(stddev > 0.0)) throw std::invalid_argument("ks_statistic: bad input");
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double z = (sorted[i] - mean) / stddev;
    const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(cdf - lo, hi - cdf));
  }
  return d;
}

double ks_asymptotic_p(double stat, std::int64_t n) {
  if (n <= 0) return 1.0;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double t = (sqrt_n + 0.12 + 0.11 / sqrt_n) * stat;
  if (t < 1e-6) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

NormalityReport normality_report(std::span<const double> xs, double scale_hint) {
  if (xs.size() < 100) throw std::invalid_argument("normality_report: need at least 100 samples");
  NormalityReport r;
  r.moments = compute_moments(xs);
  const auto n = static_cast<double>(xs.size());
  const double stddev = std::sqrt(std::max(r.moments.variance, 0.0));
  r.std_error_mean = stddev / std::sqrt(n);

  double scale = std::max(std::abs(r.moments.min), std::abs(r.moments.max));
  scale = std::max({scale, std::abs(r.moments.mean), scale_hint});
  if (stddev <= 1e-12 * scale || stddev == 0.0) {
    r.degenerate = true;
    return r;
  }
  r.ks_stat = ks_statistic(xs, r.moments.mean, stddev);
  r.ks_p = ks_asymptotic_p(r.ks_stat, r.moments.n);
  return r;
}

}  // namespace girthlab
