#pragma once

#include <complex>
#include <limits>
#include <string_view>
#include <vector>

namespace girthlab {

/// Analytic test function given by real coefficients a_0..a_K and a declared
/// convergence radius r > 1. The star norm sum_{k>=1} |a_k| k^2 is the
/// continuity norm for every functional in this project. When a series was
/// truncated from a longer expansion, the star norm of the dropped tail can
/// be declared so that downstream bounds stay honest.
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(std::vector<double> coeffs,
                       double radius = std::numeric_limits<double>::infinity(),
                       double tail_star_norm = 0.0);

  static PowerSeries monomial(int degree, double coeff = 1.0);
  static PowerSeries constant(double value);
  /// Comma-separated coefficients, lowest degree first: "0,0,1" is z^2.
  static PowerSeries parse(std::string_view coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : 0.0;
  }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double radius() const { return radius_; }
  double tail_star_norm() const { return tail_star_norm_; }

  double star_norm() const;

  /// f composed with s(x) = x^2; coefficient a_k moves to degree 2k.
  PowerSeries compose_square() const;
  PowerSeries derivative() const;

  double eval(double x) const;
  std::complex<double> eval(std::complex<double> x) const;

 private:
  std::vector<double> coeffs_;
  double radius_ = std::numeric_limits<double>::infinity();
  double tail_star_norm_ = 0.0;
};

}  // namespace girthlab
