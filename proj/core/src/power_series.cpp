#include "girthlab/power_series.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace girthlab {

PowerSeries::PowerSeries(std::vector<double> coeffs, double radius, double tail_star_norm)
    : coeffs_(std::move(coeffs)), radius_(radius), tail_star_norm_(tail_star_norm) {
  if (!(radius_ > 1.0)) throw std::invalid_argument("PowerSeries: radius must exceed 1");
  if (tail_star_norm_ < 0.0) throw std::invalid_argument("PowerSeries: negative tail norm");
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

PowerSeries PowerSeries::monomial(int degree, double coeff) {
  if (degree < 0) throw std::invalid_argument("PowerSeries: negative degree");
  std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = coeff;
  return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::constant(double value) { return PowerSeries({value}); }

PowerSeries PowerSeries::parse(std::string_view text) {
  std::vector<double> coeffs;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    try {
      coeffs.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("PowerSeries: bad coefficient '" + item + "'");
    }
  }
  if (coeffs.empty()) throw std::invalid_argument("PowerSeries: no coefficients");
  return PowerSeries(std::move(coeffs));
}

double PowerSeries::star_norm() const {
  double sum = 0.0;
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    sum += std::abs(coeffs_[k]) * static_cast<double>(k) * static_cast<double>(k);
  return sum + tail_star_norm_;
}

PowerSeries PowerSeries::compose_square() const {
  if (coeffs_.empty()) return {};
  std::vector<double> out(coeffs_.size() * 2 - 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out[2 * k] = coeffs_[k];
  // Radius of f(x^2) is the square root of f's radius; still above 1.
  const double r = std::isinf(radius_) ? radius_ : std::sqrt(radius_);
  return PowerSeries(std::move(out), r, tail_star_norm_);
}

PowerSeries PowerSeries::derivative() const {
  if (coeffs_.size() <= 1) return PowerSeries({0.0}, radius_);
  std::vector<double> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    out[k - 1] = coeffs_[k] * static_cast<double>(k);
  return PowerSeries(std::move(out), radius_);
}

double PowerSeries::eval(double x) const {
  double acc = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
  return acc;
}

std::complex<double> PowerSeries::eval(std::complex<double> x) const {
  std::complex<double> acc = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
  return acc;
}

}  // namespace girthlab
