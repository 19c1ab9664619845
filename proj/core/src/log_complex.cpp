// SPDX-License-Identifier: Apache-2.0
#include "nlev/log_complex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nlev {

LogComplex LogComplex::from_complex(std::complex<double> v) {
  if (v == std::complex<double>(0.0, 0.0)) return zero();
  return {std::log(std::abs(v)), std::arg(v)};
}

std::complex<double> LogComplex::scaled(double shift) const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_mag - shift), phase);
}

double LogComplex::principal_phase() const {
  double p = std::remainder(phase, 2.0 * std::numbers::pi);
  if (p <= -std::numbers::pi) p += 2.0 * std::numbers::pi;
  return p;
}

LogComplex operator*(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero() || b.is_zero()) return LogComplex::zero();
  return {a.log_mag + b.log_mag, a.phase + b.phase};
}

LogComplex operator/(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero()) return LogComplex::zero();
  return {a.log_mag - b.log_mag, a.phase - b.phase};
}

LogComplex operator+(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const double shift = std::max(a.log_mag, b.log_mag);
  const std::complex<double> s = a.scaled(shift) + b.scaled(shift);
  if (s == std::complex<double>(0.0, 0.0)) return LogComplex::zero();
  return {shift + std::log(std::abs(s)), std::arg(s)};
}

LogComplex operator-(const LogComplex& a, const LogComplex& b) {
  return a + LogComplex{b.log_mag, b.phase + std::numbers::pi};
}

double relative_difference(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  const double shift = std::max(a.log_mag, b.log_mag);
  return std::abs(a.scaled(shift) - b.scaled(shift));
}

}  // namespace nlev
