// SPDX-License-Identifier: Apache-2.0
#include "nlev/rational.hpp"

#include <cmath>

namespace nlev {

std::optional<Rational> simple_rational(double v) {
  if (!std::isfinite(v) || std::abs(v) >= 2147483648.0) return std::nullopt;
  constexpr double kScale = 1048576.0;  // 2^20
  const double scaled = v * kScale;
  if (scaled != std::floor(scaled)) return std::nullopt;
  return Rational(Integer(static_cast<long long>(scaled)), Integer(1048576));
}

Rational exact_rational(double v) {
  if (v == 0.0) return Rational(0);
  int e = 0;
  const double frac = std::frexp(v, &e);  // v = frac * 2^e, |frac| in [0.5, 1)
  const auto mant = static_cast<long long>(std::ldexp(frac, 53));
  e -= 53;
  Rational r{Integer(mant)};
  if (e > 0) r *= Rational(Integer(1) << e);
  if (e < 0) r /= Rational(Integer(1) << -e);
  return r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent != 0) b *= b;
  }
  return result;
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace nlev
