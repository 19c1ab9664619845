// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace nlev {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Recovers an exact rational from a double when the double is a "simple"
/// dyadic value: |v| < 2^31 and v * 2^20 is an integer. Decimal literals like
/// 0.1 are not exactly representable and yield nullopt.
std::optional<Rational> simple_rational(double v);

/// Exact value of any finite double (every double is a dyadic rational).
Rational exact_rational(double v);

double to_double(const Rational& r);

Rational pow(const Rational& base, unsigned exponent);

std::string to_string(const Rational& r);

}  // namespace nlev
