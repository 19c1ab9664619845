// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <limits>

namespace nlev {

/// A complex number stored as (natural-log magnitude, phase). Values such as
/// exp(c |z|^m) for |z| of a few units overflow double long before they stop
/// being interesting, so all Wronskian values travel in this form.
struct LogComplex {
  double log_mag = -std::numeric_limits<double>::infinity();
  double phase = 0.0;

  static LogComplex zero() { return {}; }
  static LogComplex one() { return {0.0, 0.0}; }
  static LogComplex from_complex(std::complex<double> v);
  /// exp(w) for complex w, without ever forming exp(Re w).
  static LogComplex from_exponent(std::complex<double> w) { return {w.real(), w.imag()}; }

  bool is_zero() const { return log_mag == -std::numeric_limits<double>::infinity(); }

  /// The value times exp(-shift); finite as long as log_mag - shift is.
  std::complex<double> scaled(double shift) const;
  /// Plain complex value; overflows/underflows outside double range.
  std::complex<double> value() const { return scaled(0.0); }

  /// Phase reduced to (-pi, pi].
  double principal_phase() const;

  LogComplex conj() const { return {log_mag, -phase}; }
};

LogComplex operator*(const LogComplex& a, const LogComplex& b);
LogComplex operator/(const LogComplex& a, const LogComplex& b);
/// Sum computed relative to the larger magnitude, so operands with log_mag
/// anywhere in +-1e6 neither overflow nor lose the larger term.
LogComplex operator+(const LogComplex& a, const LogComplex& b);
LogComplex operator-(const LogComplex& a, const LogComplex& b);

/// Relative distance |a - b| / max(|a|, |b|), evaluated in log space.
double relative_difference(const LogComplex& a, const LogComplex& b);

}  // namespace nlev
