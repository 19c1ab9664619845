// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "nlev/rational.hpp"

namespace nlev {

using cplx = std::complex<double>;

/// Q(x, z) = x^{m-1} + sum_{j=0}^{m-2} c_j z^{m-1-j} x^j.
///
/// The x^{m-1} coefficient is implicitly 1. Coefficients may be complex and
/// c_{m-2} may be nonzero; the normalized subfamily (real coefficients,
/// c_{m-2} = 0) is reported by is_normalized(). When every coefficient is
/// real and rational (either supplied as such or recovered from a simple
/// dyadic double) an exact copy is kept alongside the floating values.
class ExtendedPolynomial {
 public:
  /// coeffs[j] = c_j for j < coeffs.size(); missing entries are zero.
  ExtendedPolynomial(int m, std::vector<cplx> coeffs);
  ExtendedPolynomial(int m, const std::map<int, cplx>& coeffs);
  /// Exact real coefficients.
  static ExtendedPolynomial from_rational(int m, const std::map<int, Rational>& coeffs);
  /// Q = x^{m-1}.
  static ExtendedPolynomial monomial(int m) { return ExtendedPolynomial(m, std::vector<cplx>{}); }

  int m() const { return m_; }
  int degree() const { return m_ - 1; }

  /// c_j for 0 <= j <= m-2 (zero outside that range).
  cplx coeff(int j) const;
  std::span<const cplx> coeffs() const { return coeffs_; }
  /// Exact coefficients, indexed like coeffs(); present only when all are real rationals.
  const std::optional<std::vector<Rational>>& exact() const { return exact_; }

  bool is_real() const;
  /// Real coefficients and c_{m-2} = 0.
  bool is_normalized() const;
  /// Q(x, z) == x^{m-1}.
  bool is_monomial() const;

  cplx eval(cplx x, cplx z) const;
  cplx eval(double x, cplx z) const { return eval(cplx(x, 0.0), z); }
  /// P(x, z) = int_0^x Q(y, z) dy.
  cplx eval_antiderivative(cplx x, cplx z) const;
  cplx eval_antiderivative(double x, cplx z) const { return eval_antiderivative(cplx(x, 0.0), z); }

  /// Coefficients a_0..a_{m-1} of x -> Q(x, z) for fixed z.
  std::vector<cplx> x_coefficients(cplx z) const;

  friend bool operator==(const ExtendedPolynomial&, const ExtendedPolynomial&) = default;

 private:
  void validate() const;
  void recover_exact();

  int m_;
  std::vector<cplx> coeffs_;  // size m-1
  std::optional<std::vector<Rational>> exact_;
};

/// P(x, z) = int_0^x Q(y, z) dy, stored as coefficients of z^{m-i} x^i for
/// i = 0..m (entry 0 is always zero).
struct Antiderivative {
  int m = 0;
  std::vector<cplx> coeffs;

  cplx eval(cplx x, cplx z) const;
  /// d/dx, returned as the Q-style coefficient list c_0..c_{m-2} plus the
  /// leading coefficient (which must be 1 for an antiderivative of Q).
  std::vector<cplx> derivative_coeffs() const;
};

Antiderivative antiderivative(const ExtendedPolynomial& q);

/// Q~(x, z) = Q(x - shift * z, z) with shift = c_{m-2} / (m-1); the reduced
/// polynomial has zero x^{m-2} coefficient and the same nonlinear eigenvalues.
struct ShiftReduction {
  ExtendedPolynomial reduced;
  cplx shift;
};

ShiftReduction shift_reduce(const ExtendedPolynomial& q);

/// Returns c != 0 with q2(x, z) = q1(x, c z), or nullopt. Exact when both
/// carry exact coefficients, otherwise compared at relative tolerance
/// `rel_tol`. When both c and -c work the positive one is returned.
std::optional<double> equivalent(const ExtendedPolynomial& q1, const ExtendedPolynomial& q2,
                                 double rel_tol = 1e-9);

/// q(x, c z): coefficients scaled by c^{m-1-j}.
ExtendedPolynomial rescale_z(const ExtendedPolynomial& q, double c);

/// Coefficients of p(x + a) given coefficients of p (ascending powers).
std::vector<cplx> taylor_shift(std::span<const cplx> coeffs, cplx a);
std::vector<Rational> taylor_shift(std::span<const Rational> coeffs, const Rational& a);

}  // namespace nlev
