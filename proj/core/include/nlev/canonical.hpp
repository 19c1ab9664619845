// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "nlev/polynomial.hpp"
#include "nlev/rational.hpp"

namespace nlev {

/// Truncated prepared series x^{m-1} + sum_j beta_j(t) x^j, with
/// beta_j(t) = sum_n d_{j,n} t^n known for 1 <= n <= truncation_order.
/// Coefficients past the truncation order are unknown, not zero.
struct ThetaSeries {
  int m = 2;
  int truncation_order = 0;
  /// beta[j][n] = d_{j,n}; absent entries are zero (within the truncation).
  std::map<int, std::map<int, double>> beta;

  double coeff(int j, int n) const;
  /// Checks m >= 2, 0 <= j <= m-2, 1 <= n <= truncation_order, finite values.
  void validate() const;
};

/// Substitutes x -> x - beta_{m-2}(t) / (m-1) and re-truncates at the same
/// order, which removes the x^{m-2} term.
ThetaSeries eliminate_beta_m2(const ThetaSeries& theta);

/// Order of vanishing of one beta_j: either exact, or only known to exceed
/// the truncation order.
struct VanishingOrder {
  int order = 0;
  bool saturated = false;  // true means "order >= truncation_order + 1"
};

struct Invariants {
  int m = 2;
  std::optional<Rational> q;  // nullopt encodes q = infinity
  std::optional<Rational> p;  // m - 1/q when q is finite
  std::map<int, VanishingOrder> tau;
  ExtendedPolynomial Q = ExtendedPolynomial::monomial(2);
  bool conditional = false;

  bool q_infinite() const { return !q.has_value(); }

  /// The lowest-order part of the series: pairs (j, t-exponent) for each
  /// retained c_j, i.e. Theta(x, t) = x^{m-1} + sum c_j t^{exp_j} x^j.
  std::vector<std::pair<int, Rational>> lowest_order_exponents() const;
};

/// Computes (m, q, Q) from a series whose beta_{m-2} already vanishes.
/// Throws TruncationExhausted when the truncation order is too low to certify q.
Invariants canonicalize(const ThetaSeries& theta);

/// eliminate_beta_m2 followed by canonicalize.
Invariants canonicalize_prepared(const ThetaSeries& theta);

/// theta(x, lambda t).
ThetaSeries dilate(const ThetaSeries& theta, double lambda);

/// Returns gamma != 0 with s2 = gamma * s1 as multisets (within tol), or nullopt.
std::optional<double> set_equivalence(const std::vector<std::complex<double>>& s1,
                                      const std::vector<std::complex<double>>& s2, double tol);

}  // namespace nlev
