// SPDX-License-Identifier: Apache-2.0
#include "nlev/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nlev/errors.hpp"

namespace nlev {

double ThetaSeries::coeff(int j, int n) const {
  auto it = beta.find(j);
  if (it == beta.end()) return 0.0;
  auto jt = it->second.find(n);
  return jt == it->second.end() ? 0.0 : jt->second;
}

void ThetaSeries::validate() const {
  if (m < 2) throw Error(ErrorKind::InvalidInput, "theta: m must be >= 2");
  if (truncation_order < 0) throw Error(ErrorKind::InvalidInput, "theta: negative truncation order");
  for (const auto& [j, terms] : beta) {
    if (j < 0 || j > m - 2) {
      throw Error(ErrorKind::InvalidInput, "theta: beta index j=" + std::to_string(j) +
                                               " outside [0, m-2]");
    }
    for (const auto& [n, d] : terms) {
      if (n < 1) {
        throw Error(ErrorKind::InvalidInput,
                    "theta: beta_" + std::to_string(j) + " has a t^" + std::to_string(n) +
                        " term; prepared form requires beta_j(0) = 0");
      }
      if (n > truncation_order) {
        throw Error(ErrorKind::InvalidInput, "theta: term t^" + std::to_string(n) +
                                                 " beyond truncation order " +
                                                 std::to_string(truncation_order));
      }
      if (!std::isfinite(d)) throw Error(ErrorKind::InvalidInput, "theta: non-finite coefficient");
    }
  }
}

namespace {

using Series = std::vector<double>;  // coefficients t^0..t^N

// Truncated product; `abs_out` accumulates sum |a_i||b_k| for cancellation tests.
void mul_acc(const Series& a, const Series& b, const Series& abs_a, const Series& abs_b,
             double factor, Series& out, Series& abs_out) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0.0 && abs_a[i] == 0.0) continue;
    for (std::size_t k = 0; i + k < n; ++k) {
      out[i + k] += factor * a[i] * b[k];
      abs_out[i + k] += std::abs(factor) * abs_a[i] * abs_b[k];
    }
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

ThetaSeries eliminate_beta_m2(const ThetaSeries& theta) {
  theta.validate();
  const int m = theta.m;
  const int N = theta.truncation_order;
  auto top = theta.beta.find(m - 2);
  const bool has_top =
      top != theta.beta.end() &&
      std::any_of(top->second.begin(), top->second.end(), [](auto& kv) { return kv.second != 0.0; });
  if (!has_top) {
    ThetaSeries out = theta;
    out.beta.erase(m - 2);
    return out;
  }

  // Dense table a[j][n] of the full series, leading x^{m-1} included.
  std::vector<Series> a(m, Series(N + 1, 0.0));
  a[m - 1][0] = 1.0;
  for (const auto& [j, terms] : theta.beta) {
    for (const auto& [n, d] : terms) a[j][n] = d;
  }

  // x = y + s(t), s = -beta_{m-2} / (m-1); s(0) = 0 so every retained
  // output term depends only on input terms of order <= N.
  Series s(N + 1, 0.0);
  for (int n = 0; n <= N; ++n) s[n] = -a[m - 2][n] / static_cast<double>(m - 1);

  std::vector<Series> spow(m, Series(N + 1, 0.0));
  std::vector<Series> spow_abs(m, Series(N + 1, 0.0));
  spow[0][0] = spow_abs[0][0] = 1.0;
  Series s_abs(N + 1);
  for (int n = 0; n <= N; ++n) s_abs[n] = std::abs(s[n]);
  for (int k = 1; k < m; ++k) {
    mul_acc(spow[k - 1], s, spow_abs[k - 1], s_abs, 1.0, spow[k], spow_abs[k]);
  }

  std::vector<Series> r(m, Series(N + 1, 0.0));
  std::vector<Series> r_abs(m, Series(N + 1, 0.0));
  for (int j = 0; j < m; ++j) {
    Series aj_abs(N + 1);
    for (int n = 0; n <= N; ++n) aj_abs[n] = std::abs(a[j][n]);
    for (int i = 0; i <= j; ++i) {
      mul_acc(a[j], spow[j - i], aj_abs, spow_abs[j - i], binomial(j, i), r[i], r_abs[i]);
    }
  }

  ThetaSeries out;
  out.m = m;
  out.truncation_order = N;
  constexpr double kCancel = 64.0 * std::numeric_limits<double>::epsilon();
  for (int j = 0; j <= m - 3; ++j) {
    for (int n = 1; n <= N; ++n) {
      if (std::abs(r[j][n]) > kCancel * r_abs[j][n]) out.beta[j][n] = r[j][n];
    }
  }
  return out;
}

std::vector<std::pair<int, Rational>> Invariants::lowest_order_exponents() const {
  std::vector<std::pair<int, Rational>> out;
  if (!q) return out;
  for (int j = 0; j <= m - 3; ++j) {
    if (Q.coeff(j) != cplx(0.0, 0.0)) out.emplace_back(j, Rational(m - 1 - j) * (*q));
  }
  return out;
}

Invariants canonicalize(const ThetaSeries& theta) {
  theta.validate();
  const int m = theta.m;
  const int N = theta.truncation_order;
  if (auto it = theta.beta.find(m - 2); it != theta.beta.end()) {
    for (const auto& [n, d] : it->second) {
      if (d != 0.0) {
        throw Error(ErrorKind::InvalidInput,
                    "canonicalize: beta_{m-2} must vanish; apply eliminate_beta_m2 first");
      }
    }
  }

  Invariants inv;
  inv.m = m;
  inv.Q = ExtendedPolynomial::monomial(m);
  if (m == 2) return inv;  // no beta_j at all, q = infinity unconditionally

  std::optional<Rational> q;
  for (int j = 0; j <= m - 3; ++j) {
    VanishingOrder tau{N + 1, true};
    if (auto it = theta.beta.find(j); it != theta.beta.end()) {
      for (const auto& [n, d] : it->second) {  // map is ordered by n
        if (d != 0.0) {
          tau = {n, false};
          break;
        }
      }
    }
    inv.tau[j] = tau;
    if (tau.saturated) {
      inv.conditional = true;
      continue;
    }
    const Rational ratio(Integer(tau.order), Integer(m - 1 - j));
    if (!q || ratio < *q) q = ratio;
  }

  if (!q) return inv;  // every beta_j vanishes through order N

  for (const auto& [j, tau] : inv.tau) {
    if (tau.saturated && Rational(N) < Rational(m - 1 - j) * (*q)) {
      throw Error(ErrorKind::TruncationExhausted,
                  "beta_" + std::to_string(j) + " vanishes through order " + std::to_string(N) +
                      " but could still contribute at order < " +
                      to_string(Rational(m - 1 - j) * (*q)) + "; raise the truncation order");
    }
  }

  std::map<int, cplx> coeffs;
  for (const auto& [j, tau] : inv.tau) {
    if (tau.saturated) continue;
    if (Rational(tau.order) == Rational(m - 1 - j) * (*q)) {
      coeffs[j] = cplx(theta.coeff(j, tau.order), 0.0);
    }
  }
  inv.q = q;
  inv.p = Rational(m) - 1 / (*q);
  inv.Q = ExtendedPolynomial(m, coeffs);
  return inv;
}

Invariants canonicalize_prepared(const ThetaSeries& theta) {
  return canonicalize(eliminate_beta_m2(theta));
}

ThetaSeries dilate(const ThetaSeries& theta, double lambda) {
  ThetaSeries out = theta;
  for (auto& [j, terms] : out.beta) {
    for (auto& [n, d] : terms) d *= std::pow(lambda, n);
  }
  return out;
}

std::optional<double> set_equivalence(const std::vector<std::complex<double>>& s1,
                                      const std::vector<std::complex<double>>& s2, double tol) {
  if (s1.size() != s2.size()) return std::nullopt;
  if (s1.empty()) return 1.0;

  auto anchor = std::max_element(s1.begin(), s1.end(),
                                 [](auto a, auto b) { return std::abs(a) < std::abs(b); });
  if (std::abs(*anchor) <= tol) {
    const bool all_small = std::all_of(s2.begin(), s2.end(), [&](auto v) { return std::abs(v) <= tol; });
    return all_small ? std::optional<double>(1.0) : std::nullopt;
  }

  auto matches = [&](double gamma) {
    std::vector<bool> used(s2.size(), false);
    for (const auto& x : s1) {
      const auto target = gamma * x;
      std::size_t best = s2.size();
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < s2.size(); ++i) {
        if (used[i]) continue;
        const double d = std::abs(s2[i] - target);
        if (d < best_d) {
          best_d = d;
          best = i;
        }
      }
      if (best == s2.size() || best_d > tol) return false;
      used[best] = true;
    }
    return true;
  };

  std::optional<double> found;
  for (const auto& y : s2) {
    const auto ratio = y / *anchor;
    if (std::abs(ratio.imag()) * std::abs(*anchor) > tol) continue;
    const double gamma = ratio.real();
    if (gamma == 0.0 || !matches(gamma)) continue;
    if (gamma > 0.0) return gamma;
    if (!found) found = gamma;
  }
  return found;
}

}  // namespace nlev
