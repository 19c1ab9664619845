// SPDX-License-Identifier: Apache-2.0
#include "nlev/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlev/errors.hpp"

namespace nlev {

ExtendedPolynomial::ExtendedPolynomial(int m, std::vector<cplx> coeffs) : m_(m) {
  if (m < 2) throw Error(ErrorKind::InvalidInput, "m must be >= 2, got " + std::to_string(m));
  if (static_cast<int>(coeffs.size()) > m - 1) {
    for (std::size_t j = m - 1; j < coeffs.size(); ++j) {
      if (coeffs[j] != cplx(0.0, 0.0)) {
        throw Error(ErrorKind::InvalidInput,
                    "coefficient index " + std::to_string(j) + " exceeds m-2");
      }
    }
  }
  coeffs.resize(m - 1);
  coeffs_ = std::move(coeffs);
  validate();
  recover_exact();
}

ExtendedPolynomial::ExtendedPolynomial(int m, const std::map<int, cplx>& coeffs)
    : ExtendedPolynomial(m, [&] {
        if (m < 2) throw Error(ErrorKind::InvalidInput, "m must be >= 2");
        std::vector<cplx> dense(m - 1);
        for (const auto& [j, c] : coeffs) {
          if (j < 0 || j > m - 2) {
            throw Error(ErrorKind::InvalidInput,
                        "coefficient index j=" + std::to_string(j) + " outside [0, m-2]");
          }
          dense[j] = c;
        }
        return dense;
      }()) {}

ExtendedPolynomial ExtendedPolynomial::from_rational(int m, const std::map<int, Rational>& coeffs) {
  std::map<int, cplx> approx;
  for (const auto& [j, c] : coeffs) approx[j] = cplx(to_double(c), 0.0);
  ExtendedPolynomial q(m, approx);
  std::vector<Rational> exact(m - 1);
  for (const auto& [j, c] : coeffs) exact[j] = c;
  q.exact_ = std::move(exact);
  return q;
}

void ExtendedPolynomial::validate() const {
  for (const cplx& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorKind::InvalidInput, "non-finite coefficient");
    }
  }
}

void ExtendedPolynomial::recover_exact() {
  std::vector<Rational> exact;
  exact.reserve(coeffs_.size());
  for (const cplx& c : coeffs_) {
    if (c.imag() != 0.0) return;
    auto r = simple_rational(c.real());
    if (!r) return;
    exact.push_back(*r);
  }
  exact_ = std::move(exact);
}

cplx ExtendedPolynomial::coeff(int j) const {
  if (j < 0 || j > m_ - 2) return {0.0, 0.0};
  return coeffs_[j];
}

bool ExtendedPolynomial::is_real() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c.imag() == 0.0; });
}

bool ExtendedPolynomial::is_normalized() const {
  return is_real() && (m_ < 3 ? coeffs_[0] == cplx(0.0, 0.0) : coeffs_[m_ - 2] == cplx(0.0, 0.0));
}

bool ExtendedPolynomial::is_monomial() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c == cplx(0.0, 0.0); });
}

std::vector<cplx> ExtendedPolynomial::x_coefficients(cplx z) const {
  std::vector<cplx> a(m_);
  a[m_ - 1] = 1.0;
  cplx zp = z;  // z^{m-1-j}, built from j = m-2 downward
  for (int j = m_ - 2; j >= 0; --j) {
    a[j] = coeffs_[j] * zp;
    zp *= z;
  }
  return a;
}

cplx ExtendedPolynomial::eval(cplx x, cplx z) const {
  const auto a = x_coefficients(z);
  cplx acc = a.back();
  for (int j = m_ - 2; j >= 0; --j) acc = acc * x + a[j];
  return acc;
}

cplx ExtendedPolynomial::eval_antiderivative(cplx x, cplx z) const {
  return antiderivative(*this).eval(x, z);
}

cplx Antiderivative::eval(cplx x, cplx z) const {
  // Horner in x with coefficients coeffs[i] * z^{m-i}.
  std::vector<cplx> zpow(m + 1);
  zpow[0] = 1.0;
  for (int i = 1; i <= m; ++i) zpow[i] = zpow[i - 1] * z;
  cplx acc = coeffs[m];
  for (int i = m - 1; i >= 0; --i) acc = acc * x + coeffs[i] * zpow[m - i];
  return acc;
}

std::vector<cplx> Antiderivative::derivative_coeffs() const {
  std::vector<cplx> d(m);
  for (int i = 1; i <= m; ++i) d[i - 1] = coeffs[i] * static_cast<double>(i);
  return d;
}

Antiderivative antiderivative(const ExtendedPolynomial& q) {
  Antiderivative p;
  p.m = q.m();
  p.coeffs.assign(q.m() + 1, cplx(0.0, 0.0));
  for (int j = 0; j <= q.m() - 2; ++j) p.coeffs[j + 1] = q.coeff(j) / static_cast<double>(j + 1);
  p.coeffs[q.m()] = 1.0 / static_cast<double>(q.m());
  return p;
}

std::vector<cplx> taylor_shift(std::span<const cplx> coeffs, cplx a) {
  std::vector<cplx> c(coeffs.begin(), coeffs.end());
  const int n = static_cast<int>(c.size());
  for (int i = 0; i < n - 1; ++i) {
    for (int k = n - 2; k >= i; --k) c[k] += a * c[k + 1];
  }
  return c;
}

std::vector<Rational> taylor_shift(std::span<const Rational> coeffs, const Rational& a) {
  std::vector<Rational> c(coeffs.begin(), coeffs.end());
  const int n = static_cast<int>(c.size());
  for (int i = 0; i < n - 1; ++i) {
    for (int k = n - 2; k >= i; --k) c[k] += a * c[k + 1];
  }
  return c;
}

ShiftReduction shift_reduce(const ExtendedPolynomial& q) {
  const int m = q.m();
  const cplx top = q.coeff(m - 2);
  if (top == cplx(0.0, 0.0)) return {q, cplx(0.0, 0.0)};
  const cplx shift = top / static_cast<double>(m - 1);

  if (q.exact()) {
    std::vector<Rational> p(*q.exact());
    p.push_back(Rational(1));
    const Rational a = -(*q.exact())[m - 2] / Rational(m - 1);
    auto shifted = taylor_shift(std::span<const Rational>(p), a);
    std::map<int, Rational> out;
    for (int j = 0; j <= m - 3; ++j) {
      if (shifted[j] != 0) out[j] = shifted[j];
    }
    return {ExtendedPolynomial::from_rational(m, out), shift};
  }

  std::vector<cplx> p(q.coeffs().begin(), q.coeffs().end());
  p.push_back(1.0);
  auto shifted = taylor_shift(std::span<const cplx>(p), -shift);
  shifted.resize(m - 1);
  shifted[m - 2] = 0.0;  // cancels exactly in exact arithmetic
  return {ExtendedPolynomial(m, std::move(shifted)), shift};
}

ExtendedPolynomial rescale_z(const ExtendedPolynomial& q, double c) {
  const int m = q.m();
  if (q.exact()) {
    if (auto rc = simple_rational(c)) {
      std::map<int, Rational> out;
      for (int j = 0; j <= m - 2; ++j) {
        const Rational& cj = (*q.exact())[j];
        if (cj != 0) out[j] = cj * pow(*rc, static_cast<unsigned>(m - 1 - j));
      }
      return ExtendedPolynomial::from_rational(m, out);
    }
  }
  std::vector<cplx> out(m - 1);
  for (int j = 0; j <= m - 2; ++j) out[j] = q.coeff(j) * std::pow(c, m - 1 - j);
  return ExtendedPolynomial(m, std::move(out));
}

namespace {

std::optional<double> equivalent_exact(int m, const std::vector<Rational>& a,
                                       const std::vector<Rational>& b) {
  // Need real c with b_j = c^{e_j} a_j, e_j = m-1-j.
  int ref = -1;
  for (int j = 0; j <= m - 2; ++j) {
    if ((a[j] == 0) != (b[j] == 0)) return std::nullopt;
    if (a[j] != 0 && ref < 0) ref = j;
  }
  if (ref < 0) return 1.0;

  const unsigned e0 = static_cast<unsigned>(m - 1 - ref);
  const Rational r0 = b[ref] / a[ref];
  const Rational abs_r0 = abs(r0);
  int sign = 0;  // 0 = undetermined
  for (int j = 0; j <= m - 2; ++j) {
    if (a[j] == 0) continue;
    const unsigned e = static_cast<unsigned>(m - 1 - j);
    const Rational r = b[j] / a[j];
    // |c|^e == |r| and |c|^{e0} == |r0|  <=>  |r|^{e0} == |r0|^e
    if (pow(abs(r), e0) != pow(abs_r0, e)) return std::nullopt;
    if (e % 2 == 0) {
      if (r < 0) return std::nullopt;
    } else {
      const int s = r < 0 ? -1 : 1;
      if (sign != 0 && s != sign) return std::nullopt;
      sign = s;
    }
  }
  const double mag = std::pow(to_double(abs_r0), 1.0 / static_cast<double>(e0));
  return sign < 0 ? -mag : mag;
}

std::optional<double> equivalent_float(int m, std::span<const cplx> a, std::span<const cplx> b,
                                       double rel_tol) {
  int ref = -1;
  for (int j = 0; j <= m - 2; ++j) {
    if (a[j].real() != 0.0 && b[j].real() != 0.0) {
      ref = j;
      break;
    }
  }
  auto all_zero = [&](std::span<const cplx> v) {
    return std::all_of(v.begin(), v.end(), [](cplx c) { return c == cplx(0.0, 0.0); });
  };
  if (ref < 0) {
    if (all_zero(a) && all_zero(b)) return 1.0;
    return std::nullopt;
  }
  const int e0 = m - 1 - ref;
  const double r0 = b[ref].real() / a[ref].real();
  if (e0 % 2 == 0 && r0 < 0.0) return std::nullopt;
  const double mag = std::pow(std::abs(r0), 1.0 / e0);

  auto check = [&](double c) {
    for (int j = 0; j <= m - 2; ++j) {
      const double lhs = b[j].real();
      const double rhs = std::pow(c, m - 1 - j) * a[j].real();
      const double scale = std::max(std::abs(lhs), std::abs(rhs));
      if (std::abs(lhs - rhs) > rel_tol * scale) return false;
    }
    return true;
  };
  if (e0 % 2 == 1) {
    const double c = r0 < 0.0 ? -mag : mag;
    if (check(c)) return c;
    return std::nullopt;
  }
  if (check(mag)) return mag;
  if (check(-mag)) return -mag;
  return std::nullopt;
}

}  // namespace

std::optional<double> equivalent(const ExtendedPolynomial& q1, const ExtendedPolynomial& q2,
                                 double rel_tol) {
  if (q1.m() != q2.m() || !q1.is_real() || !q2.is_real()) return std::nullopt;
  if (q1.exact() && q2.exact()) return equivalent_exact(q1.m(), *q1.exact(), *q2.exact());
  return equivalent_float(q1.m(), q1.coeffs(), q2.coeffs(), rel_tol);
}

}  // namespace nlev
