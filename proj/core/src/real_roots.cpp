// SPDX-License-Identifier: Apache-2.0
#include "nlev/real_roots.hpp"

#include <algorithm>
#include <cmath>

#include "nlev/errors.hpp"

namespace nlev {

namespace {

using Poly = std::vector<Rational>;  // ascending, no trailing zeros

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long long>(i)));
  trim(d);
  return d;
}

Poly monic(Poly p) {
  trim(p);
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

// Returns {quotient, remainder}.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  trim(a);
  if (b.empty()) throw Error(ErrorKind::RootFindingFail, "division by zero polynomial");
  if (deg(a) < deg(b)) return {Poly{}, a};
  Poly quot(deg(a) - deg(b) + 1);
  while (!a.empty() && deg(a) >= deg(b)) {
    const int shift = deg(a) - deg(b);
    const Rational f = a.back() / b.back();
    quot[shift] = f;
    for (int i = 0; i <= deg(b); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  trim(quot);
  return {quot, a};
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Poly sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

Rational eval(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

// Yun's square-free decomposition: returns (factor, multiplicity) pairs.
std::vector<std::pair<Poly, int>> squarefree(const Poly& f) {
  std::vector<std::pair<Poly, int>> out;
  Poly fp = derivative(f);
  Poly a = gcd(f, fp);
  Poly b = divmod(f, a).first;
  Poly c = divmod(fp, a).first;
  Poly d = sub(c, derivative(b));
  int i = 1;
  while (deg(b) > 0) {
    Poly g = gcd(b, d);
    if (deg(g) > 0) out.emplace_back(g, i);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = sub(c, derivative(b));
    ++i;
  }
  return out;
}

std::vector<Poly> sturm_chain(const Poly& f) {
  std::vector<Poly> chain{f, derivative(f)};
  while (!chain.back().empty() && deg(chain.back()) > 0) {
    Poly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

int variations(const std::vector<Poly>& chain, const Rational& x) {
  int count = 0;
  int prev = 0;
  for (const auto& p : chain) {
    const int s = sign(eval(p, x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

// Roots in (lo, hi]; f square-free.
void isolate(const Poly& f, const std::vector<Poly>& chain, Rational lo, Rational hi,
             int count, std::vector<double>& roots, int depth) {
  if (count == 0) return;
  if (depth > 400) throw Error(ErrorKind::RootFindingFail, "root isolation did not converge");
  if (count == 1) {
    // Bisect on sign changes of f until the interval is below double resolution.
    if (eval(f, hi) == 0) {
      roots.push_back(to_double(hi));
      return;
    }
    const int s_hi = sign(eval(f, hi));
    for (int it = 0; it < 200; ++it) {
      const Rational mid = (lo + hi) / 2;
      const int s = sign(eval(f, mid));
      if (s == 0) {
        roots.push_back(to_double(mid));
        return;
      }
      if (s == s_hi) hi = mid; else lo = mid;
      const double dlo = to_double(lo), dhi = to_double(hi);
      if (dlo == dhi || std::nextafter(dlo, dhi) == dhi) break;
    }
    roots.push_back(to_double((lo + hi) / 2));
    return;
  }
  const Rational mid = (lo + hi) / 2;
  const int left = variations(chain, lo) - variations(chain, mid);
  isolate(f, chain, lo, mid, left, roots, depth + 1);
  isolate(f, chain, mid, hi, count - left, roots, depth + 1);
}

}  // namespace

std::vector<RealRoot> real_roots(std::span<const Rational> coeffs) {
  Poly f(coeffs.begin(), coeffs.end());
  trim(f);
  if (f.empty()) throw Error(ErrorKind::RootFindingFail, "zero polynomial has no isolated roots");
  std::vector<RealRoot> out;
  if (deg(f) == 0) return out;

  for (const auto& [factor, mult] : squarefree(monic(f))) {
    // Cauchy bound: all roots satisfy |x| < 1 + max |a_i / a_n|.
    Rational bound = 0;
    for (int i = 0; i < deg(factor); ++i) bound = std::max(bound, Rational(abs(factor[i])));
    bound += 1;
    const auto chain = sturm_chain(factor);
    const int count = variations(chain, -bound) - variations(chain, bound);
    std::vector<double> roots;
    isolate(factor, chain, -bound, bound, count, roots, 0);
    for (double r : roots) out.push_back({r, mult});
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.value < b.value; });
  return out;
}

}  // namespace nlev
