// SPDX-License-Identifier: Apache-2.0
#include "nlev/evaluator.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace nlev {

using cplx = std::complex<double>;

Evaluator squared_evaluator(const ExtendedPolynomial& q, double region_radius,
                            const OdeConfig& cfg) {
  const double X0 = seed_point_for(q, region_radius, cfg);
  return [q, X0, cfg](cplx z) { return wronskian_ode(q, z, X0, cfg); };
}

Evaluator factored_evaluator(const ExtendedPolynomial& q, const QuadConfig& cfg) {
  return [q, cfg](cplx z) { return wronskian_factored(q, z, cfg); };
}

Evaluator root_substituted(Evaluator f, int k) {
  if (k == 1) return f;
  return [f = std::move(f), k](cplx zeta) {
    if (zeta == cplx(0.0, 0.0)) return f(zeta);
    return f(std::polar(std::pow(std::abs(zeta), 1.0 / k), std::arg(zeta) / k));
  };
}

Evaluator memoized(Evaluator f, double resolution) {
  struct Cache {
    std::mutex mu;
    std::map<std::pair<long long, long long>, LogComplex> values;
  };
  auto cache = std::make_shared<Cache>();
  return [f = std::move(f), cache, resolution](cplx z) {
    const std::pair<long long, long long> key{std::llround(z.real() / resolution),
                                              std::llround(z.imag() / resolution)};
    {
      std::lock_guard lock(cache->mu);
      if (auto it = cache->values.find(key); it != cache->values.end()) return it->second;
    }
    const LogComplex v = f(z);
    std::lock_guard lock(cache->mu);
    cache->values.emplace(key, v);
    return v;
  };
}

}  // namespace nlev
