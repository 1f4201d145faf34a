#pragma once
// Slow reference implementations used as test oracles.

#include <map>
#include <random>

#include "klwb/rings.hpp"

namespace oracle {

using Terms = std::map<int, klwb::Integer>;

inline Terms clean(Terms t) {
  for (auto it = t.begin(); it != t.end();) it = it->second == 0 ? t.erase(it) : std::next(it);
  return t;
}

inline Terms mul(const Terms& a, const Terms& b) {
  Terms r;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) r[i + j] += x * y;
  return clean(r);
}

inline Terms add(const Terms& a, const Terms& b) {
  Terms r = a;
  for (const auto& [j, y] : b) r[j] += y;
  return clean(r);
}

inline klwb::LaurentPoly random_poly(std::mt19937_64& rng, int lo = -3, int hi = 3, int cmax = 4) {
  std::uniform_int_distribution<int> e(lo, hi), c(-cmax, cmax), n(0, 4);
  std::map<int, klwb::Integer> t;
  int k = n(rng);
  for (int i = 0; i < k; ++i) t[e(rng)] += c(rng);
  return klwb::LaurentPoly(t);
}

}  // namespace oracle
