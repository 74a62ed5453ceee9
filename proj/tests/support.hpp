#pragma once

#include "ambient/random_forms.hpp"
#include "scalar/expr_json.hpp"
#include "util/rng.hpp"

namespace testsupport {

using namespace conformal;

inline Poly small_poly(int nvars, Rng& rng, int max_deg = 2, int terms = 3) {
  std::vector<Poly::Term> out;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    int deg = static_cast<int>(rng.range(0, max_deg));
    for (int i = 0; i < deg; ++i) m[static_cast<int>(rng.range(0, nvars - 1))] += 1;
    out.emplace_back(m, Rational(rng.nonzero(4)));
  }
  return Poly::from_terms(std::move(out));
}

// p / (1 + q^2) style quotient with a denominator that never vanishes on the cone identically
inline RatFunc small_ratfunc(int nvars, Rng& rng) {
  Poly num = small_poly(nvars, rng);
  if (rng.coin()) return RatFunc(num);
  Poly q = small_poly(nvars, rng, 1, 2);
  Poly den = Poly(Rational(1)) + q * q;
  return RatFunc(num) / RatFunc(den);
}

inline std::vector<std::string> names(int n) { return variable_names(n); }

}  // namespace testsupport
