#pragma once

#include "tractor/base_form.hpp"
#include "util/rng.hpp"

namespace conformal {

// Random polynomial in the base coordinates x1..xn.
inline Poly random_base_poly(int n, Rng& rng, int max_deg = 2, int terms = 3) {
  std::vector<Poly::Term> out;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    int deg = static_cast<int>(rng.range(0, max_deg));
    for (int i = 0; i < deg; ++i) m[static_cast<int>(rng.range(1, n))] += 1;
    out.emplace_back(m, Rational(rng.nonzero(4)));
  }
  return Poly::from_terms(std::move(out));
}

inline BaseForm random_base_form(int n, int k, Rng& rng, int max_deg = 2, int max_components = 3) {
  BaseForm u(n, k);
  if (k < 0 || k > n) return u;
  auto masks = subsets(1, n, k);
  int count = static_cast<int>(rng.range(1, max_components));
  for (int i = 0; i < count; ++i) {
    Mask m = masks[static_cast<size_t>(rng.range(0, static_cast<long>(masks.size()) - 1))];
    u.add(m, ScalarExpr(random_base_poly(n, rng, max_deg)));
  }
  if (u.is_zero()) u.add(masks.front(), ScalarExpr(1L));
  return u;
}

// Random rescaling function; linear when max_deg = 1.
inline RatFunc random_omega(int n, Rng& rng, int max_deg = 2) {
  Poly p = random_base_poly(n, rng, max_deg, 3);
  // keep the constant term out, it only rescales by a constant
  std::vector<Poly::Term> keep;
  for (auto& [m, c] : p.terms())
    if (m != Monomial{}) keep.emplace_back(m, c);
  if (keep.empty()) {
    Monomial m;
    m[static_cast<int>(rng.range(1, n))] = 1;
    keep.emplace_back(m, Rational(rng.nonzero(3)));
  }
  return RatFunc(Poly::from_terms(std::move(keep)));
}

}  // namespace conformal
