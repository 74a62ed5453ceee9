#include "ambient/random_forms.hpp"

#include <algorithm>

namespace conformal {

namespace {

Monomial random_monomial(int nvars, int degree, Rng& rng) {
  Monomial m;
  for (int i = 0; i < degree; ++i) m[static_cast<int>(rng.range(0, nvars - 1))] += 1;
  return m;
}

std::vector<Mask> pick_masks(int dim, int k, Rng& rng, int limit) {
  std::vector<Mask> all = subsets(0, dim - 1, k);
  if (limit <= 0 || static_cast<int>(all.size()) <= limit) return all;
  // partial Fisher-Yates with our own draws
  for (int i = 0; i < limit; ++i) {
    long j = rng.range(i, static_cast<long>(all.size()) - 1);
    std::swap(all[i], all[j]);
  }
  all.resize(limit);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

ScalarExpr random_homogeneous(int n, int degree, Rng& rng, const RandomFormOptions& opt) {
  std::vector<Poly::Term> terms;
  for (int t = 0; t < opt.terms; ++t) {
    int p = static_cast<int>(rng.range(0, opt.max_poly_degree));
    Monomial m = random_monomial(n + 2, p, rng);
    m[0] += degree - p;
    terms.emplace_back(m, Rational(rng.nonzero(opt.coeff_bound)));
  }
  return ScalarExpr(Poly::from_terms(std::move(terms)));
}

ScalarExpr random_polynomial(int n, Rng& rng, const RandomFormOptions& opt) {
  std::vector<Poly::Term> terms;
  for (int t = 0; t < opt.terms + 1; ++t) {
    int p = static_cast<int>(rng.range(0, opt.max_poly_degree));
    terms.emplace_back(random_monomial(n + 2, p, rng), Rational(rng.nonzero(opt.coeff_bound)));
  }
  return ScalarExpr(Poly::from_terms(std::move(terms)));
}

AmbientForm random_form(int n, int k, int weight, Rng& rng, const RandomFormOptions& opt) {
  AmbientForm F(n, k, weight);
  for (Mask m : pick_masks(n + 2, k, rng, opt.max_components)) F.set(m, random_homogeneous(n, weight - k, rng, opt));
  return F;
}

AmbientForm random_mixed_form(int n, int k, Rng& rng, const RandomFormOptions& opt) {
  AmbientForm F(n, k);
  for (Mask m : pick_masks(n + 2, k, rng, opt.max_components)) F.set(m, random_polynomial(n, rng, opt));
  return F;
}

}  // namespace conformal
