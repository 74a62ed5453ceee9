#pragma once

#include "ambient/form.hpp"
#include "util/rng.hpp"

namespace conformal {

struct RandomFormOptions {
  int max_poly_degree = 2;  // degree of the polynomial part of each term
  int terms = 2;            // terms per component
  long coeff_bound = 3;
  int max_components = 12;  // <= 0 means every component
};

// Homogeneous Laurent polynomial of total degree `degree` on R^{n+2};
// negative powers only of x+.
ScalarExpr random_homogeneous(int n, int degree, Rng& rng, const RandomFormOptions& opt = {});
// Polynomial with terms of mixed degree 0..max_poly_degree.
ScalarExpr random_polynomial(int n, Rng& rng, const RandomFormOptions& opt = {});

// k-form of L_X-weight w (coefficients of degree w - k), weight recorded.
AmbientForm random_form(int n, int k, int weight, Rng& rng, const RandomFormOptions& opt = {});
// k-form with polynomial coefficients of mixed homogeneity.
AmbientForm random_mixed_form(int n, int k, Rng& rng, const RandomFormOptions& opt = {});

}  // namespace conformal
