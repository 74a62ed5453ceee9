#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ambient/form.hpp"

namespace conformal {

// Elementary ambient operators.  Weights are L_X-weights: for a k-form,
// L_X F = w F.  Shifts: d 0, delta -2, eps_X +2, iota_X 0, Laplacian -2, Q +2.
AmbientForm exterior_d(const AmbientForm& F);
AmbientForm codifferential(const AmbientForm& F);  // throws DegreeUnderflow on 0-forms
AmbientForm eps_X(const AmbientForm& F);
AmbientForm iota_X(const AmbientForm& F);
AmbientForm lie_X(const AmbientForm& F);       // d iota + iota d
AmbientForm lie_X_star(const AmbientForm& F);  // delta eps + eps delta
AmbientForm K_X(const AmbientForm& F);         // L_X - L_X*
AmbientForm form_laplacian(const AmbientForm& F);         // delta d + d delta
AmbientForm form_laplacian_direct(const AmbientForm& F);  // -h^{AB} d_A d_B componentwise
AmbientForm mul_Q(const AmbientForm& F);
AmbientForm eps_D(const AmbientForm& F);      // d (K_X - 4) + eps_X Lap
AmbientForm eps_D_alt(const AmbientForm& F);  // K_X d + Lap eps_X
AmbientForm iota_D(const AmbientForm& F);     // -delta (K_X - 4) + iota_X Lap
AmbientForm laplacian_power(const AmbientForm& F, int m);

// Multiplication by a 1-form / interior product with its metric dual.
AmbientForm wedge_one_form(const AmbientForm& u, const AmbientForm& F);
AmbientForm interior_one_form(const AmbientForm& u, const AmbientForm& F);
// Wedge product of arbitrary forms.
AmbientForm wedge(const AmbientForm& a, const AmbientForm& b);

// Named, composable linear operator with declared shifts.
struct AmbientOperator {
  std::string name;
  int degree_shift = 0;
  int weight_shift = 0;  // L_X-weight shift
  std::function<AmbientForm(const AmbientForm&)> apply;

  AmbientForm operator()(const AmbientForm& F) const;
  // this after o
  AmbientOperator compose(const AmbientOperator& o) const;
  AmbientOperator operator+(const AmbientOperator& o) const;
  AmbientOperator operator-(const AmbientOperator& o) const;
  AmbientOperator scaled(const Rational& c) const;
  AmbientOperator power(int m) const;
};

AmbientOperator op_identity();
AmbientOperator op_zero(int degree_shift = 0, int weight_shift = 0);
// names: d, delta, eps_X, iota_X, L_X, L_X_star, K_X, Lap, Q, eps_D, iota_D, id
AmbientOperator op_named(const std::string& name);
// "Lap,eps_X" composes right to left like written words: Lap after eps_X
AmbientOperator op_pipeline(const std::vector<std::string>& names);

}  // namespace conformal
