#pragma once

#include <vector>

#include "tractor/scale.hpp"

namespace conformal {

struct DivisorZero : std::domain_error {
  using std::domain_error::domain_error;
};

// A k-form of density weight w in the flat trivialization.  The lower-index
// convention E_k[w] = E^k[w + 2k - n] is only a relabelling of w.
struct WeightedForm {
  BaseForm form;
  int weight = 0;

  int degree() const { return form.degree(); }
  int lower_weight() const { return weight - 2 * form.degree() + form.n(); }
};

// Levi-Civita connection of the scale, coupled to the density bundle.
// Computed intrinsically: move to the scale trivialization (multiply by
// t^w), differentiate, correct with the Christoffels of t^2 delta.
BaseForm lc_nabla(const ScaleContext& ctx, const BaseForm& u, int w, int a);
std::vector<BaseForm> lc_nabla(const ScaleContext& ctx, const BaseForm& u, int w);  // entries 1..n
// nabla^a nabla_a u
BaseForm rough_laplacian(const ScaleContext& ctx, const BaseForm& u, int w);

BaseForm d_hat(const ScaleContext& ctx, const BaseForm& u, int w);
BaseForm delta_hat(const ScaleContext& ctx, const BaseForm& u, int w);
// the derivation P_b^c e(e^b) i(e_c)
BaseForm p_sharp(const ScaleContext& ctx, const BaseForm& u);
BaseForm j_times(const ScaleContext& ctx, const BaseForm& u);

// -nabla^a nabla_a - (1 - n/2) J on densities of weight 1 - n/2
BaseForm yamabe(const ScaleContext& ctx, const BaseForm& f, int w);
// delta d on E^{n/2-1}
BaseForm maxwell(const ScaleContext& ctx, const BaseForm& u);
// 1/2 delta (d delta + 2J - 4P#) on 1-forms, n = 4
BaseForm eastwood_singer(const ScaleContext& ctx, const BaseForm& u);
// delta (d delta + 2J - 4P#) d on functions, n = 4
BaseForm paneitz(const ScaleContext& ctx, const BaseForm& f);

// flat Hodge star for the orientation e^1 ^ ... ^ e^n, so that
// a ^ *b = <a, b> vol
BaseForm hodge_star(const BaseForm& u);

}  // namespace conformal
