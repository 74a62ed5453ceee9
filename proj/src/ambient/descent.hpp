#pragma once

#include <optional>

#include "ambient/checks.hpp"
#include "tractor/base_form.hpp"

namespace conformal {

// (x+)^w f(x^i / x+): the x- independent homogeneous extension.
ScalarExpr extend_density(const ScalarExpr& f, int n, int w);

// (x+)^w pi^* mu with pi^* dy^i = dx^i/x+ - x^i dx+/(x+)^2; L_X-weight w.
AmbientForm extend_form(const BaseForm& mu, int w);

// Pullback along the section s(y) = (1, y, -|y|^2/2).  With upsilon given,
// the section is rescaled by e^omega, d(omega) = upsilon, and the result is
// expressed in the flat trivialization (the overall e^{w omega} is dropped).
BaseForm pullback_section(const AmbientForm& F, const std::optional<BaseForm>& upsilon = std::nullopt);

// Restriction of a weighted form; throws WeightMissing without a weight.
BaseForm restrict_to_base(const AmbientForm& F);

// Compares restrict(P(extend(mu))) with restrict(P(extend(mu) + Q junk)).
CheckResult check_extension_independence(const AmbientOperator& P, int n, int k, int w, int trials, uint64_t seed);

}  // namespace conformal
