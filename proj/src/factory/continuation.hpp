#pragma once

#include <optional>
#include <string>
#include <vector>

#include "factory/factory.hpp"

namespace conformal {

// e^omega = 2 / (1 + |y|^2): the round sphere in stereographic coordinates.
RatFunc round_sphere_factor(int n);

// In dimension N, with l fixed and w = l - N/2 != 0, the round-sphere value
// of L^0_l(sigma^w) / (2 w (l+1)) in the sphere's own trivialization, read at
// the origin.  sigma is the ambient linear function (x+ - 2 x-)/2, which
// agrees with the sphere scale on the null cone.
Rational continuation_sample(int N, int l);

struct ContinuationResult {
  int n = 0, l = 0;
  std::vector<std::pair<int, Rational>> samples;  // (N, value)
  int degree = 0;           // degree in N of the interpolant
  bool consistent = false;  // extra samples reproduced by the interpolant
  Rational m_value;         // interpolant at N = n
  Rational q_value;         // q_normalization(n, 0) * m_value
};
// Q_0 1 on the round n-sphere by continuation in the dimension.
ContinuationResult q0_round_sphere_by_continuation(int n);

// Q_0 1 on the round sphere from M_0 directly, in the sphere trivialization;
// nullopt when the field is not constant.
std::optional<Rational> q0_round_sphere_direct(int n);
// the field itself, in the flat trivialization
ScalarExpr q0_round_sphere_field(int n);

// Golden values live in $CONFORMAL_GOLDEN_DIR or the source tree's
// tests/golden directory.
std::string golden_dir();
std::string golden_path(const std::string& name);

}  // namespace conformal
