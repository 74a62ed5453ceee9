#pragma once

#include <string>

#include "scalar/poly.hpp"

namespace conformal {

// Coefficients in Q[n, w, k]: dimension, L_X-weight and form degree of the
// platform an operator word acts on.
using Coeff = Poly;

enum CoeffVar { kVarN = 0, kVarW = 1, kVarK = 2 };

inline Coeff coeff_const(long c) { return Poly(Rational(c)); }
inline Coeff coeff_const(const Rational& c) { return Poly(c); }
inline Coeff coeff_var(CoeffVar v) { return Poly::var(v); }

Rational coeff_eval(const Coeff& c, long n, long w, long k);
// Substitutes w -> w + shift_w and k -> k + shift_k.
Coeff coeff_shift(const Coeff& c, long shift_w, long shift_k);
std::string coeff_to_string(const Coeff& c);

}  // namespace conformal
