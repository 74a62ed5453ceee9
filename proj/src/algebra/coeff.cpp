#include "algebra/coeff.hpp"

namespace conformal {

Rational coeff_eval(const Coeff& c, long n, long w, long k) {
  Rational out(0);
  for (auto& [m, q] : c.terms()) {
    Rational t = q;
    const long vals[3] = {n, w, k};
    for (int v = 0; v < 3; ++v)
      for (int e = 0; e < m[v]; ++e) t *= vals[v];
    out += t;
  }
  return out;
}

Coeff coeff_shift(const Coeff& c, long shift_w, long shift_k) {
  Coeff out = c;
  if (shift_w) out = out.substitute(kVarW, Poly::var(kVarW) + Poly(Rational(shift_w)));
  if (shift_k) out = out.substitute(kVarK, Poly::var(kVarK) + Poly(Rational(shift_k)));
  return out;
}

std::string coeff_to_string(const Coeff& c) { return c.to_string({"n", "w", "k"}); }

}  // namespace conformal
