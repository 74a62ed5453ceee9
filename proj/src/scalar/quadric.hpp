#pragma once

#include <vector>

#include "scalar/scalar_expr.hpp"

namespace conformal {

// Null-frame flat ambient space R^{n+2}: coordinates x+ (index 0),
// x1..xn (1..n), x- (n+1).  h(d+, d-) = 1, h(di, dj) = delta_ij.
class QuadricContext {
 public:
  explicit QuadricContext(int n);

  int n() const { return n_; }
  int dim() const { return n_ + 2; }
  int plus() const { return 0; }
  int minus() const { return n_ + 1; }

  // h_{AB}; the null frame is its own inverse, so h^{AB} has the same entries.
  int h(int a, int b) const;
  // index B with h_{AB} != 0 (the frame pairs + with -)
  int partner(int a) const;
  const Poly& Q_poly() const { return q_; }
  // sum_i (x^i)^2
  const Poly& radius2() const { return r2_; }

  // Remainder modulo Q: eliminates x- using x- = -|x|^2 / (2 x+).
  ScalarExpr reduce_mod_quadric(const ScalarExpr& e) const;
  RatFunc reduce_mod_quadric(const RatFunc& e) const;
  // Cone restriction followed by x+ = 1; the result depends on x1..xn only.
  RatFunc restrict_to_base(const RatFunc& e) const;
  // Homogeneous x- independent extension of weight w: (x+)^w f(x/x+).
  RatFunc extend_from_base(const RatFunc& f, int w) const;

 private:
  int n_;
  Poly q_, r2_;
  RatFunc xminus_on_cone_;
};

}  // namespace conformal
