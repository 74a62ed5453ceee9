#pragma once

#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "tractor/base_form.hpp"

namespace conformal {

struct DimensionUnsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WrongWeight : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The metric e^{2 omega} delta on a coordinate patch of R^n.  Base
// coordinates are variables 1..n.  Every weighted quantity is expressed in
// the trivialization of the flat metric delta, so the conformal metric is
// the identity matrix; hatted (scale) quantities carry the curvature.
class ScaleContext {
 public:
  static ScaleContext flat(int n);
  static ScaleContext from_omega(int n, const RatFunc& omega);
  static ScaleContext from_exp_omega(int n, const RatFunc& exp_omega);
  // {"omega": expr} or {"exp_omega": expr}; missing both means flat
  static ScaleContext from_json(const nlohmann::json& j, int n);

  int n() const { return n_; }
  const FactorPtr& factor() const { return factor_; }
  bool is_flat() const { return flat_; }

  // indices run over 1..n
  const ScalarExpr& upsilon(int a) const { return ups_[a]; }
  BaseForm upsilon_form() const;
  const ScalarExpr& gamma(int c, int a, int b) const { return gamma_[idx3(c, a, b)]; }
  const ScalarExpr& schouten(int a, int b) const { return P_[a * (n_ + 1) + b]; }
  const ScalarExpr& J() const { return J_; }  // delta-trace of P
  // R^c_{d a b}: [nabla_a, nabla_b] v^c = R^c_{dab} v^d
  ScalarExpr riemann(int c, int d, int a, int b) const;
  ScalarExpr ricci(int b, int d) const;
  // C_{abcd} with indices lowered by g-hat; zero on every context in scope
  ScalarExpr weyl(int a, int b, int c, int d) const;
  // nabla_a P_bc - nabla_b P_ac
  ScalarExpr cotton(int a, int b, int c) const;
  bool weyl_vanishes() const;
  bool cotton_vanishes() const;

  // g-hat = t^2 delta and its inverse, for intrinsic computations
  ScalarExpr metric(int a, int b) const;
  ScalarExpr inverse_metric(int a, int b) const;

  ScalarExpr t_power(int p) const { return ScalarExpr::t_power(p, factor_); }
  // t^w expressions from the flat trivialization to the g-hat one and back
  ScalarExpr to_scale(const ScalarExpr& f, int w) const;
  ScalarExpr from_scale(const ScalarExpr& f, int w) const;

 private:
  ScaleContext(int n, FactorPtr factor, bool flat);
  void compute();
  int idx3(int c, int a, int b) const { return (c * (n_ + 1) + a) * (n_ + 1) + b; }

  int n_;
  FactorPtr factor_;
  bool flat_;
  std::vector<ScalarExpr> ups_, gamma_, P_, riem_;
  ScalarExpr J_;
};

}  // namespace conformal
