#pragma once

#include <map>
#include <string>

#include "json.hpp"
#include "scalar/scalar_expr.hpp"
#include "util/masks.hpp"

namespace conformal {

// k-form on the base coordinate patch R^n, components over bits 1..n.
// Coefficients may carry the conformal unit t; nothing here tracks density
// weight, callers do that.
class BaseForm {
 public:
  using Components = std::map<Mask, ScalarExpr>;

  BaseForm(int n, int degree) : n_(n), degree_(degree) {}
  static BaseForm scalar(int n, const ScalarExpr& f);
  // the 1-form sum_a c[a-1] dy^a
  static BaseForm one_form(int n, const std::vector<ScalarExpr>& c);

  int n() const { return n_; }
  int degree() const { return degree_; }
  const Components& components() const { return comps_; }
  ScalarExpr get(Mask m) const;
  ScalarExpr coeff() const { return get(0); }  // for 0-forms
  void set(Mask m, ScalarExpr v);
  void add(Mask m, const ScalarExpr& v);
  bool is_zero() const { return comps_.empty(); }

  BaseForm operator-() const;
  BaseForm& operator+=(const BaseForm& o);
  BaseForm& operator-=(const BaseForm& o);
  BaseForm& operator*=(const ScalarExpr& f);
  BaseForm& operator*=(const Rational& c);
  friend BaseForm operator+(BaseForm a, const BaseForm& b) { return a += b; }
  friend BaseForm operator-(BaseForm a, const BaseForm& b) { return a -= b; }
  friend BaseForm operator*(const ScalarExpr& f, BaseForm a) { return a *= f; }
  friend BaseForm operator*(BaseForm a, const Rational& c) { return a *= c; }
  friend BaseForm operator*(const Rational& c, BaseForm a) { return a *= c; }
  bool operator==(const BaseForm& o) const { return comps_ == o.comps_ && (comps_.empty() || degree_ == o.degree_); }
  bool operator!=(const BaseForm& o) const { return !(*this == o); }

  // componentwise d/dy^a
  BaseForm partial(int a) const;
  BaseForm substitute_factor(const RatFunc& t_value) const;

  std::string to_string() const;
  nlohmann::json to_json() const;
  static BaseForm from_json(const nlohmann::json& j, int n, FactorPtr factor = nullptr);

 private:
  int n_, degree_;
  Components comps_;
};

// Flat-metric operations (the metric is the identity in these coordinates).
BaseForm flat_d(const BaseForm& u);
BaseForm flat_delta(const BaseForm& u);  // -sum_a iota(e_a) d_a
BaseForm wedge(const BaseForm& a, const BaseForm& b);
// epsilon / iota of the coordinate covector e^a
BaseForm eps_basis(int a, const BaseForm& u);
BaseForm iota_basis(int a, const BaseForm& u);
// interior product with a 1-form, indices raised by the identity
BaseForm interior(const BaseForm& v, const BaseForm& u);

}  // namespace conformal
