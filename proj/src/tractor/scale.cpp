#include "tractor/scale.hpp"

#include "scalar/expr_json.hpp"

namespace conformal {

ScaleContext::ScaleContext(int n, FactorPtr factor, bool flat) : n_(n), factor_(std::move(factor)), flat_(flat) {
  if (n < 2 || n % 2 != 0) throw DimensionUnsupported("dimension must be even and at least 4");
  if (n == 2) throw DimensionUnsupported("dimension 2 has no Schouten tensor");
  compute();
}

ScaleContext ScaleContext::flat(int n) { return from_omega(n, RatFunc()); }

ScaleContext ScaleContext::from_omega(int n, const RatFunc& omega) {
  return ScaleContext(n, FactorSpec::from_omega(omega, n + 2), omega.is_zero());
}

ScaleContext ScaleContext::from_exp_omega(int n, const RatFunc& exp_omega) {
  if (exp_omega.is_zero()) throw ScalarError("e^omega must be nonzero");
  return ScaleContext(n, FactorSpec::from_exp_omega(exp_omega, n + 2), exp_omega.is_constant());
}

ScaleContext ScaleContext::from_json(const nlohmann::json& j, int n) {
  if (j.contains("n") && j.at("n").get<int>() != n) throw DimensionUnsupported("context dimension mismatch");
  if (j.contains("exp_omega")) return from_exp_omega(n, expr_from_json(j.at("exp_omega"), n).rational());
  if (j.contains("omega")) {
    const auto& o = j.at("omega");
    if (o.is_object() && o.contains("exp_omega")) return from_exp_omega(n, expr_from_json(o.at("exp_omega"), n).rational());
    return from_omega(n, expr_from_json(o, n).rational());
  }
  return flat(n);
}

BaseForm ScaleContext::upsilon_form() const {
  std::vector<ScalarExpr> c;
  for (int a = 1; a <= n_; ++a) c.push_back(ups_[a]);
  return BaseForm::one_form(n_, c);
}

ScalarExpr ScaleContext::metric(int a, int b) const { return a == b ? t_power(2) : ScalarExpr(); }
ScalarExpr ScaleContext::inverse_metric(int a, int b) const { return a == b ? t_power(-2) : ScalarExpr(); }

ScalarExpr ScaleContext::to_scale(const ScalarExpr& f, int w) const { return w == 0 ? f : t_power(w) * f; }
ScalarExpr ScaleContext::from_scale(const ScalarExpr& f, int w) const { return w == 0 ? f : t_power(-w) * f; }

void ScaleContext::compute() {
  const int N = n_ + 1;
  ups_.assign(N, ScalarExpr());
  for (int a = 1; a <= n_; ++a) ups_[a] = ScalarExpr(factor_->dlog.at(a));

  // Christoffel symbols of t^2 delta, computed from the metric itself
  gamma_.assign(N * N * N, ScalarExpr());
  for (int c = 1; c <= n_; ++c)
    for (int a = 1; a <= n_; ++a)
      for (int b = a; b <= n_; ++b) {
        ScalarExpr s;
        for (int d = 1; d <= n_; ++d) {
          ScalarExpr inv = inverse_metric(c, d);
          if (inv.is_zero()) continue;
          ScalarExpr term = metric(b, d).derivative(a) + metric(a, d).derivative(b) - metric(a, b).derivative(d);
          s += inv * term;
        }
        s *= Rational(1, 2);
        ScalarExpr r(s.is_zero() ? RatFunc() : s.rational());
        gamma_[idx3(c, a, b)] = r;
        gamma_[idx3(c, b, a)] = r;
      }

  riem_.assign(N * N * N * N, ScalarExpr());
  auto ridx = [N](int c, int d, int a, int b) { return ((c * N + d) * N + a) * N + b; };
  for (int c = 1; c <= n_; ++c)
    for (int d = 1; d <= n_; ++d)
      for (int a = 1; a <= n_; ++a)
        for (int b = a + 1; b <= n_; ++b) {
          ScalarExpr r = gamma(c, b, d).derivative(a) - gamma(c, a, d).derivative(b);
          for (int e = 1; e <= n_; ++e) r += gamma(c, a, e) * gamma(e, b, d) - gamma(c, b, e) * gamma(e, a, d);
          riem_[ridx(c, d, a, b)] = r;
          riem_[ridx(c, d, b, a)] = -r;
        }

  ScalarExpr ric_trace;
  for (int a = 1; a <= n_; ++a) ric_trace += ricci(a, a);
  // g-hat trace of Ric is t^-2 ric_trace; J_ghat = that / 2(n-1)
  ScalarExpr half_j = ric_trace * Rational(1, 2 * (n_ - 1));
  P_.assign(N * N, ScalarExpr());
  for (int a = 1; a <= n_; ++a)
    for (int b = 1; b <= n_; ++b) {
      ScalarExpr p = ricci(a, b);
      if (a == b) p -= half_j;
      P_[a * N + b] = p * Rational(1, n_ - 2);
    }
  J_ = ScalarExpr();
  for (int a = 1; a <= n_; ++a) J_ += schouten(a, a);
}

ScalarExpr ScaleContext::riemann(int c, int d, int a, int b) const {
  const int N = n_ + 1;
  return riem_[((c * N + d) * N + a) * N + b];
}

ScalarExpr ScaleContext::ricci(int b, int d) const {
  ScalarExpr r;
  for (int c = 1; c <= n_; ++c) r += riemann(c, b, c, d);
  return r;
}

ScalarExpr ScaleContext::weyl(int a, int b, int c, int d) const {
  // R^a_{bcd} with the metric factor t^2 divided out of every term
  auto del = [](int i, int j) { return i == j ? 1 : 0; };
  ScalarExpr r = riemann(a, b, c, d);
  if (del(a, c)) r -= schouten(b, d);
  if (del(a, d)) r += schouten(b, c);
  if (del(b, d)) r -= schouten(a, c);
  if (del(b, c)) r += schouten(a, d);
  return r;
}

ScalarExpr ScaleContext::cotton(int a, int b, int c) const {
  ScalarExpr r = schouten(b, c).derivative(a) - schouten(a, c).derivative(b);
  for (int d = 1; d <= n_; ++d) r -= gamma(d, a, c) * schouten(b, d) - gamma(d, b, c) * schouten(a, d);
  return r;
}

bool ScaleContext::weyl_vanishes() const {
  for (int a = 1; a <= n_; ++a)
    for (int b = 1; b <= n_; ++b)
      for (int c = 1; c <= n_; ++c)
        for (int d = c + 1; d <= n_; ++d)
          if (!weyl(a, b, c, d).is_zero()) return false;
  return true;
}

bool ScaleContext::cotton_vanishes() const {
  for (int a = 1; a <= n_; ++a)
    for (int b = a + 1; b <= n_; ++b)
      for (int c = 1; c <= n_; ++c)
        if (!cotton(a, b, c).is_zero()) return false;
  return true;
}

}  // namespace conformal
