#include "factory/gsection.hpp"

#include "ambient/operators.hpp"
#include "tractor/weighted.hpp"

namespace conformal {

GSection q_inject(const BaseForm& mu, int w) {
  GSection F(mu.n(), mu.degree(), w);
  F.mu = mu;
  return F;
}

BaseForm q_project(const GDualSection& F) { return F.u; }

GDualSection q_dual_embed(const BaseForm& u, int w) {
  GDualSection F(u.n(), u.degree(), w);
  F.u = u;
  return F;
}

GSection d_tilde(const GSection& F) {
  GSection out(F.n(), F.degree() + 1, F.weight);
  out.alpha = Rational(F.weight) * F.mu - flat_d(F.alpha);
  out.mu = flat_d(F.mu);
  return out;
}

GSection d_tilde(const ScaleContext& ctx, const GSection& F) {
  GSection out(F.n(), F.degree() + 1, F.weight);
  out.alpha = Rational(F.weight) * F.mu - d_hat(ctx, F.alpha, F.weight);
  out.mu = d_hat(ctx, F.mu, F.weight);
  return out;
}

GDualSection delta_tilde(const GDualSection& F) {
  GDualSection out(F.n(), F.degree() - 1, F.weight);
  if (F.degree() == 0) return out;
  out.u = flat_delta(F.u) - Rational(F.weight) * F.v;
  if (F.degree() >= 2) out.v = -flat_delta(F.v);
  return out;
}

GSection change_scale(const GSection& F, const BaseForm& upsilon) {
  GSection out = F;
  if (F.degree() > 0) out.mu += wedge(upsilon, F.alpha);
  return out;
}

GSection g_wedge(const GSection& a, const GSection& b) {
  GSection out(a.n(), a.degree() + b.degree(), a.weight + b.weight);
  out.mu = wedge(a.mu, b.mu);
  if (out.degree() == 0) return out;
  if (a.degree() > 0) out.alpha += wedge(a.alpha, b.mu);
  if (b.degree() > 0) out.alpha += Rational(a.degree() % 2 ? -1 : 1) * wedge(a.mu, b.alpha);
  return out;
}

GSection y_section(const ScaleContext& ctx) {
  GSection Y(ctx.n(), 1, 0);
  Y.alpha = BaseForm::scalar(ctx.n(), ScalarExpr(1L));
  Y.mu = -ctx.upsilon_form();
  return Y;
}

GDualSection eps_x(const GDualSection& F) {
  GDualSection out(F.n(), F.degree() + 1, F.weight);
  out.v = F.u;
  return out;
}

GSection iota_x(const GSection& F) {
  GSection out(F.n(), F.degree() - 1, F.weight);
  out.mu = F.alpha;
  return out;
}

GDualSection iota_y(const ScaleContext& ctx, const GDualSection& F) {
  GDualSection out(F.n(), F.degree() - 1, F.weight);
  if (F.degree() == 0) return out;
  BaseForm ups = ctx.upsilon_form();
  out.u = F.v - interior(ups, F.u);
  if (F.degree() >= 2) out.v = interior(ups, F.v);
  return out;
}

AmbientForm ambient_y(int n) {
  AmbientForm y(n, 1, 0);
  y.set(bit(0), ScalarExpr::var(0, -1));
  return y;
}

AmbientForm ambient_x(int n) {
  // lowering x^A d_A with the null-frame metric swaps x+ and x-
  AmbientForm x(n, 1, 2);
  x.set(bit(0), ScalarExpr::var(n + 1));
  for (int i = 1; i <= n; ++i) x.set(bit(i), ScalarExpr::var(i));
  x.set(bit(n + 1), ScalarExpr::var(0));
  return x;
}

AmbientForm to_ambient(const GSection& F) {
  const int n = F.n(), w = F.weight;
  AmbientForm out = extend_form(F.mu, w);
  if (F.degree() > 0 && !F.alpha.is_zero()) out += wedge(ambient_y(n), extend_form(F.alpha, w));
  out.set_weight(w);
  return out;
}

AmbientForm to_ambient(const GDualSection& F) {
  const int W = F.upper_weight();
  AmbientForm out = extend_form(F.u, W);
  if (F.degree() > 0 && !F.v.is_zero()) out += wedge(ambient_x(F.n()), extend_form(F.v, W - 2));
  out.set_weight(W);
  return out;
}

GSection g_from_ambient(const AmbientForm& F, int w) {
  GSection out(F.n(), F.degree(), w);
  out.mu = pullback_section(F);
  if (F.degree() > 0) out.alpha = pullback_section(iota_X(F));
  return out;
}

GDualSection g_dual_from_ambient(const AmbientForm& F, int w) {
  const int n = F.n();
  GDualSection out(n, F.degree(), w);
  out.u = pullback_section(F);
  if (F.degree() > 0) {
    AmbientForm dxp(n, 1);
    dxp.set(bit(0), ScalarExpr(1L));
    out.v = pullback_section(interior_one_form(dxp, F));
  }
  return out;
}

}  // namespace conformal
