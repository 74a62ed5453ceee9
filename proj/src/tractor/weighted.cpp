#include "tractor/weighted.hpp"

namespace conformal {

namespace {

// -sum_{b,c} G^c_{ab} e(e^b) i(e_c) u
BaseForm christoffel_term(const ScaleContext& ctx, const BaseForm& u, int a) {
  BaseForm out(u.n(), u.degree());
  if (u.degree() == 0) return out;
  for (int c = 1; c <= ctx.n(); ++c) {
    BaseForm ic = iota_basis(c, u);
    if (ic.is_zero()) continue;
    for (int b = 1; b <= ctx.n(); ++b) {
      const ScalarExpr& g = ctx.gamma(c, a, b);
      if (g.is_zero()) continue;
      out -= g * eps_basis(b, ic);
    }
  }
  return out;
}

}  // namespace

BaseForm lc_nabla(const ScaleContext& ctx, const BaseForm& u, int w, int a) {
  BaseForm out(u.n(), u.degree());
  for (auto& [m, f] : u.components()) out.set(m, ctx.from_scale(ctx.to_scale(f, w).derivative(a), w));
  out += christoffel_term(ctx, u, a);
  return out;
}

std::vector<BaseForm> lc_nabla(const ScaleContext& ctx, const BaseForm& u, int w) {
  std::vector<BaseForm> out(ctx.n() + 1, BaseForm(u.n(), u.degree()));
  for (int a = 1; a <= ctx.n(); ++a) out[a] = lc_nabla(ctx, u, w, a);
  return out;
}

BaseForm rough_laplacian(const ScaleContext& ctx, const BaseForm& u, int w) {
  auto grad = lc_nabla(ctx, u, w);
  BaseForm out(u.n(), u.degree());
  for (int a = 1; a <= ctx.n(); ++a) {
    out += lc_nabla(ctx, grad[a], w, a);
    for (int c = 1; c <= ctx.n(); ++c) {
      const ScalarExpr& g = ctx.gamma(c, a, a);
      if (!g.is_zero()) out -= g * grad[c];
    }
  }
  return out;
}

BaseForm d_hat(const ScaleContext& ctx, const BaseForm& u, int w) {
  BaseForm out(u.n(), u.degree() + 1);
  for (int a = 1; a <= ctx.n(); ++a) out += eps_basis(a, lc_nabla(ctx, u, w, a));
  return out;
}

BaseForm delta_hat(const ScaleContext& ctx, const BaseForm& u, int w) {
  BaseForm out(u.n(), u.degree() - 1);
  if (u.degree() == 0) return out;
  for (int a = 1; a <= ctx.n(); ++a) out -= iota_basis(a, lc_nabla(ctx, u, w, a));
  return out;
}

BaseForm p_sharp(const ScaleContext& ctx, const BaseForm& u) {
  BaseForm out(u.n(), u.degree());
  if (u.degree() == 0) return out;
  for (int c = 1; c <= ctx.n(); ++c) {
    BaseForm ic = iota_basis(c, u);
    if (ic.is_zero()) continue;
    for (int b = 1; b <= ctx.n(); ++b) {
      const ScalarExpr& p = ctx.schouten(b, c);
      if (!p.is_zero()) out += p * eps_basis(b, ic);
    }
  }
  return out;
}

BaseForm j_times(const ScaleContext& ctx, const BaseForm& u) { return ctx.J() * u; }

BaseForm yamabe(const ScaleContext& ctx, const BaseForm& f, int w) {
  if (2 * w != 2 - ctx.n()) throw WrongWeight("the Yamabe operator acts on weight 1 - n/2");
  BaseForm out = -rough_laplacian(ctx, f, w);
  out -= Rational(w) * j_times(ctx, f);
  return out;
}

BaseForm maxwell(const ScaleContext& ctx, const BaseForm& u) {
  if (2 * u.degree() + 2 != ctx.n()) throw DimensionUnsupported("the Maxwell operator acts on (n/2-1)-forms");
  return delta_hat(ctx, d_hat(ctx, u, 0), 0);
}

BaseForm eastwood_singer(const ScaleContext& ctx, const BaseForm& u) {
  if (ctx.n() != 4) throw DimensionUnsupported("the gauge operator G is defined for n = 4");
  if (u.degree() != 1) throw std::invalid_argument("G acts on 1-forms");
  BaseForm inner = d_hat(ctx, delta_hat(ctx, u, 0), -2);
  inner += Rational(2) * j_times(ctx, u);
  inner -= Rational(4) * p_sharp(ctx, u);
  return Rational(1, 2) * delta_hat(ctx, inner, -2);
}

BaseForm paneitz(const ScaleContext& ctx, const BaseForm& f) {
  if (ctx.n() != 4) throw DimensionUnsupported("the Paneitz operator here is the n = 4 one");
  if (f.degree() != 0) throw std::invalid_argument("the Paneitz operator acts on functions");
  return Rational(2) * eastwood_singer(ctx, d_hat(ctx, f, 0));
}

BaseForm hodge_star(const BaseForm& u) {
  const int n = u.n();
  Mask all = 0;
  for (int a = 1; a <= n; ++a) all |= bit(a);
  BaseForm out(n, n - u.degree());
  for (auto& [m, f] : u.components()) {
    Mask c = all & ~m;
    int s = wedge_sign(m, c);
    out.add(c, s < 0 ? -f : f);
  }
  return out;
}

}  // namespace conformal
