#include "tractor/tractor_ops.hpp"

namespace conformal {

namespace {

FrameMap connection_map(const ScaleContext& ctx, int a) {
  const int n = ctx.n(), x = n + 1;
  FrameMap images(n + 2);
  for (int b = 1; b <= n; ++b) {
    const ScalarExpr& p = ctx.schouten(a, b);
    if (!p.is_zero()) images[0].push_back({b, p});
  }
  for (int c = 1; c <= n; ++c) {
    for (int b = 1; b <= n; ++b) {
      const ScalarExpr& g = ctx.gamma(c, a, b);
      if (!g.is_zero()) images[c].push_back({b, -g});
    }
    const ScalarExpr& p = ctx.schouten(a, c);
    if (!p.is_zero()) images[c].push_back({x, -p});
    if (c == a) images[c].push_back({0, ScalarExpr(-1L)});
  }
  images[x].push_back({a, ScalarExpr(1L)});
  return images;
}

}  // namespace

FrameForm tractor_nabla(const ScaleContext& ctx, const FrameForm& v, int a) {
  FrameForm out(v.n(), v.degree(), v.weight(), v.blocks());
  const ScalarExpr& ups = ctx.upsilon(a);
  for (auto& [m, f] : v.components()) {
    ScalarExpr g = f.derivative(a);
    int w = v.coefficient_weight(m);
    if (w != 0 && !ups.is_zero()) g += Rational(w) * ups * f;
    out.add(m, g);
  }
  out.add_scaled(apply_derivation(v, replicate(connection_map(ctx, a), v.n(), v.blocks())), ScalarExpr(1L));
  return out;
}

std::vector<FrameForm> tractor_nabla(const ScaleContext& ctx, const FrameForm& v) {
  std::vector<FrameForm> out(ctx.n() + 1, FrameForm(v.n(), v.degree(), v.weight(), v.blocks()));
  for (int a = 1; a <= ctx.n(); ++a) out[a] = tractor_nabla(ctx, v, a);
  return out;
}

FrameForm tractor_laplacian(const ScaleContext& ctx, const FrameForm& v) {
  auto grad = tractor_nabla(ctx, v);
  FrameForm out(v.n(), v.degree(), v.weight(), v.blocks());
  for (int a = 1; a <= ctx.n(); ++a) {
    out.add_scaled(tractor_nabla(ctx, grad[a], a), ScalarExpr(1L));
    for (int c = 1; c <= ctx.n(); ++c) {
      const ScalarExpr& g = ctx.gamma(c, a, a);
      if (!g.is_zero()) out.add_scaled(grad[c], -g);
    }
  }
  return out;
}

FrameForm tractor_curvature_on(const ScaleContext& ctx, const FrameForm& v, int a, int b) {
  return tractor_nabla(ctx, tractor_nabla(ctx, v, b), a) - tractor_nabla(ctx, tractor_nabla(ctx, v, a), b);
}

FrameForm splitting_S(const ScaleContext& ctx, const BaseForm& mu) {
  const int n = ctx.n(), k = mu.degree();
  if (n == 2 * k) throw DivisorZero("splitting operator needs n != 2k");
  if (k < 1) throw std::invalid_argument("splitting operator acts on forms of degree at least 1");
  TractorSlots s(n, k);
  s.mu = mu;
  s.rho = Rational(1, n - 2 * k) * delta_hat(ctx, mu, 0);
  return FrameForm::from_slots(s, -k);
}

FrameForm tractor_box(const ScaleContext& ctx, const FrameForm& v) {
  const int w = v.weight();
  if (2 * w != 2 - ctx.n()) throw WrongWeight("the coupled Yamabe operator acts on weight 1 - n/2");
  FrameForm out = -tractor_laplacian(ctx, v);
  out.add_scaled(v, ctx.J() * Rational(-w));
  FrameForm typed(v.n(), v.degree(), w - 2, v.blocks());
  typed.add_scaled(out, ScalarExpr(1L));
  return typed;
}

FrameForm translate_box_S(const ScaleContext& ctx, const BaseForm& mu) {
  if (2 * mu.degree() + 2 != ctx.n()) throw DimensionUnsupported("translation acts on (n/2-1)-forms");
  return tractor_box(ctx, splitting_S(ctx, mu));
}

TractorDValue tractor_D(const ScaleContext& ctx, const FrameForm& v) {
  const int n = ctx.n(), w = v.weight();
  const Rational c(n + 2 * w - 2);
  TractorDValue d;
  d.parts.assign(n + 2, FrameForm(v.n(), v.degree(), w, v.blocks()));
  d.parts[0] = (c * Rational(w)) * v;
  auto grad = tractor_nabla(ctx, v);
  for (int a = 1; a <= n; ++a) d.parts[a] = c * grad[a];
  FrameForm lx(v.n(), v.degree(), w - 2, v.blocks());
  lx.add_scaled(tractor_laplacian(ctx, v), ScalarExpr(-1L));
  lx.add_scaled(v, ctx.J() * Rational(-w));
  d.parts[n + 1] = lx;
  return d;
}

TractorDValue change_frame(const TractorDValue& d, const BaseForm& upsilon) {
  const int n = upsilon.n();
  FrameMap images = frame_change_map(n, upsilon);
  TractorDValue out;
  for (int j = 0; j < n + 2; ++j) {
    const FrameForm& ref = d.parts[j];
    out.parts.emplace_back(ref.n(), ref.degree(), ref.weight(), ref.blocks());
  }
  for (int i = 0; i < n + 2; ++i) {
    FrameForm moved = change_frame(d.parts[i], upsilon);
    for (auto& [j, c] : images[i]) out.parts[j].add_scaled(moved, c);
  }
  return out;
}

std::map<std::pair<int, int>, FrameForm> tractor_curvature_K(const ScaleContext& ctx) {
  const int n = ctx.n(), x = n + 1;
  std::map<std::pair<int, int>, FrameForm> out;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      FrameForm k(n, 2, 0);
      for (int c = 1; c <= n; ++c)
        for (int e = c + 1; e <= n; ++e) k.add(bit(c) | bit(e), ctx.weyl(c, e, a, b));
      // -4 X_[C Z_E]^e nabla_[a P_b]e = -(cotton_abe) X ^ Z^e
      for (int e = 1; e <= n; ++e) {
        ScalarExpr y = ctx.cotton(a, b, e);
        if (!y.is_zero()) k.add(bit(e) | bit(x), y);  // X ^ Z^e = -Z^e ^ X
      }
      out.emplace(std::make_pair(a, b), std::move(k));
    }
  return out;
}

FrameForm omega_field(const ScaleContext& ctx) {
  const int n = ctx.n(), shift = n + 2;
  FrameForm omega(n, 4, -2, 2);
  for (auto& [ab, k] : tractor_curvature_K(ctx)) {
    Mask outer = bit(shift + ab.first) | bit(shift + ab.second);
    for (auto& [m, f] : k.components()) omega.add(m | outer, f);
  }
  return omega;
}

FrameForm w_tractor(const ScaleContext& ctx) {
  const int n = ctx.n(), shift = n + 2;
  if (n == 4) throw DimensionUnsupported("the W-tractor is not defined in dimension 4");
  FrameForm psi = eps_x(omega_field(ctx), 1);
  TractorDValue d = tractor_D(ctx, psi);
  const int w = psi.weight() - 1;
  FrameForm out(n, psi.degree() - 1, w, 2);
  out.add_scaled(remove_bit(d.parts[0], psi.x_bit(1), w), ScalarExpr(1L));
  for (int a = 1; a <= n; ++a) out.add_scaled(remove_bit(d.parts[a], shift + a, w), ScalarExpr(1L));
  out.add_scaled(remove_bit(d.parts[n + 1], psi.y_bit(1), w), ScalarExpr(1L));
  Rational c(3, (n - 2) * (n - 4));
  c.canonicalize();
  return c * out;
}

}  // namespace conformal
