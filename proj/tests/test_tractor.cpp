#include "doctest.h"
#include "scalar/expr_json.hpp"
#include "tractor/random_base.hpp"
#include "tractor/tractor_ops.hpp"

using namespace conformal;

namespace {

ScalarExpr y(int i) { return ScalarExpr::var(i); }

RatFunc round_factor(int n) {
  Poly r2;
  for (int a = 1; a <= n; ++a) r2 += Poly::var(a, 2);
  return RatFunc(Poly(Rational(2))) / RatFunc(Poly(Rational(1)) + r2);
}

BaseForm component(const std::vector<BaseForm>& v, int n) {
  // gathers nabla_a u (for a 0-form u) into a 1-form
  std::vector<ScalarExpr> c;
  for (int a = 1; a <= n; ++a) c.push_back(v[a].coeff());
  return BaseForm::one_form(n, c);
}

TractorSlots random_slots(int n, int k, Rng& rng) {
  TractorSlots s(n, k);
  s.alpha = random_base_form(n, k - 1, rng);
  s.mu = random_base_form(n, k, rng);
  s.phi = random_base_form(n, k - 2, rng);
  s.rho = random_base_form(n, k - 1, rng);
  return s;
}

}  // namespace

TEST_CASE("Schouten tensor examples") {
  auto flat = ScaleContext::flat(4);
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) CHECK(flat.schouten(a, b).is_zero());
  CHECK(flat.J().is_zero());
  CHECK(flat.weyl_vanishes());

  auto sphere = ScaleContext::from_exp_omega(4, round_factor(4));
  RatFunc e2 = round_factor(4).pow(2);
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      ScalarExpr expect = a == b ? ScalarExpr(e2 * Rational(1, 2)) : ScalarExpr();
      CHECK(sphere.schouten(a, b) == expect);
    }
  CHECK(sphere.J() == ScalarExpr(e2 * Rational(2)));
  CHECK(sphere.weyl_vanishes());
  CHECK(sphere.cotton_vanishes());
}

TEST_CASE("curvature of random rescalings") {
  Rng rng(11);
  for (int n : {4, 6})
    for (int trial = 0; trial < (n == 4 ? 6 : 2); ++trial) {
      RatFunc omega = random_omega(n, rng, 3);
      auto ctx = ScaleContext::from_omega(n, omega);
      CHECK(ctx.weyl_vanishes());
      CHECK(ctx.cotton_vanishes());
      ScalarExpr norm, div;
      for (int a = 1; a <= n; ++a) {
        norm += ctx.upsilon(a) * ctx.upsilon(a);
        div += ctx.upsilon(a).derivative(a);
      }
      for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
          ScalarExpr p = -ctx.upsilon(b).derivative(a) + ctx.upsilon(a) * ctx.upsilon(b);
          if (a == b) p -= norm * Rational(1, 2);
          CHECK(ctx.schouten(a, b) == p);
          ScalarExpr ric = Rational(n - 2) * ctx.schouten(a, b);
          if (a == b) ric += ctx.J();
          CHECK(ctx.ricci(a, b) == ric);
        }
      CHECK(ctx.J() == -div + Rational(2 - n) * Rational(1, 2) * norm);
    }
}

TEST_CASE("density and form connection laws") {
  Rng rng(12);
  for (int n : {4, 6}) {
    auto flat = ScaleContext::flat(n);
    for (int trial = 0; trial < 10; ++trial) {
      auto ctx = ScaleContext::from_omega(n, random_omega(n, rng));
      BaseForm ups = ctx.upsilon_form();
      int w = static_cast<int>(rng.range(-4, 3));
      BaseForm f = random_base_form(n, 0, rng);
      BaseForm lhs = component(lc_nabla(ctx, f, w), n);
      BaseForm rhs = component(lc_nabla(flat, f, w), n) + Rational(w) * (f.coeff() * ups);
      CHECK(lhs == rhs);

      BaseForm u = random_base_form(n, 1, rng);
      for (int a = 1; a <= n; ++a) {
        BaseForm got = lc_nabla(ctx, u, 0, a);
        BaseForm expect = lc_nabla(flat, u, 0, a) - ctx.upsilon(a) * u - u.get(bit(a)) * ups;
        expect.add(bit(a), interior(ups, u).coeff());
        CHECK(got == expect);
      }

      int k = static_cast<int>(rng.range(1, n));
      BaseForm v = random_base_form(n, k, rng);
      BaseForm dl = delta_hat(ctx, v, 0) - flat_delta(v) + Rational(n - 2 * k) * interior(ups, v);
      CHECK(dl.is_zero());
      CHECK(d_hat(ctx, v, 0) == flat_d(v));
    }
  }
  CHECK(component(lc_nabla(ScaleContext::from_omega(4, RatFunc::var(1)), BaseForm::scalar(4, y(2)), 0), 4) ==
        flat_d(BaseForm::scalar(4, y(2))));
}

TEST_CASE("projector and slot transformation laws") {
  Rng rng(13);
  for (int n : {4, 6})
    for (int trial = 0; trial < 10; ++trial) {
      int k = static_cast<int>(rng.range(0, n + 1));
      BaseForm ups = ScaleContext::from_omega(n, random_omega(n, rng, 1)).upsilon_form();
      TractorSlots s = random_slots(n, k, rng);
      FrameForm v = FrameForm::from_slots(s, static_cast<int>(rng.range(-3, 2)));
      CHECK(v.slots() == s);
      CHECK(change_frame(v, ups).slots() == transform_slots(s, ups));
      CHECK(change_frame(change_frame(v, ups), -ups) == v);
      CHECK(tractor_metric(change_frame(v, ups), change_frame(v, ups)) == tractor_metric(v, v));
    }
  // k = 1 matrix law and metric
  Rng r2(14);
  BaseForm ups = ScaleContext::from_omega(4, random_omega(4, r2)).upsilon_form();
  TractorSlots s = random_slots(4, 1, r2);
  TractorSlots t = change_frame(FrameForm::from_slots(s, 0), ups).slots();
  CHECK(t.alpha == s.alpha);
  CHECK(t.mu == s.mu + s.alpha.coeff() * ups);
  ScalarExpr norm = interior(ups, ups).coeff();
  CHECK(t.rho.coeff() == s.rho.coeff() - interior(ups, s.mu).coeff() - norm * s.alpha.coeff() * Rational(1, 2));
  FrameForm v = FrameForm::from_slots(s, 0);
  CHECK(tractor_metric(v, v) == interior(s.mu, s.mu).coeff() + Rational(2) * s.alpha.coeff() * s.rho.coeff());
  CHECK(change_frame(v, BaseForm(4, 1)) == v);
}

TEST_CASE("tractor connection") {
  const int n = 4;
  auto flat = ScaleContext::flat(n);
  // nabla_a X = Z_a
  TractorSlots sx(n, 1);
  sx.rho = BaseForm::scalar(n, ScalarExpr(1L));
  FrameForm xv = FrameForm::from_slots(sx, 1);
  for (int a = 1; a <= n; ++a) {
    FrameForm z(n, 1, 1);
    z.add(bit(a), ScalarExpr(1L));
    CHECK(tractor_nabla(flat, xv, a) == z);
  }
  Rng rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    auto ctx = trial == 0 ? flat : ScaleContext::from_omega(n, random_omega(n, rng));
    int w = static_cast<int>(rng.range(-3, 2));
    TractorSlots s = random_slots(n, 1, rng);
    FrameForm v = FrameForm::from_slots(s, w);
    for (int a = 1; a <= n; ++a) {
      TractorSlots got = tractor_nabla(ctx, v, a).slots();
      BaseForm pa(n, 1);
      for (int b = 1; b <= n; ++b) pa.add(bit(b), ctx.schouten(a, b));
      CHECK(got.alpha == lc_nabla(ctx, s.alpha, w + 1, a) - BaseForm::scalar(n, s.mu.get(bit(a))));
      BaseForm mu = lc_nabla(ctx, s.mu, w + 1, a) + s.alpha.coeff() * pa;
      mu.add(bit(a), s.rho.coeff());
      CHECK(got.mu == mu);
      CHECK(got.rho == lc_nabla(ctx, s.rho, w - 1, a) - interior(pa, s.mu));
    }
  }
}

TEST_CASE("tractor connection is flat") {
  Rng rng(16);
  for (int n : {4, 6})
    for (int trial = 0; trial < (n == 4 ? 5 : 2); ++trial) {
      auto ctx = ScaleContext::from_omega(n, random_omega(n, rng));
      int k = static_cast<int>(rng.range(0, 3));
      FrameForm v = FrameForm::from_slots(random_slots(n, k, rng), static_cast<int>(rng.range(-3, 1)));
      int a = static_cast<int>(rng.range(1, n)), b = static_cast<int>(rng.range(1, n));
      CHECK(tractor_curvature_on(ctx, v, a, b).is_zero());
    }
}

TEST_CASE("covariance of the connection, splitting and Yamabe operators") {
  Rng rng(17);
  for (int n : {4, 6}) {
    auto flat = ScaleContext::flat(n);
    for (int trial = 0; trial < (n == 4 ? 10 : 3); ++trial) {
      auto ctx = ScaleContext::from_omega(n, random_omega(n, rng));
      BaseForm ups = ctx.upsilon_form();
      // connection commutes with the frame change
      int k = static_cast<int>(rng.range(0, 3));
      int w = static_cast<int>(rng.range(-3, 1));
      FrameForm v = FrameForm::from_slots(random_slots(n, k, rng), w);
      int a = static_cast<int>(rng.range(1, n));
      // the coupled connection moves like a density of the same weight
      CHECK(tractor_nabla(ctx, change_frame(v, ups), a) ==
            change_frame(tractor_nabla(flat, v, a), ups) + (Rational(w) * ctx.upsilon(a)) * change_frame(v, ups));

      for (int ks = 1; ks < n / 2; ++ks) {
        BaseForm mu = random_base_form(n, ks, rng);
        CHECK(splitting_S(ctx, mu) == change_frame(splitting_S(flat, mu), ups));
      }
      BaseForm f = random_base_form(n, 0, rng, 3);
      CHECK(yamabe(ctx, f, 1 - n / 2) == yamabe(flat, f, 1 - n / 2));
      FrameForm tv = FrameForm::from_slots(random_slots(n, 1, rng), 1 - n / 2);
      CHECK(tractor_box(ctx, change_frame(tv, ups)) == change_frame(tractor_box(flat, tv), ups));
    }
  }
  auto flat = ScaleContext::flat(4);
  BaseForm f = BaseForm::scalar(4, y(1) * y(1) * y(2));
  CHECK(yamabe(flat, f, -1) == -BaseForm::scalar(4, Rational(2) * y(2)));
  CHECK_THROWS_AS(yamabe(flat, f, 0), WrongWeight);
  CHECK_THROWS_AS(splitting_S(flat, BaseForm(4, 2)), DivisorZero);
}

TEST_CASE("tractor D") {
  Rng rng(18);
  auto flat = ScaleContext::flat(4);
  BaseForm f = random_base_form(4, 0, rng, 3);
  TractorDValue d0 = tractor_D(flat, FrameForm::from_slots([&] {
    TractorSlots s(4, 0);
    s.mu = f;
    return s;
  }(), 0));
  CHECK(d0.parts[0].is_zero());
  for (int trial = 0; trial < 6; ++trial) {
    auto ctx = ScaleContext::from_omega(4, random_omega(4, rng));
    int w = static_cast<int>(rng.range(-3, 2));
    int k = static_cast<int>(rng.range(0, 2));
    FrameForm v = FrameForm::from_slots(random_slots(4, k, rng), w);
    CHECK(tractor_D(ctx, change_frame(v, ctx.upsilon_form())) == change_frame(tractor_D(flat, v), ctx.upsilon_form()));
  }
}

TEST_CASE("tractor curvature quantities vanish") {
  auto sphere = ScaleContext::from_exp_omega(4, round_factor(4));
  for (auto& [ab, k] : tractor_curvature_K(sphere)) CHECK(k.is_zero());
  CHECK(omega_field(sphere).is_zero());
  CHECK_THROWS_AS(w_tractor(sphere), DimensionUnsupported);
  Rng rng(19);
  auto ctx6 = ScaleContext::from_omega(6, random_omega(6, rng));
  CHECK(w_tractor(ctx6).is_zero());
}

TEST_CASE("Maxwell, gauge and Paneitz operators in dimension 4") {
  Rng rng(20);
  auto flat = ScaleContext::flat(4);
  for (int trial = 0; trial < 10; ++trial) {
    auto ctx = ScaleContext::from_omega(4, random_omega(4, rng));
    BaseForm ups = ctx.upsilon_form();
    BaseForm u = random_base_form(4, 1, rng, 3);
    BaseForm dd = maxwell(flat, u);
    CHECK(maxwell(ctx, u) == dd);
    CHECK(eastwood_singer(ctx, u) == eastwood_singer(flat, u) - interior(ups, dd));
    BaseForm f = random_base_form(4, 0, rng, 4);
    CHECK(eastwood_singer(ctx, flat_d(f)) == eastwood_singer(flat, flat_d(f)));
    CHECK(paneitz(ctx, f) == paneitz(flat, f));
    CHECK(paneitz(ctx, f) == Rational(2) * eastwood_singer(ctx, d_hat(ctx, f, 0)));

    // Box S_1 mu = (0, delta d mu, G mu)
    TractorSlots got = translate_box_S(ctx, u).slots();
    CHECK(got.alpha.is_zero());
    CHECK(got.mu == maxwell(ctx, u));
    CHECK(got.rho == eastwood_singer(ctx, u));
  }
  BaseForm f = random_base_form(4, 0, rng, 4);
  CHECK(paneitz(flat, f) == flat_delta(flat_d(flat_delta(flat_d(f)))));
}

TEST_CASE("translation in dimension 6") {
  Rng rng(21);
  for (int trial = 0; trial < 3; ++trial) {
    auto ctx = trial == 0 ? ScaleContext::flat(6) : ScaleContext::from_omega(6, random_omega(6, rng));
    BaseForm mu = random_base_form(6, 2, rng);
    TractorSlots got = translate_box_S(ctx, mu).slots();
    CHECK(got.alpha.is_zero());
    CHECK(got.phi.is_zero());
    CHECK(got.mu == delta_hat(ctx, d_hat(ctx, mu, 0), 0));
    BaseForm dmu = delta_hat(ctx, mu, 0);
    BaseForm first = Rational(1, 2) * delta_hat(ctx, d_hat(ctx, dmu, -2), -2) +
                     delta_hat(ctx, j_times(ctx, mu), -2) - Rational(2) * delta_hat(ctx, p_sharp(ctx, mu), -2);
    CHECK(got.rho == first);
    if (trial > 0) CHECK_FALSE(p_sharp(ctx, dmu).is_zero());
  }
}

TEST_CASE("Hodge star") {
  BaseForm e1 = BaseForm::one_form(4, {ScalarExpr(1L), ScalarExpr(), ScalarExpr(), ScalarExpr()});
  BaseForm vol(4, 4);
  vol.set(bit(1) | bit(2) | bit(3) | bit(4), ScalarExpr(1L));
  CHECK(wedge(e1, hodge_star(e1)) == vol);
  Rng rng(22);
  BaseForm u = random_base_form(4, 2, rng);
  CHECK(hodge_star(hodge_star(u)) == u);
}
