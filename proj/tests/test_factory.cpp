#include <fstream>

#include "ambient/operators.hpp"
#include "doctest.h"
#include "factory/continuation.hpp"
#include "json.hpp"
#include "scalar/expr_json.hpp"
#include "tractor/random_base.hpp"
#include "tractor/tractor_ops.hpp"
#include "tractor/weighted.hpp"

using namespace conformal;

namespace {

GSection random_gsection(int n, int k, int w, Rng& rng) {
  GSection F(n, k, w);
  F.alpha = random_base_form(n, k - 1, rng);
  F.mu = random_base_form(n, k, rng);
  return F;
}

BaseForm random_closed(int n, int k, Rng& rng) {
  if (k == 0) return BaseForm::scalar(n, ScalarExpr(Rational(rng.nonzero(5))));
  return flat_d(random_base_form(n, k - 1, rng, 3));
}

LinearDiffOp d_op(int n, int k) { return LinearDiffOp::probe(n, k, k + 1, 1, flat_d); }
LinearDiffOp delta_op(int n, int k) { return LinearDiffOp::probe(n, k, k - 1, 1, flat_delta); }

LinearDiffOp delta_d_power(int n, int k, int m) {
  LinearDiffOp dd = delta_op(n, k + 1).compose(d_op(n, k));
  LinearDiffOp p = dd;
  for (int i = 1; i < m; ++i) p = p.compose(dd);
  return p;
}

}  // namespace

TEST_CASE("q maps and the G bundles") {
  Rng rng(1);
  for (int n : {4, 6})
    for (int k = 0; k <= n; ++k) {
      BaseForm mu = random_base_form(n, k, rng);
      CHECK(q_project(q_dual_embed(mu)) == mu);
      CHECK(iota_x(q_inject(mu)).mu.is_zero());
      CHECK(iota_X(extend_form(mu, 0)).is_zero());
      // q^k eps(X) = 0
      if (k < n) CHECK(g_dual_from_ambient(eps_X(extend_form(mu, 0)), 0).u.is_zero());
      BaseForm ups = random_base_form(n, 1, rng);
      CHECK(change_scale(q_inject(mu), ups) == q_inject(mu));
      GSection F = random_gsection(n, k, 2, rng);
      CHECK(g_from_ambient(to_ambient(F), 2) == F);
      GDualSection G(n, k, -1);
      G.u = random_base_form(n, k, rng);
      G.v = random_base_form(n, k - 1, rng);
      CHECK(g_dual_from_ambient(to_ambient(G), -1) == G);
      CHECK(g_dual_from_ambient(eps_X(to_ambient(G)), -1) == eps_x(G));
    }
}

TEST_CASE("the operator d~") {
  Rng rng(2);
  const int n = 4;
  for (int k = 0; k <= 3; ++k) {
    BaseForm mu = random_base_form(n, k, rng);
    GSection dq = d_tilde(q_inject(mu));
    CHECK(dq.alpha.is_zero());
    CHECK(dq == q_inject(flat_d(mu)));
    for (int w : {-2, 0, 3}) {
      GSection F = random_gsection(n, k, w, rng);
      CHECK(d_tilde(d_tilde(F)).alpha.is_zero());
      CHECK(d_tilde(d_tilde(F)).mu.is_zero());
      // exterior derivative on the cone
      CHECK(g_from_ambient(exterior_d(to_ambient(F)), w) == d_tilde(F));
      for (int k2 = 0; k2 + k <= n - 1; ++k2) {
        GSection V = random_gsection(n, k2, 1, rng);
        GSection lhs = d_tilde(g_wedge(F, V));
        GSection rhs = g_wedge(d_tilde(F), V);
        GSection tail = g_wedge(F, d_tilde(V));
        rhs.alpha += Rational(k % 2 ? -1 : 1) * tail.alpha;
        rhs.mu += Rational(k % 2 ? -1 : 1) * tail.mu;
        CHECK(lhs == rhs);
      }
    }
  }
  for (int trial = 0; trial < 4; ++trial) {
    auto ctx = ScaleContext::from_omega(n, random_omega(n, rng));
    GSection Y = y_section(ctx);
    CHECK(d_tilde(Y).alpha.is_zero());
    CHECK(d_tilde(Y).mu.is_zero());
    for (int k = 0; k <= 2; ++k) {
      GSection F = random_gsection(n, k, trial - 1, rng);
      GSection a = d_tilde(g_wedge(Y, F)), b = g_wedge(Y, d_tilde(F));
      CHECK(a.alpha == -b.alpha);
      CHECK(a.mu == -b.mu);
      // the same operator read in the scale of ctx
      BaseForm ups = ctx.upsilon_form();
      CHECK(d_tilde(ctx, change_scale(F, ups)) == change_scale(d_tilde(F), ups));
    }
  }
}

TEST_CASE("K_l descends and satisfies the key identities") {
  for (int n : {4, 6}) {
    Rng rng(10 + n);
    for (int k = 0; k <= n / 2; ++k) {
      const int l = n / 2 - k;
      auto K = build_K(n, l, k, 0);
      CHECK(K.check_extension_independence(3, 77 + k).pass);
      for (int trial = 0; trial < 10; ++trial) {
        GSection F = random_gsection(n, k, 0, rng);
        GDualSection lhs = eps_x(K.apply(F));
        GDualSection rhs = build_K(n, l - 1, k + 1, 0).apply(d_tilde(F));
        CHECK(lhs.u == Rational(2 * (l + 1)) * rhs.u);
        CHECK(lhs.v == Rational(2 * (l + 1)) * rhs.v);
        if (k >= 1) {
          GDualSection a = build_K(n, l + 1, k - 1, 0).apply(iota_x(F));
          GDualSection b = delta_tilde(K.apply(F));
          CHECK(a.u == Rational(2 * (l + 2)) * b.u);
          CHECK(a.v == Rational(2 * (l + 2)) * b.v);
        }
      }
    }
  }
  // the generalized weights
  Rng rng(3);
  for (int l = 1; l <= 2; ++l)
    for (int k = 0; k <= 2; ++k) {
      const int n = 4, w = l - n / 2 + k;
      GSection F = random_gsection(n, k, w, rng);
      GDualSection lhs = eps_x(build_K(n, l, k, w).apply(F));
      GDualSection rhs = build_K(n, l - 1, k + 1, w).apply(d_tilde(F));
      CHECK(lhs.u == Rational(2 * (l + 1)) * rhs.u);
      CHECK(lhs.v == Rational(2 * (l + 1)) * rhs.v);
    }
  CHECK_THROWS_AS(build_K(4, 1, 1, 1), WeightMismatch);
}

TEST_CASE("long operators L_k") {
  const int n = 4;
  LinearDiffOp L1 = build_L(n, 1), L0 = build_L(n, 0);
  auto maxwell_const = L1.constant_multiple_of(delta_d_power(n, 1, 1));
  REQUIRE(maxwell_const.has_value());
  CHECK(*maxwell_const == 8);
  auto flat = ScaleContext::flat(n);
  LinearDiffOp paneitz_flat = LinearDiffOp::probe(n, 0, 0, 4, [&](const BaseForm& f) { return paneitz(flat, f); });
  auto paneitz_const = L0.constant_multiple_of(paneitz_flat);
  REQUIRE(paneitz_const.has_value());
  CHECK(*paneitz_const == 24);
  CHECK(L0.formal_adjoint() == L0);
  CHECK(L1.formal_adjoint() == L1);
  for (int k = 0; k <= 1; ++k) {
    int m = n / 2 - k;
    Symbol expect = symbol_scaled(principal_symbol(delta_d_power(n, k, m)), Rational(4 * m * (m + 1)));
    CHECK(principal_symbol(build_L(n, k)) == expect);
  }
  CHECK_THROWS_AS(build_L(n, 2), OutOfRange);
  CHECK_THROWS_AS(build_L(n, -1), OutOfRange);

  Rng rng(4);
  for (int trial = 0; trial < 3; ++trial) {
    auto ctx = ScaleContext::from_omega(n, random_omega(n, rng));
    for (int k = 0; k <= 1; ++k) {
      const int l = n / 2 - k;
      BaseForm mu = random_base_form(n, k, rng, 3);
      BaseForm Lmu = apply_L(n, k, mu);
      // left and right factors, with M_{k+1} taken in any scale
      CHECK(Lmu == Rational(-4 * l * (l + 1)) * flat_delta(apply_M(ctx, k + 1, flat_d(mu))));
      CHECK(apply_L(n, k, random_closed(n, k, rng)).is_zero());
      GDualSection bb = apply_bbL(ctx, k, mu);
      CHECK(bb.u == Lmu);
      if (k >= 1) CHECK(bb.v == Rational(-2 * (l + 1)) * flat_delta(apply_M(ctx, k, mu)));
    }
  }
}

TEST_CASE("long operators in dimension 6") {
  const int n = 6;
  for (int k = 0; k <= 2; ++k) {
    const int m = n / 2 - k;
    LinearDiffOp L = build_L(n, k);
    CHECK(L.constant_multiple_of(delta_d_power(n, k, m)) == Rational(4 * m * (m + 1)));
    CHECK(L.formal_adjoint() == L);
  }
}

TEST_CASE("Q operators") {
  for (int n : {4, 6}) {
    auto flat = ScaleContext::flat(n);
    LinearDiffOp top = build_Q(flat, n / 2);
    CHECK(top.order() == 0);
    CHECK(top.constant_multiple_of(LinearDiffOp::identity(n, n / 2)) == -q_normalization(n, n / 2));
    CHECK(apply_Q(flat, 0, BaseForm::scalar(n, ScalarExpr(1L))).is_zero());
  }
  CHECK(q_normalization(4, 2) == 48);
  CHECK(q_normalization(6, 1) == 48);

  const int n = 4;
  Rng rng(6);
  auto flat = ScaleContext::flat(n);
  for (int trial = 0; trial < 3; ++trial) {
    RatFunc omega = random_omega(n, rng);
    auto ctx = ScaleContext::from_omega(n, omega);
    // a random rescaling keeps Q_2 constant
    CHECK(build_Q(ctx, 2) == build_Q(flat, 2));
    for (int k = 0; k <= 1; ++k) {
      BaseForm phi = random_closed(n, k, rng);
      BaseForm expect = apply_Q(flat, k, phi) + flat_delta(apply_Q(flat, k + 1, flat_d(ScalarExpr(omega) * phi)));
      CHECK(apply_Q(ctx, k, phi) == expect);
      CHECK(apply_G(ctx, k, phi) == apply_G(flat, k, phi));
    }
    // G_1 is a multiple of the Eastwood-Singer operator in every scale
    BaseForm mu = random_base_form(n, 1, rng, 3);
    CHECK(apply_G(ctx, 1, mu) == Rational(-48) * eastwood_singer(ctx, mu));
  }
  CHECK(build_G(flat, 0).trivial);
  CHECK(build_G(flat, 0).op.is_zero());
}

TEST_CASE("round sphere Q-curvature") {
  std::ifstream in(golden_path("q0_round_sphere.json"));
  REQUIRE(in.good());
  auto golden = nlohmann::json::parse(in);
  for (int n : {4, 6}) {
    Rational expect(golden["values"][std::to_string(n)].get<std::string>());
    auto direct = q0_round_sphere_direct(n);
    REQUIRE(direct.has_value());
    CHECK(*direct == expect);
    auto cont = q0_round_sphere_by_continuation(n);
    CHECK(cont.consistent);
    CHECK(cont.q_value == expect);
  }
  // the samples follow -(N/2-1)(N/2)(N/2+1)(N/2+2) for l = 2
  for (int N : {2, 6, 8}) {
    Rational h(N / 2);
    CHECK(continuation_sample(N, 2) == -(h - 1) * h * (h + 1) * (h + 2));
  }
}

TEST_CASE("weighted operators and the expansion") {
  const int n = 4;
  for (int k = 0; k <= 1; ++k) CHECK(weighted_L(n, k, n / 2 - k) == build_L(n, k));
  // on densities the flat operators are powers of the Laplacian
  for (int l = 1; l <= 3; ++l) {
    LinearDiffOp L = weighted_L(n, 0, l);
    LinearDiffOp dd = delta_d_power(n, 0, 1), p = dd;
    for (int i = 1; i < l; ++i) p = p.compose(dd);
    auto c = L.constant_multiple_of(p);
    REQUIRE(c.has_value());
    CHECK(*c != 0);
  }
  Rng rng(7);
  auto sphere = ScaleContext::from_exp_omega(n, round_sphere_factor(n));
  auto flat = ScaleContext::flat(n);
  for (const ScaleContext* ctx : {&flat, &sphere})
    for (int k = 0; k <= 1; ++k)
      for (int l : {1, 3}) {
        BaseForm mu = random_base_form(n, k, rng);
        ExpansionTerms t = weighted_expansion(*ctx, k, l, mu);
        CHECK(t.direct == t.first + t.second);
        BaseForm closed = random_closed(n, k, rng);
        ExpansionTerms c = weighted_expansion(*ctx, k, l, closed);
        CHECK(c.second.is_zero());
        CHECK(c.direct == c.first);
      }
}

TEST_CASE("closed forms collapse") {
  const int n = 4;
  Rng rng(8);
  for (int trial = 0; trial < 3; ++trial) {
    auto ctx = ScaleContext::from_omega(n, random_omega(n, rng));
    for (int k = 0; k <= 1; ++k) {
      auto r = verify_closed_form_collapse(ctx, k, random_closed(n, k, rng));
      CHECK(r.pass());
      CHECK(r.variation_constant == Rational(-1, 2 * (n / 2 - k + 1)));
    }
  }
  auto flat = ScaleContext::from_omega(n, RatFunc());
  CHECK(verify_closed_form_collapse(flat, 1, random_closed(n, 1, rng)).pass());
  CHECK_THROWS_AS(verify_closed_form_collapse(flat, 1, random_base_form(n, 1, rng, 3)), NotClosed);
}

TEST_CASE("ellipticity of the gauged system") {
  const int n = 4, k = 1;
  auto flat = ScaleContext::flat(n);
  Symbol top = principal_symbol(build_L(n, k));
  Symbol bottom = principal_symbol(build_G(flat, k).op);
  // stack the two symbols at integer covectors and check injectivity
  Rng rng(9);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<ScalarExpr> xi;
    for (int a = 1; a <= n; ++a) xi.push_back(ScalarExpr(Rational(rng.nonzero(4))));
    auto eval = [&](ScalarExpr e) {
      for (int a = 1; a <= n; ++a) e = e.substitute(kXiOffset + a, xi[a - 1]);
      return e.constant_value();
    };
    auto in_masks = subsets(1, n, k);
    std::vector<std::vector<Rational>> rows;
    for (const Symbol* s : {&top, &bottom})
      for (Mask out : subsets(1, n, s == &top ? k : k - 1)) {
        std::vector<Rational> row;
        for (Mask m : in_masks) {
          auto it = s->entries.find({out, m});
          row.push_back(it == s->entries.end() ? Rational(0) : eval(it->second));
        }
        rows.push_back(row);
      }
    // rank by elimination
    size_t rank = 0;
    for (size_t c = 0; c < in_masks.size() && rank < rows.size(); ++c) {
      size_t p = rank;
      while (p < rows.size() && rows[p][c] == 0) ++p;
      if (p == rows.size()) continue;
      std::swap(rows[p], rows[rank]);
      for (size_t r = 0; r < rows.size(); ++r)
        if (r != rank && rows[r][c] != 0) {
          Rational f = rows[r][c] / rows[rank][c];
          for (size_t j = 0; j < in_masks.size(); ++j) rows[r][j] -= f * rows[rank][j];
        }
      ++rank;
    }
    CHECK(rank == in_masks.size());
  }
}

TEST_CASE("ambient operators against the tractor formulas") {
  Rng rng(12);
  for (int n : {4, 6}) {
    auto flat = ScaleContext::flat(n);
    const int w = 1 - n / 2;
    for (int trial = 0; trial < 3; ++trial) {
      BaseForm f = BaseForm::scalar(n, ScalarExpr(random_base_poly(n, rng, 4)));
      CHECK(pullback_section(form_laplacian(extend_form(f, w))) == yamabe(flat, f, w));
      // eps(D) on densities against the tractor D operator
      for (int wd : {-1, 2}) {
        AmbientForm D = eps_D(extend_form(f, wd));
        FrameForm V = FrameForm::from_slots([&] {
          TractorSlots s(n, 0);
          s.mu = f;
          return s;
        }(), wd);
        TractorDValue td = tractor_D(flat, V);
        CHECK(pullback_section(iota_X(D)) == td.parts[0].slots().mu);
        for (int a = 1; a <= n; ++a) CHECK(pullback_section(D).get(bit(a)) == td.parts[a].slots().mu.coeff());
        AmbientForm dxp(n, 1);
        dxp.set(bit(0), ScalarExpr(1L));
        CHECK(pullback_section(interior_one_form(dxp, D)) == td.parts[n + 1].slots().mu);
      }
    }
  }
}
