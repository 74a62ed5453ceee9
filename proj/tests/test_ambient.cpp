#include "ambient/checks.hpp"
#include "ambient/descent.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace conformal;

namespace {

ScalarExpr x(int i) { return ScalarExpr::var(i); }

AmbientForm one_form(int n, int a, const ScalarExpr& c) {
  AmbientForm f(n, 1);
  f.set(bit(a), c);
  return f;
}

RandomFormOptions small() {
  RandomFormOptions o;
  o.max_components = 4;
  return o;
}

}  // namespace

TEST_CASE("exterior derivative examples") {
  const int n = 4;
  CHECK(exterior_d(AmbientForm::scalar(n, x(0))) == one_form(n, 0, ScalarExpr(1L)));
  CHECK(exterior_d(exterior_d(AmbientForm::scalar(n, x(1) * x(2)))).is_zero());
  AmbientForm f = AmbientForm::scalar(n, x(0) * x(n + 1));
  AmbientForm anti = iota_X(exterior_d(f));
  CHECK(anti == f * Rational(2));
  CHECK(lie_X(f) == f * Rational(2));
}

TEST_CASE("codifferential examples") {
  const int n = 4;
  CHECK(codifferential(one_form(n, 0, ScalarExpr(1L))).is_zero());
  CHECK(codifferential(one_form(n, 0, x(n + 1))) == AmbientForm::scalar(n, ScalarExpr(-1L)));
  CHECK_THROWS_AS(codifferential(AmbientForm::scalar(n, x(1))), DegreeUnderflow);

  Rng rng(3);
  for (int t = 0; t < 5; ++t) {
    AmbientForm u = random_mixed_form(n, 1, rng);
    CHECK(codifferential(eps_X(u)) + eps_X(codifferential(u)) == lie_X_star(u));
  }
}

TEST_CASE("form Laplacian examples") {
  for (int n : {4, 6}) {
    const auto& q = quadric_context(n);
    CHECK(form_laplacian(AmbientForm::scalar(n, ScalarExpr(7L))).is_zero());
    CHECK(form_laplacian(AmbientForm::scalar(n, ScalarExpr(q.Q_poly()))) ==
          AmbientForm::scalar(n, ScalarExpr(static_cast<long>(-2 * (n + 2)))));
  }
  Rng rng(4);
  RandomFormOptions cubic;
  cubic.max_poly_degree = 3;
  for (int t = 0; t < 5; ++t) {
    AmbientForm u = random_mixed_form(4, 1, rng, cubic);
    CHECK(form_laplacian(eps_X(u)) - eps_X(form_laplacian(u)) == exterior_d(u) * Rational(-2));
  }
}

TEST_CASE("both Laplacian formulas and both D formulas agree") {
  Rng rng(5);
  for (int n : {4, 6})
    for (int k = 0; k <= 3; ++k) {
      AmbientForm F = random_mixed_form(n, k, rng, small());
      CHECK(form_laplacian(F) == form_laplacian_direct(F));
      int w = static_cast<int>(rng.range(-3, 3));
      AmbientForm G = random_form(n, k, w, rng, small());
      CHECK(eps_D(G) == eps_D_alt(G));
    }
}

TEST_CASE("Euler field identities") {
  for (int n : {4, 6}) {
    const auto& q = quadric_context(n);
    // X_B = h_{BA} x^A, so d_A X_B = h_{AB}
    for (int a = 0; a < n + 2; ++a)
      for (int b = 0; b < n + 2; ++b)
        CHECK(ScalarExpr::var(q.partner(b)).derivative(a) == ScalarExpr(static_cast<long>(q.h(a, b))));
    Rng rng(6);
    for (int k = 0; k <= 3; ++k) {
      AmbientForm F = random_mixed_form(n, k, rng, small());
      AmbientForm lhs = iota_X(eps_X(F));
      if (k > 0) lhs += eps_X(iota_X(F));
      CHECK(lhs == mul_Q(F));
    }
  }
}

TEST_CASE("D operator identities") {
  Rng rng(7);
  for (int n : {4, 6}) {
    for (int t = 0; t < 3; ++t) {
      int w = static_cast<int>(rng.range(-3, 3));
      AmbientForm F = random_form(n, 1, w, rng, small());
      CHECK(eps_D(eps_D(F)).is_zero());
      AmbientForm G = random_form(n, 2, w, rng, small());
      CHECK(iota_D(iota_D(G)).is_zero());
      CHECK((iota_D(eps_D(G)) + eps_D(iota_D(G))).is_zero());
      AmbientForm comm = iota_D(mul_Q(G)) - mul_Q(iota_D(G));
      CHECK(comm == mul_Q(codifferential(G)) * Rational(-4));
    }
  }
}

TEST_CASE("K_X acts by n + 2W - 2k + 2 on forms of L_X-weight W") {
  Rng rng(8);
  for (int n : {4, 6})
    for (int k = 0; k <= 3; ++k)
      for (int W : {-3, -1, 0, 2, 4}) {
        AmbientForm F = random_form(n, k, W, rng, small());
        CHECK(F.verify_weight(W));
        CHECK(K_X(F) == F * Rational(k_x_scalar(n, k, W)));
      }
}

TEST_CASE("power commutator with Q") {
  Rng rng(9);
  for (int n : {4, 6})
    for (int m = 1; m <= 4; ++m)
      for (int k : {0, 1, 2}) {
        int W = static_cast<int>(rng.range(-2, 4));
        AmbientForm U = random_form(n, k, W, rng, small());
        int w = W - k;
        AmbientForm lhs = laplacian_power(mul_Q(U), m) - mul_Q(laplacian_power(U, m));
        Rational c(-2 * m * (2 * w - 2 * m + n + 4));
        CHECK(lhs == laplacian_power(U, m - 1) * c);
      }
}

TEST_CASE("tangentiality examples") {
  for (int n : {4, 6}) {
    AmbientOperator lap = op_named("Lap");
    for (int k : {0, 1, 2}) {
      CHECK(is_tangential(lap, n, k, 1 - n / 2, 3, 21).pass);
      CHECK_FALSE(is_tangential(lap, n, k, 0, 3, 22).pass);
    }
    for (int m = 1; m <= 4; ++m) {
      AmbientOperator p = lap.power(m);
      CHECK(is_tangential(p, n, 1, m - n / 2, 2, 23).pass);
      CHECK_FALSE(is_tangential(p, n, 1, m - n / 2 + 1, 2, 24).pass);
    }
    for (int w : {-4, -1, 0, 3}) {
      CHECK(is_tangential(op_named("iota_D"), n, 2, w, 2, 25).pass);
      CHECK(is_tangential(op_named("eps_D"), n, 1, w, 2, 26).pass);
    }
  }
}

TEST_CASE("domino identities") {
  Rng rng(10);
  for (int n : {4, 6})
    for (int l = 0; l <= 2; ++l) {
      for (int k : {0, 1, 2}) {
        // V of nabla-weight l - n/2 + 1
        AmbientForm V = random_form(n, k, lie_weight(k, l - n / 2 + 1), rng, small());
        CHECK(laplacian_power(eps_D(V), l) == eps_X(laplacian_power(V, l + 1)));
        AmbientForm U = random_form(n, k + 1, lie_weight(k + 1, l - n / 2), rng, small());
        CHECK(iota_D(laplacian_power(U, l)) == laplacian_power(iota_X(U), l + 1));
      }
    }
}

TEST_CASE("bracket tables") {
  for (int n : {4, 6}) {
    for (auto& e : anticommutator_table()) {
      auto r = check_bracket(op_named(e.a), op_named(e.b), e.kind, e.expected, n, 8, 100);
      INFO(e.id << " n=" << n << " " << r.witness);
      CHECK(r.pass);
    }
    for (auto& e : commutator_table()) {
      auto r = check_bracket(op_named(e.a), op_named(e.b), e.kind, e.expected, n, 8, 101);
      INFO(e.id << " n=" << n << " " << r.witness);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("even commutators on weighted forms") {
  Rng rng(15);
  for (auto& e : even_commutator_table()) {
    AmbientOperator a = op_named(e.a), b = op_named(e.b);
    for (int k = 0; k <= 2; ++k) {
      AmbientForm F = random_form(4, k, static_cast<int>(rng.range(-2, 3)), rng, small());
      INFO(e.id);
      CHECK(a(b(F)) - b(a(F)) == e.expected(F));
    }
  }
  CHECK(check_bracket(op_named("d"), op_named("d"), BracketKind::Comm, op_zero(), 4, 4, 5).pass);
}

TEST_CASE("operators are linear and declare their weight shifts") {
  Rng rng(16);
  for (const char* name : {"d", "delta", "eps_X", "iota_X", "L_X", "L_X_star", "Lap", "Q", "eps_D", "iota_D"}) {
    AmbientOperator P = op_named(name);
    int k = 2, W = static_cast<int>(rng.range(-2, 3));
    AmbientForm A = random_form(4, k, W, rng, small()), B = random_form(4, k, W, rng, small());
    Rational c(rng.nonzero(5), 2);
    CHECK(P(A + B * c) == P(A) + P(B) * c);
    AmbientForm out = P(A);
    if (!out.is_zero()) CHECK(out.verify_weight(W + P.weight_shift));
  }
}

TEST_CASE("extension and restriction") {
  const int n = 4;
  BaseForm one = BaseForm::scalar(n, ScalarExpr(1L));
  AmbientForm F = extend_form(one, 0);
  CHECK(F == AmbientForm::scalar(n, ScalarExpr(1L)));
  CHECK(restrict_to_base(F) == one);
  BaseForm y1 = BaseForm::scalar(n, x(1));
  CHECK(extend_form(y1, 1) == AmbientForm::scalar(n, x(1)));
  CHECK(restrict_to_base(extend_form(y1, 1)) == y1);
  CHECK_THROWS_AS(restrict_to_base(AmbientForm::scalar(n, x(1))), WeightMissing);

  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    int k = static_cast<int>(rng.range(0, 3)), w = static_cast<int>(rng.range(-3, 3));
    BaseForm mu(n, k);
    for (Mask m : subsets(1, n, k))
      if (rng.coin()) mu.set(m, ScalarExpr(testsupport::small_poly(n + 1, rng)).substitute(0, ScalarExpr(1L)));
    AmbientForm E = extend_form(mu, w);
    CHECK(E.verify_weight(w));
    CHECK(restrict_to_base(E) == mu);
    AmbientForm junk = random_form(n, k, w - 2, rng, small());
    AmbientForm P = E + mul_Q(junk);
    P.set_weight(w);
    CHECK(restrict_to_base(P) == mu);
  }
  CHECK(check_extension_independence(op_named("Lap"), n, 1, 1 - n / 2 + 1, 3, 30).pass);
}

TEST_CASE("form JSON round trip") {
  Rng rng(18);
  AmbientForm F = random_form(4, 2, 1, rng);
  CHECK(AmbientForm::from_json(F.to_json(), 4) == F);
  CHECK(AmbientForm::from_json(F.to_json(), 4).weight() == 1);
}
