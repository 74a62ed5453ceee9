#include "doctest.h"
#include "tractor/diffop.hpp"
#include "tractor/random_base.hpp"
#include "tractor/weighted.hpp"

using namespace conformal;

namespace {

LinearDiffOp probe_d(int n, int k) { return LinearDiffOp::probe(n, k, k + 1, 1, flat_d); }
LinearDiffOp probe_delta(int n, int k) { return LinearDiffOp::probe(n, k, k - 1, 1, flat_delta); }

}  // namespace

TEST_CASE("probing recovers d and delta") {
  for (int n : {4, 6})
    for (int k = 0; k < n; ++k) {
      auto d = probe_d(n, k);
      CHECK(d.order() == 1);
      CHECK(d.has_constant_coefficients());
      Rng rng(100 + k);
      CHECK(agrees_on_random(d, flat_d, 4, rng));
      CHECK(d.formal_adjoint() == probe_delta(n, k + 1));
      CHECK(d.formal_adjoint().formal_adjoint() == d);
    }
}

TEST_CASE("symbol of the Hodge Laplacian") {
  for (int n : {4, 6})
    for (int k = 0; k <= n; ++k) {
      LinearDiffOp lap(n, k, k);
      if (k < n) lap += probe_delta(n, k + 1).compose(probe_d(n, k));
      if (k > 0) lap += probe_d(n, k - 1).compose(probe_delta(n, k));
      CHECK(principal_symbol(lap) == xi_power_identity(n, k, 1));
      CHECK(lap.formal_adjoint() == lap);
    }
}

TEST_CASE("symbol multiplicativity") {
  const int n = 4;
  auto d0 = probe_d(n, 0), d1 = probe_d(n, 1);
  auto sd = principal_symbol(d0);
  CHECK(sd.imaginary);
  CHECK(symbol_product(principal_symbol(d1), sd).entries.empty());
  CHECK(principal_symbol(d1.compose(d0)).order == -1);
  auto dd = probe_delta(n, 1).compose(d0);
  CHECK(symbol_product(principal_symbol(probe_delta(n, 1)), sd) == principal_symbol(dd));
}

TEST_CASE("variable coefficients: adjoint and composition") {
  Rng rng(5);
  const int n = 4;
  for (int trial = 0; trial < 4; ++trial) {
    ScalarExpr f(random_base_poly(n, rng, 2));
    auto mf = LinearDiffOp::multiplication(n, 1, f);
    auto op = probe_delta(n, 1).compose(mf);
    auto direct = LinearDiffOp::probe(n, 1, 0, 1, [&](const BaseForm& u) { return flat_delta(f * u); });
    CHECK(op == direct);
    CHECK(op.formal_adjoint().formal_adjoint() == op);
    // <delta(f u), g> = <u, f dg>
    CHECK(op.formal_adjoint() == mf.compose(probe_d(n, 0)));
  }
}

TEST_CASE("Paneitz operator symbol and self-adjointness") {
  Rng rng(8);
  for (int trial = 0; trial < 2; ++trial) {
    auto ctx = ScaleContext::from_omega(4, random_omega(4, rng, 1));
    auto p = LinearDiffOp::probe(4, 0, 0, 4, [&](const BaseForm& f) { return paneitz(ctx, f); });
    CHECK(p.order() == 4);
    CHECK(principal_symbol(p) == xi_power_identity(4, 0, 2));
    CHECK(p.formal_adjoint().formal_adjoint() == p);
  }
  auto flat = ScaleContext::flat(4);
  auto p = LinearDiffOp::probe(4, 0, 0, 4, [&](const BaseForm& f) { return paneitz(flat, f); });
  auto dd = probe_delta(4, 1).compose(probe_d(4, 0));
  CHECK(p == dd.compose(dd));
  CHECK(p.constant_multiple_of(dd.compose(dd)) == Rational(1));
  CHECK(p.formal_adjoint() == p);
}

TEST_CASE("constant multiples") {
  auto d = probe_d(4, 1);
  CHECK(d.scaled(Rational(-3, 2)).constant_multiple_of(d) == Rational(-3, 2));
  CHECK_FALSE(probe_d(4, 1).constant_multiple_of(d.scaled(ScalarExpr::var(1))).has_value());
  CHECK(LinearDiffOp(4, 1, 2).constant_multiple_of(d) == Rational(0));
}
