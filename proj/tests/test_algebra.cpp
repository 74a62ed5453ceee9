#include "algebra/parser.hpp"
#include "ambient/random_forms.hpp"
#include "doctest.h"

using namespace conformal;

namespace {

AlgebraElement G(Gen g) { return AlgebraElement::gen(g); }
Coeff N() { return coeff_var(kVarN); }
Coeff W() { return coeff_var(kVarW); }
Coeff K() { return coeff_var(kVarK); }

}  // namespace

TEST_CASE("parser examples") {
  CHECK(parse_word("Δ∘Q") == AlgebraElement::word({Gen::Lap, Gen::Q}));
  CHECK(parse_word("ε(X)^2") == AlgebraElement::word({Gen::EpsX, Gen::EpsX}));
  CHECK(parse_word("Lap.Q") == parse_word("Δ ∘ Q"));
  AlgebraElement k = G(Gen::LX) - G(Gen::LXs) - AlgebraElement::scalar(coeff_const(4));
  CHECK(parse_word("ι(𝔻)") == -(G(Gen::Delta) * k) + G(Gen::IotaX) * G(Gen::Lap));
  CHECK(parse_word("iota_D") == parse_word("ι(𝔻)"));
  CHECK(parse_word("[d, Q]") == parse_word("d∘Q - Q∘d"));

  try {
    parse_word("[");
    FAIL("expected a parse error");
  } catch (const WordParseError& e) {
    CHECK(e.position == 1);
  }
  try {
    parse_word("Δ∘?");
    FAIL("expected a parse error");
  } catch (const WordParseError& e) {
    CHECK(e.position == 2);
  }
  CHECK_THROWS_AS(parse_word(""), WordParseError);
  CHECK_THROWS_AS(parse_word("d^"), WordParseError);
}

TEST_CASE("normal form examples") {
  // [Lap, Q] = -2 K_X and K_X = n + 2w - 2k + 2 on L_X-weight w, degree k
  AlgebraElement c1 = normal_form(parse_word("Δ∘Q - Q∘Δ"));
  CHECK(c1 == AlgebraElement::scalar((N() + W() * Rational(2) - K() * Rational(2) + coeff_const(2)) * Rational(-2)));
  CHECK(derive_power_commutator(2) ==
        G(Gen::Lap).scaled((N() + (W() - K()) * Rational(2)) * Rational(-4)));
  CHECK(derive_power_commutator(3) ==
        normal_form(G(Gen::Lap).power(2)).scaled(((W() - K()) * Rational(2) + N() - coeff_const(2)) * Rational(-6)));
  CHECK(normal_form(parse_word("ε(X)^2")).is_zero());
  for (int m = 1; m <= 6; ++m) CHECK(derive_power_commutator(m) == normal_form(expected_power_commutator(m)));
}

TEST_CASE("bracket examples") {
  CHECK(bracket(G(Gen::D), G(Gen::Delta), true) == G(Gen::Lap));
  CHECK(bracket(G(Gen::Q), G(Gen::D), true) == G(Gen::EpsX).scaled(coeff_const(-2)));
  CHECK(bracket(G(Gen::D), G(Gen::D), true).is_zero());
  CHECK(bracket(G(Gen::EpsX), G(Gen::IotaX), true) == G(Gen::Q));
}

TEST_CASE("trace records rule applications") {
  std::vector<TraceStep> trace;
  AlgebraElement r = normal_form(parse_word("δ∘d"), &trace);
  CHECK(r == normal_form(parse_word("-d∘δ + Δ")));
  REQUIRE(trace.size() == 1);
  CHECK(trace[0] == TraceStep{"delta.d", 0});
}

TEST_CASE("normalization is idempotent and independent of rule order") {
  Rng rng(2024);
  for (int t = 0; t < 1000; ++t) {
    AlgebraElement e = AlgebraElement::word(random_word(rng, 6));
    if (rng.coin()) e += AlgebraElement::word(random_word(rng, 6), coeff_const(rng.nonzero(3)));
    AlgebraElement nf = normal_form(e);
    CHECK(is_normal(nf));
    CHECK(normal_form(nf) == nf);
    Rng sub = rng.fork(t);
    CHECK(normal_form_random(e, sub) == nf);
  }
}

TEST_CASE("graded Jacobi identity for all generator triples") {
  int checked = 0;
  for (int a = 0; a < kNumGens; ++a)
    for (int b = 0; b < kNumGens; ++b)
      for (int c = 0; c < kNumGens; ++c) {
        CHECK(jacobi_defect(gen_from_index(a), gen_from_index(b), gen_from_index(c)).is_zero());
        ++checked;
      }
  CHECK(checked == 512);
}

TEST_CASE("normal forms agree with the concrete ambient operators") {
  Rng rng(77);
  RandomFormOptions opt;
  opt.max_components = 3;
  for (int t = 0; t < 60; ++t) {
    int n = t % 2 ? 6 : 4;
    Word w = random_word(rng, 4);
    AlgebraElement e = AlgebraElement::word(w);
    AlgebraElement nf = normal_form(e);
    int k = static_cast<int>(rng.range(0, 3));
    int wt = static_cast<int>(rng.range(-3, 3));
    AmbientForm F = random_form(n, k, wt, rng, opt);
    INFO(e.to_string() << " -> " << nf.to_string());
    CHECK(evaluate(e, F) == evaluate(nf, F));
  }
  for (int m = 1; m <= 4; ++m) {
    AmbientForm U = random_form(4, 1, 1, rng, opt);
    CHECK(evaluate(derive_power_commutator(m), U) ==
          evaluate(AlgebraElement::word({Gen::Lap}).power(m) * AlgebraElement::gen(Gen::Q) -
                       AlgebraElement::gen(Gen::Q) * AlgebraElement::word({Gen::Lap}).power(m),
                   U));
  }
}
