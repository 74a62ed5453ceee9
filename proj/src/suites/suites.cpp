#include "suites/suites.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <thread>

#include "algebra/parser.hpp"
#include "ambient/checks.hpp"
#include "ambient/descent.hpp"
#include "factory/continuation.hpp"
#include "scalar/expr_json.hpp"
#include "suites/checks_common.hpp"
#include "tractor/random_base.hpp"
#include "tractor/tractor_ops.hpp"
#include "tractor/weighted.hpp"

namespace conformal {

namespace {

constexpr int kTableTrials = 20;
constexpr int kSectionTrials = 10;
constexpr int kScaleTrials = 10;

struct CheckSpec {
  std::string id;
  std::function<void(Verdict&, CheckEnv&)> fn;
};

using Registry = std::vector<CheckSpec>;

void add(Registry& r, std::string id, std::function<void(Verdict&, CheckEnv&)> fn) {
  r.push_back({std::move(id), std::move(fn)});
}

std::string kstr(const char* prefix, int v) { return prefix + std::to_string(v); }

RandomFormOptions small_forms() {
  RandomFormOptions o;
  o.max_components = 4;
  return o;
}

// ---- bracket tables -------------------------------------------------------

void tables(Registry& r, int n) {
  auto entries = anticommutator_table();
  auto comm = commutator_table();
  entries.insert(entries.end(), comm.begin(), comm.end());
  for (auto& e : entries)
    add(r, "tables." + e.id, [=](Verdict& v, CheckEnv& env) {
      auto res = check_bracket(op_named(e.a), op_named(e.b), e.kind, e.expected, n, kTableTrials, env.seed);
      v.expect(res.pass, res.witness);
    });
}

// ---- K_X, power commutators, rewriter hygiene ------------------------------

void algebra(Registry& r, int n) {
  add(r, "algebra.kx_scalar", [=](Verdict& v, CheckEnv& env) {
    AlgebraElement nf = normal_form(parse_word("K_X"));
    if (!v.expect(nf.terms().size() == 1 && nf.terms().begin()->first.empty(), "K_X does not normalize to a scalar"))
      return;
    const Coeff& c = nf.terms().begin()->second;
    for (int k = 0; k <= n + 2; ++k)
      for (int W : {-3, -1, 0, 2, 4}) {
        Rational symbolic = coeff_eval(c, n, W, k);
        v.expect(symbolic == k_x_scalar(n, k, W),
                 "rewriter scalar " + symbolic.get_str() + " at k=" + std::to_string(k) + " W=" + std::to_string(W));
        AmbientForm F = random_form(n, k, W, env.rng, small_forms());
        v.equal(K_X(F), F * symbolic, "K_X on a " + std::to_string(k) + "-form of weight " + std::to_string(W));
      }
  });
  for (int m = 1; m <= 4; ++m)
    add(r, kstr("algebra.power_commutator.m", m), [=](Verdict& v, CheckEnv& env) {
      AlgebraElement derived = derive_power_commutator(m);
      v.equal(derived, normal_form(expected_power_commutator(m)), "symbolic [Lap^m, Q]");
      for (int k : {0, 1, 2}) {
        int W = static_cast<int>(env.rng.range(-2, 4));
        AmbientForm U = random_form(n, k, W, env.rng, small_forms());
        AmbientForm concrete = laplacian_power(mul_Q(U), m) - mul_Q(laplacian_power(U, m));
        Rational c(-2 * m * (2 * (W - k) - 2 * m + n + 4));
        v.equal(concrete, laplacian_power(U, m - 1) * c, "concrete [Lap^m, Q] against the closed formula");
        v.equal(concrete, evaluate(derived, U), "concrete [Lap^m, Q] against the rewriter");
      }
    });
  add(r, "algebra.normalization_idempotent", [](Verdict& v, CheckEnv& env) {
    for (int t = 0; t < 1000 && v.pass(); ++t) {
      AlgebraElement e = AlgebraElement::word(random_word(env.rng, 6));
      AlgebraElement nf = normal_form(e);
      v.expect(is_normal(nf), "not normal: " + nf.to_string(true));
      v.equal(normal_form(nf), nf, "renormalizing " + e.to_string(true));
    }
  });
  add(r, "algebra.rule_order", [](Verdict& v, CheckEnv& env) {
    for (int t = 0; t < 1000 && v.pass(); ++t) {
      AlgebraElement e = AlgebraElement::word(random_word(env.rng, 6));
      if (env.rng.coin()) e += AlgebraElement::word(random_word(env.rng, 6), coeff_const(env.rng.nonzero(3)));
      Rng sub = env.rng.fork(static_cast<uint64_t>(t));
      v.equal(normal_form_random(e, sub), normal_form(e), "random rule order on " + e.to_string(true));
    }
  });
  add(r, "algebra.jacobi", [](Verdict& v, CheckEnv&) {
    for (int a = 0; a < kNumGens; ++a)
      for (int b = 0; b < kNumGens; ++b)
        for (int c = 0; c < kNumGens; ++c) {
          AlgebraElement defect = jacobi_defect(gen_from_index(a), gen_from_index(b), gen_from_index(c));
          v.expect(defect.is_zero(), std::string("Jacobi defect ") + gen_info(gen_from_index(a)).ascii + "," +
                                         gen_info(gen_from_index(b)).ascii + "," + gen_info(gen_from_index(c)).ascii +
                                         ": " + defect.to_string(true));
        }
  });
  add(r, "algebra.concrete_agreement", [=](Verdict& v, CheckEnv& env) {
    RandomFormOptions opt;
    opt.max_components = 3;
    for (int t = 0; t < 40; ++t) {
      AlgebraElement e = AlgebraElement::word(random_word(env.rng, 4));
      int k = static_cast<int>(env.rng.range(0, 3));
      int W = static_cast<int>(env.rng.range(-3, 3));
      AmbientForm F = random_form(n, k, W, env.rng, opt);
      v.equal(evaluate(e, F), evaluate(normal_form(e), F), "word " + e.to_string(true));
    }
  });
}

// ---- tangentiality and descent -------------------------------------------

void tangential(Registry& r, int n) {
  AmbientOperator lap = op_named("Lap");
  for (int m = 1; m <= 4; ++m)
    add(r, kstr("tangential.lap_power.m", m), [=](Verdict& v, CheckEnv& env) {
      AmbientOperator p = lap.power(m);
      const int w = m - n / 2;
      for (int k : {0, 1, 2}) {
        auto res = is_tangential(p, n, k, w, 2, env.seed + static_cast<uint64_t>(k));
        v.expect(res.pass, "not tangential at the critical weight: " + res.witness);
      }
      for (int off : {-3, -2, -1, 1, 2, 3})
        v.expect(!is_tangential(p, n, 1, w + off, 2, env.seed + 10 + static_cast<uint64_t>(off + 3)).pass,
                 "also tangential at weight offset " + std::to_string(off));
    });
  for (const char* name : {"eps_D", "iota_D"})
    add(r, std::string("tangential.") + name, [=](Verdict& v, CheckEnv& env) {
      AmbientOperator P = op_named(name);
      for (int i = 0; i < 5; ++i) {
        int w = static_cast<int>(env.rng.range(-6, 4));
        int k = static_cast<int>(env.rng.range(name[0] == 'i' ? 1 : 0, 2));
        auto res = is_tangential(P, n, k, w, 2, env.rng.next());
        v.expect(res.pass, "weight " + std::to_string(w) + ": " + res.witness);
      }
    });
  for (int m = 1; m <= 4; ++m)
    add(r, kstr("tangential.extension.lap_power.m", m), [=](Verdict& v, CheckEnv& env) {
      for (int k : {0, 1}) {
        auto res = check_extension_independence(lap.power(m), n, k, lie_weight(k, m - n / 2), 2, env.rng.next());
        v.expect(res.pass, res.witness);
      }
    });
  for (const char* name : {"eps_D", "iota_D"})
    add(r, std::string("tangential.extension.") + name, [=](Verdict& v, CheckEnv& env) {
      for (int i = 0; i < 3; ++i) {
        int w = static_cast<int>(env.rng.range(-5, 3));
        int k = name[0] == 'i' ? 2 : 1;
        auto res = check_extension_independence(op_named(name), n, k, lie_weight(k, w), 2, env.rng.next());
        v.expect(res.pass, "weight " + std::to_string(w) + ": " + res.witness);
      }
    });
  for (int k = 0; k <= n / 2; ++k)
    add(r, kstr("tangential.extension.K.k", k), [=](Verdict& v, CheckEnv& env) {
      auto res = build_K(n, n / 2 - k, k, 0).check_extension_independence(3, env.seed);
      v.expect(res.pass, res.witness);
    });
  for (int l = 0; l <= 2; ++l)
    add(r, kstr("tangential.extension.K_weighted.l", l), [=](Verdict& v, CheckEnv& env) {
      for (int k = 0; k <= 1; ++k) {
        auto res = build_K(n, l, k, l - n / 2 + k).check_extension_independence(2, env.rng.next());
        v.expect(res.pass, "k=" + std::to_string(k) + ": " + res.witness);
      }
    });
}

// ---- the domino identities -------------------------------------------------

void domino(Registry& r, int n) {
  for (int l = 0; l <= 2; ++l) {
    add(r, kstr("domino.eps_D.l", l), [=](Verdict& v, CheckEnv& env) {
      for (int t = 0; t < kSectionTrials; ++t) {
        int k = t % 3;
        AmbientForm V = random_form(n, k, lie_weight(k, l - n / 2 + 1), env.rng, small_forms());
        v.equal(laplacian_power(eps_D(V), l), eps_X(laplacian_power(V, l + 1)), "Lap^l eps(D) V");
      }
    });
    add(r, kstr("domino.iota_D.l", l), [=](Verdict& v, CheckEnv& env) {
      for (int t = 0; t < kSectionTrials; ++t) {
        int k = t % 3 + 1;
        AmbientForm U = random_form(n, k, lie_weight(k, l - n / 2), env.rng, small_forms());
        v.equal(iota_D(laplacian_power(U, l)), laplacian_power(iota_X(U), l + 1), "iota(D) Lap^l U");
      }
    });
    // the same identity between descended operators: both sides only see the
    // restriction of V to the cone
    add(r, kstr("domino.descended.l", l), [=](Verdict& v, CheckEnv& env) {
      AmbientOperator lhs = op_named("Lap").power(l).compose(op_named("eps_D"));
      AmbientOperator rhs = op_named("eps_X").compose(op_named("Lap").power(l + 1));
      for (int t = 0; t < kSectionTrials; ++t) {
        int k = t % 3;
        int W = lie_weight(k, l - n / 2 + 1);
        BaseForm mu = random_base_form(n, k, env.rng);
        AmbientForm base = extend_form(mu, W);
        AmbientForm perturbed = base + mul_Q(random_form(n, k, W - 2, env.rng, small_forms()));
        perturbed.set_weight(W);
        AmbientForm diff = lhs(perturbed) - rhs(base);
        v.expect(diff.vanishes_on_cone(), "residual off the cone: " + describe_residual(diff));
      }
    });
  }
}

// ---- key lemma -------------------------------------------------------------

void key_lemma(Registry& r, int n) {
  for (int k = 0; k <= n / 2; ++k) {
    const int l = n / 2 - k;
    add(r, kstr("key_lemma.eps.k", k), [=](Verdict& v, CheckEnv& env) {
      auto K = build_K(n, l, k, 0);
      auto K1 = build_K(n, l - 1, k + 1, 0);
      for (int t = 0; t < kSectionTrials; ++t) {
        GSection F = random_gsection(n, k, 0, env.rng);
        GDualSection lhs = eps_x(K.apply(F));
        GDualSection rhs = K1.apply(d_tilde(F));
        v.equal(lhs.u, Rational(2 * (l + 1)) * rhs.u, "top slot");
        v.equal(lhs.v, Rational(2 * (l + 1)) * rhs.v, "bottom slot");
      }
    });
    if (k >= 1)
      add(r, kstr("key_lemma.iota.k", k), [=](Verdict& v, CheckEnv& env) {
        auto K = build_K(n, l, k, 0);
        auto K1 = build_K(n, l + 1, k - 1, 0);
        for (int t = 0; t < kSectionTrials; ++t) {
          GSection F = random_gsection(n, k, 0, env.rng);
          GDualSection a = K1.apply(iota_x(F));
          GDualSection b = delta_tilde(K.apply(F));
          v.equal(a.u, Rational(2 * (l + 2)) * b.u, "top slot");
          v.equal(a.v, Rational(2 * (l + 2)) * b.v, "bottom slot");
        }
      });
  }
  add(r, "key_lemma.eps.weighted", [=](Verdict& v, CheckEnv& env) {
    for (int l = 1; l <= 2; ++l)
      for (int k = 0; k <= 2; ++k) {
        const int w = l - n / 2 + k;
        GSection F = random_gsection(n, k, w, env.rng);
        GDualSection lhs = eps_x(build_K(n, l, k, w).apply(F));
        GDualSection rhs = build_K(n, l - 1, k + 1, w).apply(d_tilde(F));
        v.equal(lhs.u, Rational(2 * (l + 1)) * rhs.u, "top slot");
        v.equal(lhs.v, Rational(2 * (l + 1)) * rhs.v, "bottom slot");
      }
  });
}

// ---- tractor laws ----------------------------------------------------------

void tractor_laws(Registry& r, int n) {
  add(r, "tractor.density_connection", [=](Verdict& v, CheckEnv& env) {
    auto flat = ScaleContext::flat(n);
    for (int t = 0; t < kScaleTrials; ++t) {
      auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
      int w = static_cast<int>(env.rng.range(-4, 3));
      BaseForm f = random_base_form(n, 0, env.rng);
      v.equal(gradient(ctx, f, w), gradient(flat, f, w) + Rational(w) * (f.coeff() * ctx.upsilon_form()),
              "weight " + std::to_string(w));
    }
  });
  add(r, "tractor.form_connection", [=](Verdict& v, CheckEnv& env) {
    auto flat = ScaleContext::flat(n);
    for (int t = 0; t < kScaleTrials; ++t) {
      auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
      BaseForm ups = ctx.upsilon_form();
      BaseForm u = random_base_form(n, 1, env.rng);
      for (int a = 1; a <= n; ++a) {
        BaseForm expect = lc_nabla(flat, u, 0, a) - ctx.upsilon(a) * u - u.get(bit(a)) * ups;
        expect.add(bit(a), interior(ups, u).coeff());
        v.equal(lc_nabla(ctx, u, 0, a), expect, "direction " + std::to_string(a));
      }
    }
  });
  add(r, "tractor.delta_law", [=](Verdict& v, CheckEnv& env) {
    for (int t = 0; t < kScaleTrials; ++t) {
      auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
      int k = static_cast<int>(env.rng.range(1, n));
      BaseForm u = random_base_form(n, k, env.rng);
      v.equal(delta_hat(ctx, u, 0), flat_delta(u) - Rational(n - 2 * k) * interior(ctx.upsilon_form(), u),
              "degree " + std::to_string(k));
      v.equal(d_hat(ctx, u, 0), flat_d(u), "d on degree " + std::to_string(k));
    }
  });
  add(r, "tractor.projector_slots", [=](Verdict& v, CheckEnv& env) {
    for (int t = 0; t < kScaleTrials; ++t) {
      int k = static_cast<int>(env.rng.range(0, n + 1));
      BaseForm ups = ScaleContext::from_omega(n, random_omega(n, env.rng)).upsilon_form();
      TractorSlots s = random_slots(n, k, env.rng);
      FrameForm f = FrameForm::from_slots(s, static_cast<int>(env.rng.range(-3, 2)));
      FrameForm moved = change_frame(f, ups);
      v.expect(moved.slots() == transform_slots(s, ups), "slot law, degree " + std::to_string(k));
      v.equal(change_frame(moved, -ups), f, "inverse frame change");
      v.expect(tractor_metric(moved, moved) == tractor_metric(f, f), "tractor metric not invariant");
    }
  });
  add(r, "tractor.matrix_law", [=](Verdict& v, CheckEnv& env) {
    for (int t = 0; t < kScaleTrials; ++t) {
      BaseForm ups = ScaleContext::from_omega(n, random_omega(n, env.rng)).upsilon_form();
      TractorSlots s = random_slots(n, 1, env.rng);
      TractorSlots m = change_frame(FrameForm::from_slots(s, 0), ups).slots();
      v.equal(m.alpha, s.alpha, "alpha");
      v.equal(m.mu, s.mu + s.alpha.coeff() * ups, "mu");
      ScalarExpr norm = interior(ups, ups).coeff();
      v.equal(m.rho, BaseForm::scalar(n, s.rho.coeff() - interior(ups, s.mu).coeff() -
                                             norm * s.alpha.coeff() * Rational(1, 2)),
              "rho");
    }
  });
  add(r, "tractor.connection_formula", [=](Verdict& v, CheckEnv& env) {
    for (int t = 0; t < kScaleTrials; ++t) {
      auto ctx = t == 0 ? ScaleContext::flat(n) : ScaleContext::from_omega(n, random_omega(n, env.rng));
      int w = static_cast<int>(env.rng.range(-3, 2));
      TractorSlots s = random_slots(n, 1, env.rng);
      FrameForm f = FrameForm::from_slots(s, w);
      int a = static_cast<int>(env.rng.range(1, n));
      TractorSlots got = tractor_nabla(ctx, f, a).slots();
      BaseForm pa(n, 1);
      for (int b = 1; b <= n; ++b) pa.add(bit(b), ctx.schouten(a, b));
      v.equal(got.alpha, lc_nabla(ctx, s.alpha, w + 1, a) - BaseForm::scalar(n, s.mu.get(bit(a))), "alpha");
      BaseForm mu = lc_nabla(ctx, s.mu, w + 1, a) + s.alpha.coeff() * pa;
      mu.add(bit(a), s.rho.coeff());
      v.equal(got.mu, mu, "mu");
      v.equal(got.rho, lc_nabla(ctx, s.rho, w - 1, a) - interior(pa, s.mu), "rho");
    }
  });
  add(r, "tractor.connection_flat", [=](Verdict& v, CheckEnv& env) {
    for (int t = 0; t < kScaleTrials; ++t) {
      auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
      int k = static_cast<int>(env.rng.range(0, 2));
      FrameForm f = FrameForm::from_slots(random_slots(n, k, env.rng), static_cast<int>(env.rng.range(-3, 1)));
      int a = static_cast<int>(env.rng.range(1, n)), b = static_cast<int>(env.rng.range(1, n));
      FrameForm curv = tractor_curvature_on(ctx, f, a, b);
      v.expect(curv.is_zero(), "curvature residual " + curv.to_string());
    }
  });
  add(r, "tractor.connection_covariance", [=](Verdict& v, CheckEnv& env) {
    auto flat = ScaleContext::flat(n);
    for (int t = 0; t < kScaleTrials; ++t) {
      auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
      BaseForm ups = ctx.upsilon_form();
      int k = static_cast<int>(env.rng.range(0, 2));
      int w = static_cast<int>(env.rng.range(-3, 1));
      FrameForm f = FrameForm::from_slots(random_slots(n, k, env.rng), w);
      int a = static_cast<int>(env.rng.range(1, n));
      v.equal(tractor_nabla(ctx, change_frame(f, ups), a),
              change_frame(tractor_nabla(flat, f, a), ups) + (Rational(w) * ctx.upsilon(a)) * change_frame(f, ups),
              "direction " + std::to_string(a));
    }
  });
  if (n > 2)
    add(r, "tractor.splitting_covariance", [=](Verdict& v, CheckEnv& env) {
      auto flat = ScaleContext::flat(n);
      for (int t = 0; t < kScaleTrials; ++t) {
        auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
        int k = static_cast<int>(env.rng.range(1, n / 2 - 1));
        BaseForm mu = random_base_form(n, k, env.rng);
        v.equal(splitting_S(ctx, mu), change_frame(splitting_S(flat, mu), ctx.upsilon_form()),
                "degree " + std::to_string(k));
      }
    });
  add(r, "tractor.yamabe_covariance", [=](Verdict& v, CheckEnv& env) {
    auto flat = ScaleContext::flat(n);
    for (int t = 0; t < kScaleTrials; ++t) {
      auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
      BaseForm f = random_base_form(n, 0, env.rng, 3);
      v.equal(yamabe(ctx, f, 1 - n / 2), yamabe(flat, f, 1 - n / 2), "Yamabe operator");
    }
  });
  add(r, "tractor.yamabe_coupled_covariance", [=](Verdict& v, CheckEnv& env) {
    auto flat = ScaleContext::flat(n);
    for (int t = 0; t < kScaleTrials; ++t) {
      auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
      BaseForm ups = ctx.upsilon_form();
      FrameForm f = FrameForm::from_slots(random_slots(n, 1, env.rng), 1 - n / 2);
      v.equal(tractor_box(ctx, change_frame(f, ups)), change_frame(tractor_box(flat, f), ups), "coupled Yamabe");
    }
  });
  add(r, "tractor.D_covariance", [=](Verdict& v, CheckEnv& env) {
    auto flat = ScaleContext::flat(n);
    for (int t = 0; t < kScaleTrials; ++t) {
      auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
      int w = static_cast<int>(env.rng.range(-3, 2));
      int k = static_cast<int>(env.rng.range(0, 1));
      FrameForm f = FrameForm::from_slots(random_slots(n, k, env.rng), w);
      TractorDValue a = tractor_D(ctx, change_frame(f, ctx.upsilon_form()));
      TractorDValue b = change_frame(tractor_D(flat, f), ctx.upsilon_form());
      for (size_t i = 0; i < a.parts.size(); ++i) v.equal(a.parts[i], b.parts[i], "part " + std::to_string(i));
    }
  });
  add(r, "tractor.curvature_vanishes", [=](Verdict& v, CheckEnv& env) {
    for (int t = 0; t < 3; ++t) {
      auto ctx = t == 0 ? ScaleContext::from_exp_omega(n, round_sphere_factor(n))
                        : ScaleContext::from_omega(n, random_omega(n, env.rng));
      v.expect(ctx.weyl_vanishes(), "Weyl tensor");
      v.expect(ctx.cotton_vanishes(), "Cotton tensor");
      v.expect(omega_field(ctx).is_zero(), "tractor curvature");
      if (n != 4) v.expect(w_tractor(ctx).is_zero(), "W-tractor");
    }
  });
  if (n == 4) {
    add(r, "tractor.translation_dim4", [=](Verdict& v, CheckEnv& env) {
      for (int t = 0; t < kScaleTrials; ++t) {
        auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
        BaseForm u = random_base_form(n, 1, env.rng, 3);
        TractorSlots got = translate_box_S(ctx, u).slots();
        v.expect(got.alpha.is_zero(), "top slot " + got.alpha.to_string());
        v.equal(got.mu, maxwell(ctx, u), "middle slot");
        v.equal(got.rho, eastwood_singer(ctx, u), "bottom slot");
        v.equal(maxwell(ctx, u), flat_delta(flat_d(u)), "Maxwell operator");
      }
    });
    add(r, "tractor.eastwood_singer_closed", [=](Verdict& v, CheckEnv& env) {
      auto flat = ScaleContext::flat(n);
      for (int t = 0; t < kScaleTrials; ++t) {
        auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
        BaseForm du = flat_d(random_base_form(n, 0, env.rng, 4));
        v.equal(eastwood_singer(ctx, du), eastwood_singer(flat, du), "closed 1-form");
      }
    });
    add(r, "tractor.eastwood_singer_law", [=](Verdict& v, CheckEnv& env) {
      auto flat = ScaleContext::flat(n);
      for (int t = 0; t < kScaleTrials; ++t) {
        auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
        BaseForm u = random_base_form(n, 1, env.rng, 3);
        v.equal(eastwood_singer(ctx, u),
                eastwood_singer(flat, u) - interior(ctx.upsilon_form(), flat_delta(flat_d(u))), "general 1-form");
      }
    });
    add(r, "tractor.paneitz_covariance", [=](Verdict& v, CheckEnv& env) {
      auto flat = ScaleContext::flat(n);
      for (int t = 0; t < kScaleTrials; ++t) {
        auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
        BaseForm f = random_base_form(n, 0, env.rng, 4);
        v.equal(paneitz(ctx, f), paneitz(flat, f), "Paneitz operator");
        v.equal(paneitz(ctx, f), Rational(2) * eastwood_singer(ctx, d_hat(ctx, f, 0)), "Paneitz as G d");
      }
    });
  }
  if (n == 6)
    add(r, "tractor.translation_dim6", [=](Verdict& v, CheckEnv& env) {
      for (int t = 0; t < 4; ++t) {
        auto ctx = t == 0 ? ScaleContext::flat(n) : ScaleContext::from_omega(n, random_omega(n, env.rng));
        BaseForm mu = random_base_form(n, 2, env.rng);
        TractorSlots got = translate_box_S(ctx, mu).slots();
        v.expect(got.alpha.is_zero() && got.phi.is_zero(), "vanishing slots");
        v.equal(got.mu, delta_hat(ctx, d_hat(ctx, mu, 0), 0), "middle slot");
        BaseForm dmu = delta_hat(ctx, mu, 0);
        BaseForm first = Rational(1, 2) * delta_hat(ctx, d_hat(ctx, dmu, -2), -2) +
                         delta_hat(ctx, j_times(ctx, mu), -2) - Rational(2) * delta_hat(ctx, p_sharp(ctx, mu), -2);
        v.equal(got.rho, first, "bottom slot");
      }
    });
}

// ---- operator factory ------------------------------------------------------

void factory(Registry& r, int n) {
  for (int k = 0; k <= n / 2 - 1; ++k) {
    const int l = n / 2 - k;
    add(r, kstr("factory.L.k", k) + ".flat_power", [=](Verdict& v, CheckEnv&) {
      auto c = build_L(n, k).constant_multiple_of(delta_d_power(n, k, l));
      if (!v.expect(c.has_value() && *c != 0, "not a nonzero multiple of (delta d)^l")) return;
      v.record("L_" + std::to_string(k) + " / (delta d)^" + std::to_string(l), c->get_str());
    });
    add(r, kstr("factory.L.k", k) + ".symbol", [=](Verdict& v, CheckEnv&) {
      Symbol s = principal_symbol(build_L(n, k));
      Symbol model = delta_d_symbol(n, k, l);
      v.expect(s.order == 2 * l && !s.imaginary, "order " + std::to_string(s.order));
      auto c = symbol_ratio(s, model);
      if (!v.expect(c.has_value() && *c != 0, "symbol is not a multiple of |xi|^{2l-2} iota(xi) eps(xi)")) return;
      v.record("symbol(L_" + std::to_string(k) + ") / |xi|^" + std::to_string(2 * l - 2) + " iota(xi)eps(xi)",
               c->get_str());
    });
    add(r, kstr("factory.L.k", k) + ".self_adjoint", [=](Verdict& v, CheckEnv&) {
      LinearDiffOp L = build_L(n, k);
      v.equal(L.formal_adjoint(), L, "formal adjoint");
    });
    add(r, kstr("factory.L.k", k) + ".factorization", [=](Verdict& v, CheckEnv& env) {
      for (int t = 0; t < 3; ++t) {
        auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
        BaseForm mu = random_base_form(n, k, env.rng, 3);
        BaseForm Lmu = apply_L(n, k, mu);
        v.equal(Lmu, Rational(-4 * l * (l + 1)) * flat_delta(apply_M(ctx, k + 1, flat_d(mu))), "delta M d");
        v.expect(apply_L(n, k, random_closed(n, k, env.rng)).is_zero(), "closed forms not in the kernel");
        GDualSection bb = apply_bbL(ctx, k, mu);
        v.equal(bb.u, Lmu, "top slot of the lifted operator");
        if (k >= 1) v.equal(bb.v, Rational(-2 * (l + 1)) * flat_delta(apply_M(ctx, k, mu)), "bottom slot");
      }
    });
  }
  if (n == 4) {
    add(r, "factory.L1.maxwell", [=](Verdict& v, CheckEnv&) {
      auto flat = ScaleContext::flat(n);
      auto mx = LinearDiffOp::probe(n, 1, 1, 2, [&](const BaseForm& u) { return maxwell(flat, u); });
      auto c = build_L(n, 1).constant_multiple_of(mx);
      if (v.expect(c.has_value() && *c != 0, "L_1 is not a multiple of the Maxwell operator"))
        v.record("L_1 / Maxwell", c->get_str());
    });
    add(r, "factory.L0.paneitz", [=](Verdict& v, CheckEnv&) {
      auto flat = ScaleContext::flat(n);
      auto pz = LinearDiffOp::probe(n, 0, 0, 4, [&](const BaseForm& f) { return paneitz(flat, f); });
      auto c = build_L(n, 0).constant_multiple_of(pz);
      if (v.expect(c.has_value() && *c != 0, "L_0 is not a multiple of the flat Paneitz operator"))
        v.record("L_0 / Paneitz", c->get_str());
      auto lap2 = delta_d_power(n, 0, 2);
      v.expect(pz == lap2, "flat Paneitz operator is not Lap^2");
    });
    add(r, "factory.G1.eastwood_singer", [=](Verdict& v, CheckEnv& env) {
      auto flat = ScaleContext::flat(n);
      auto es = LinearDiffOp::probe(n, 1, 0, 3, [&](const BaseForm& u) { return eastwood_singer(flat, u); });
      auto c = build_G(flat, 1).op.constant_multiple_of(es);
      if (!v.expect(c.has_value() && *c != 0, "G_1 is not a multiple of the Eastwood-Singer operator")) return;
      v.record("G_1 / Eastwood-Singer", c->get_str());
      for (int t = 0; t < 3; ++t) {
        auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
        BaseForm mu = random_base_form(n, 1, env.rng, 3);
        v.equal(apply_G(ctx, 1, mu), *c * eastwood_singer(ctx, mu), "in a random scale");
      }
    });
  }
  add(r, "factory.Q.top_constant", [=](Verdict& v, CheckEnv& env) {
    auto flat = ScaleContext::flat(n);
    LinearDiffOp top = build_Q(flat, n / 2);
    auto c = top.constant_multiple_of(LinearDiffOp::identity(n, n / 2));
    if (!v.expect(top.order() == 0 && c.has_value() && *c != 0, "Q_{n/2} is not a nonzero constant")) return;
    v.record("Q_" + std::to_string(n / 2), c->get_str());
    for (int t = 0; t < 2; ++t) {
      auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
      v.equal(build_Q(ctx, n / 2), top, "in a random scale");
    }
  });
  add(r, "factory.Q0.flat_zero", [=](Verdict& v, CheckEnv&) {
    BaseForm q = apply_Q(ScaleContext::flat(n), 0, BaseForm::scalar(n, ScalarExpr(1L)));
    v.expect(q.is_zero(), "Q_0 1 = " + q.to_string());
  });
  for (int k = 0; k <= n / 2 - 1; ++k)
    add(r, kstr("factory.Q.k", k) + ".transformation", [=](Verdict& v, CheckEnv& env) {
      auto flat = ScaleContext::flat(n);
      for (int t = 0; t < 2; ++t) {
        RatFunc omega = random_omega(n, env.rng);
        auto ctx = ScaleContext::from_omega(n, omega);
        BaseForm phi = random_closed(n, k, env.rng);
        BaseForm expect = apply_Q(flat, k, phi) + flat_delta(apply_Q(flat, k + 1, flat_d(ScalarExpr(omega) * phi)));
        v.equal(apply_Q(ctx, k, phi), expect, "closed " + std::to_string(k) + "-form");
      }
    });
  add(r, "factory.G0.trivial", [=](Verdict& v, CheckEnv&) {
    GaugeOperator g = build_G(ScaleContext::flat(n), 0);
    v.expect(g.trivial && g.op.is_zero(), "G_0 is not flagged trivial");
  });
  for (int k = 1; k <= n / 2; ++k)
    add(r, kstr("factory.G.k", k) + ".closed_invariance", [=](Verdict& v, CheckEnv& env) {
      auto flat = ScaleContext::flat(n);
      for (int t = 0; t < 2; ++t) {
        auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
        BaseForm phi = random_closed(n, k, env.rng);
        v.equal(apply_G(ctx, k, phi), apply_G(flat, k, phi), "closed " + std::to_string(k) + "-form");
      }
    });
  for (int k = 0; k <= n / 2 - 1; ++k)
    add(r, kstr("factory.collapse.k", k), [=](Verdict& v, CheckEnv& env) {
      for (int t = 0; t < 2; ++t) {
        auto ctx = ScaleContext::from_omega(n, random_omega(n, env.rng));
        auto rep = verify_closed_form_collapse(ctx, k, random_closed(n, k, env.rng));
        v.expect(rep.top_slot_zero, "top slot does not vanish");
        v.expect(rep.bottom_is_M, "bottom slot is not M_k");
        v.expect(rep.variation_matches, "variation is not a multiple of L_k(omega phi)");
        if (rep.variation_matches) v.record("collapse variation k=" + std::to_string(k), rep.variation_constant.get_str());
      }
    });
  for (int k = 1; k <= n / 2 - 1; ++k)
    add(r, kstr("factory.ellipticity.k", k), [=](Verdict& v, CheckEnv& env) {
      auto flat = ScaleContext::flat(n);
      Symbol top = principal_symbol(build_L(n, k));
      Symbol bottom = principal_symbol(build_G(flat, k).op);
      for (int t = 0; t < 4; ++t) {
        std::vector<Rational> xi;
        for (int a = 1; a <= n; ++a) xi.push_back(Rational(env.rng.nonzero(4)));
        size_t rank = stacked_symbol_rank({&top, &bottom}, n, k, xi);
        v.expect(rank == subsets(1, n, k).size(), "symbols not jointly injective, rank " + std::to_string(rank));
      }
    });
}

// ---- continuation ----------------------------------------------------------

void continuation(Registry& r, int n) {
  if (n > 6) return;
  add(r, "continuation.q0_direct", [=](Verdict& v, CheckEnv&) {
    auto direct = q0_round_sphere_direct(n);
    if (v.expect(direct.has_value(), "Q_0 1 on the round sphere is not constant")) {
      v.expect(*direct != 0, "Q_0 1 vanishes on the round sphere");
      v.record("Q_0 1 round sphere", direct->get_str());
    }
  });
  add(r, "continuation.q0_routes_agree", [=](Verdict& v, CheckEnv&) {
    auto direct = q0_round_sphere_direct(n);
    auto cont = q0_round_sphere_by_continuation(n);
    v.expect(cont.consistent, "continuation samples do not lie on one polynomial");
    v.expect(direct.has_value() && *direct == cont.q_value,
             "continuation gives " + cont.q_value.get_str() + ", direct route " +
                 (direct ? direct->get_str() : std::string("non-constant")));
    v.record("continuation degree in N", std::to_string(cont.degree));
  });
  add(r, "continuation.q0_golden", [=](Verdict& v, CheckEnv&) {
    std::ifstream in(golden_path("q0_round_sphere.json"));
    if (!v.expect(in.good(), "missing golden file " + golden_path("q0_round_sphere.json"))) return;
    auto golden = nlohmann::json::parse(in);
    auto key = std::to_string(n);
    if (!v.expect(golden.contains("values") && golden["values"].contains(key), "no golden value for n=" + key)) return;
    Rational expect(golden["values"][key].get<std::string>());
    auto direct = q0_round_sphere_direct(n);
    v.expect(direct.has_value() && *direct == expect, "golden value " + expect.get_str() + " not reproduced");
  });
  for (int k = 0; k <= n / 2 - 1; ++k)
    add(r, kstr("continuation.expansion.k", k), [=](Verdict& v, CheckEnv& env) {
      auto sphere = ScaleContext::from_exp_omega(n, round_sphere_factor(n));
      auto flat = ScaleContext::flat(n);
      for (const ScaleContext* ctx : {&flat, &sphere})
        for (int l : {1, 2}) {
          BaseForm mu = random_base_form(n, k, env.rng);
          ExpansionTerms t = weighted_expansion(*ctx, k, l, mu);
          v.equal(t.direct, t.first + t.second, "expansion");
          ExpansionTerms c = weighted_expansion(*ctx, k, l, random_closed(n, k, env.rng));
          v.expect(c.second.is_zero(), "second term on a closed form " + c.second.to_string());
        }
    });
}

// ---- checks in a user-supplied scale --------------------------------------

void user_scale(Registry& r, int n, const nlohmann::json& spec) {
  auto make = [=] { return ScaleContext::from_json(spec, n); };
  add(r, "scale.delta_law", [=](Verdict& v, CheckEnv& env) {
    auto ctx = make();
    for (int t = 0; t < kScaleTrials; ++t) {
      int k = static_cast<int>(env.rng.range(1, n));
      BaseForm u = random_base_form(n, k, env.rng);
      v.equal(delta_hat(ctx, u, 0), flat_delta(u) - Rational(n - 2 * k) * interior(ctx.upsilon_form(), u), "delta law");
    }
  });
  add(r, "scale.yamabe_covariance", [=](Verdict& v, CheckEnv& env) {
    auto ctx = make();
    auto flat = ScaleContext::flat(n);
    for (int t = 0; t < kScaleTrials; ++t) {
      BaseForm f = random_base_form(n, 0, env.rng, 3);
      v.equal(yamabe(ctx, f, 1 - n / 2), yamabe(flat, f, 1 - n / 2), "Yamabe operator");
    }
  });
  add(r, "scale.connection_flat", [=](Verdict& v, CheckEnv& env) {
    auto ctx = make();
    for (int t = 0; t < 3; ++t) {
      FrameForm f = FrameForm::from_slots(random_slots(n, 1, env.rng), 0);
      int a = static_cast<int>(env.rng.range(1, n)), b = static_cast<int>(env.rng.range(1, n));
      v.expect(tractor_curvature_on(ctx, f, a, b).is_zero(), "tractor curvature");
    }
  });
  add(r, "scale.Q_top_constant", [=](Verdict& v, CheckEnv&) {
    auto ctx = make();
    v.equal(build_Q(ctx, n / 2), build_Q(ScaleContext::flat(n), n / 2), "Q_{n/2}");
  });
  for (int k = 1; k <= n / 2; ++k)
    add(r, kstr("scale.G.k", k) + ".closed_invariance", [=](Verdict& v, CheckEnv& env) {
      auto ctx = make();
      BaseForm phi = random_closed(n, k, env.rng);
      v.equal(apply_G(ctx, k, phi), apply_G(ScaleContext::flat(n), k, phi), "G_k on a closed form");
    });
}

Registry registry(Suite s, int n, const std::optional<nlohmann::json>& scale) {
  Registry r;
  auto one = [&](Suite x) {
    switch (x) {
      case Suite::Tables: tables(r, n); break;
      case Suite::Tangential: tangential(r, n); break;
      case Suite::Domino: domino(r, n); break;
      case Suite::KeyLemma: key_lemma(r, n); break;
      case Suite::TractorLaws: tractor_laws(r, n); break;
      case Suite::Factory: factory(r, n); break;
      case Suite::Continuation: continuation(r, n); break;
      case Suite::Algebra: algebra(r, n); break;
      case Suite::All: break;
    }
  };
  if (s == Suite::All) {
    for (Suite x : {Suite::Tables, Suite::Algebra, Suite::Tangential, Suite::Domino, Suite::KeyLemma,
                    Suite::TractorLaws, Suite::Factory, Suite::Continuation})
      one(x);
  } else {
    one(s);
  }
  if (scale && (s == Suite::All || s == Suite::TractorLaws || s == Suite::Factory)) user_scale(r, n, *scale);
  return r;
}

const std::vector<std::pair<std::string, Suite>>& suite_table() {
  static const std::vector<std::pair<std::string, Suite>> t = {
      {"tables", Suite::Tables},         {"tangential", Suite::Tangential},
      {"domino", Suite::Domino},         {"key-lemma", Suite::KeyLemma},
      {"tractor-laws", Suite::TractorLaws}, {"factory", Suite::Factory},
      {"continuation", Suite::Continuation}, {"algebra", Suite::Algebra},
      {"all", Suite::All}};
  return t;
}

}  // namespace

std::optional<Suite> parse_suite(const std::string& name) {
  for (auto& [s, v] : suite_table())
    if (s == name) return v;
  return std::nullopt;
}

std::string suite_name(Suite s) {
  for (auto& [name, v] : suite_table())
    if (v == s) return name;
  return "?";
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (auto& [name, v] : suite_table()) out.push_back(name);
  return out;
}

std::vector<std::string> suite_check_ids(Suite s, int n, bool with_scale) {
  std::vector<std::string> ids;
  for (auto& c : registry(s, n, with_scale ? std::optional(nlohmann::json::object()) : std::nullopt))
    ids.push_back(c.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

Report run_suite(Suite s, const SuiteOptions& opt) {
  Registry specs = registry(s, opt.n, opt.scale);
  std::vector<CheckRecord> records(specs.size());
  std::vector<std::map<std::string, std::string>> constants(specs.size());

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < specs.size(); i = next++) {
      CheckEnv env(check_seed(opt.seed, specs[i].id));
      Verdict v;
      try {
        specs[i].fn(v, env);
      } catch (const std::exception& e) {
        v.fail(std::string("exception: ") + e.what());
      }
      records[i] = CheckRecord{specs[i].id, v.pass(), env.seed, v.witness()};
      constants[i] = v.constants();
    }
  };
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<size_t>(threads, specs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Report rep;
  rep.name = "verify:" + suite_name(s);
  rep.n = opt.n;
  rep.checks = std::move(records);
  rep.canonicalize();
  // constants keyed by name; merge in id order so the result is stable
  std::vector<size_t> order(specs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return specs[a].id < specs[b].id; });
  for (size_t i : order)
    for (auto& [key, val] : constants[i]) rep.constants[key] = val;
  if (opt.n > 6 && (s == Suite::All || s == Suite::Continuation))
    rep.notes.push_back("continuation checks need ambient dimensions beyond the supported range for n > 6");
  return rep;
}

}  // namespace conformal
