#include "factory/factory.hpp"

#include "ambient/operators.hpp"

namespace conformal {

namespace {

ScalarExpr sigma_power(const ScaleContext& ctx, int w) {
  if (w == 0 || ctx.is_flat()) return ScalarExpr(1L);
  const auto& f = ctx.factor();
  if (!f || !f->exp_omega) throw std::invalid_argument("sigma^w needs a rational e^omega");
  return ScalarExpr(f->exp_omega->pow(-w));
}

void check_range(int n, int k, int max_k) {
  if (n % 2 || n < 4) throw OutOfRange("the factory needs an even dimension n >= 4");
  if (k < 0 || k > max_k) throw OutOfRange("form degree out of range");
}

}  // namespace

AmbientOperator ambient_K(int l) {
  if (l < -1) throw OutOfRange("K_l needs l >= -1");
  AmbientOperator op;
  op.name = "K_" + std::to_string(l);
  op.degree_shift = 0;
  op.weight_shift = -2 * l;
  op.apply = [l](const AmbientForm& F) { return iota_X(laplacian_power(eps_X(F), l + 1)); };
  return op;
}

GDualSection DescendedOperator::apply(const GSection& F) const {
  if (F.degree() != source_degree || F.weight != source_weight) throw WeightMismatch(name + ": input bundle mismatch");
  return g_dual_from_ambient(ambient(to_ambient(F)), target_weight);
}

CheckResult DescendedOperator::check_extension_independence(int trials, uint64_t seed) const {
  return ::conformal::check_extension_independence(ambient, n, source_degree, source_weight, trials, seed);
}

LinearDiffOp DescendedOperator::restricted() const {
  LinearDiffOp op = LinearDiffOp::probe(n, source_degree, source_degree, 2 * std::max(l, 0),
                                        [this](const BaseForm& mu) { return apply(q_inject(mu, source_weight)).u; });
  op.in_weight = source_weight;
  op.out_weight = target_weight;
  return op;
}

DescendedOperator build_K(int n, int l, int k, int w) {
  if (2 * w != 2 * l - n + 2 * k) throw WeightMismatch("K_l acts on G^k[w] with w = l - n/2 + k");
  if (k < 0 || k > n + 1) throw OutOfRange("form degree out of range");
  DescendedOperator K;
  K.name = "K_" + std::to_string(l);
  K.provenance = "iota(X) Lap^" + std::to_string(l + 1) + " eps(X) on the flat ambient space";
  K.n = n;
  K.l = l;
  K.source_degree = K.target_degree = k;
  K.source_weight = w;
  K.target_weight = -w;
  K.ambient = ambient_K(l);
  return K;
}

int critical_l(int n, int k) {
  check_range(n, k, n / 2);
  return n / 2 - k;
}

BaseForm apply_L(int n, int k, const BaseForm& mu) {
  check_range(n, k, n / 2 - 1);
  return build_K(n, n / 2 - k, k, 0).apply(q_inject(mu)).u;
}

LinearDiffOp build_L(int n, int k) {
  check_range(n, k, n / 2 - 1);
  return build_K(n, n / 2 - k, k, 0).restricted();
}

GDualSection apply_bbL(const ScaleContext& ctx, int k, const BaseForm& mu) {
  const int n = ctx.n();
  check_range(n, k, n / 2 - 1);
  GDualSection G = build_K(n, n / 2 - k, k, 0).apply(q_inject(mu));
  GDualSection out(n, k, 0);
  out.u = G.u;
  out.v = iota_y(ctx, G).u;
  return out;
}

BbL build_bbL(const ScaleContext& ctx, int k) {
  const int n = ctx.n();
  check_range(n, k, n / 2 - 1);
  const int order = n - 2 * k + 1;
  BbL out{LinearDiffOp::probe(n, k, k, order, [&](const BaseForm& mu) { return apply_bbL(ctx, k, mu).u; }),
          LinearDiffOp::probe(n, k, k - 1, order, [&](const BaseForm& mu) { return apply_bbL(ctx, k, mu).v; })};
  return out;
}

BaseForm apply_M(const ScaleContext& ctx, int k, const BaseForm& phi) {
  const int n = ctx.n(), l = critical_l(n, k);
  GSection F = g_wedge(y_section(ctx), q_inject(phi));
  GDualSection G = build_K(n, l - 1, k + 1, 0).apply(F);
  return iota_y(ctx, G).u;
}

LinearDiffOp build_M(const ScaleContext& ctx, int k) {
  const int n = ctx.n(), l = critical_l(n, k);
  return LinearDiffOp::probe(n, k, k, 2 * l, [&](const BaseForm& phi) { return apply_M(ctx, k, phi); });
}

Rational q_normalization(int n, int k) {
  Rational c(1);
  for (int j = 0; j <= k; ++j) c *= n + 2 - 2 * j;
  return c;
}

BaseForm apply_Q(const ScaleContext& ctx, int k, const BaseForm& phi) {
  return q_normalization(ctx.n(), k) * apply_M(ctx, k, phi);
}

LinearDiffOp build_Q(const ScaleContext& ctx, int k) { return build_M(ctx, k).scaled(q_normalization(ctx.n(), k)); }

GaugeOperator build_G(const ScaleContext& ctx, int k) {
  const int n = ctx.n();
  check_range(n, k, n / 2);
  if (k == 0) return {LinearDiffOp(n, 0, -1), true};
  LinearDiffOp delta = LinearDiffOp::probe(n, k, k - 1, 1, flat_delta);
  return {delta.compose(build_Q(ctx, k)), false};
}

BaseForm apply_G(const ScaleContext& ctx, int k, const BaseForm& phi) {
  if (k == 0) return BaseForm(ctx.n(), -1);
  return flat_delta(apply_Q(ctx, k, phi));
}

BaseForm apply_weighted_L(int n, int k, int l, const BaseForm& mu) {
  if (l < 0) throw OutOfRange("L^k_l needs l >= 0");
  check_range(n, k, n);
  const int w = l - n / 2 + k;
  return build_K(n, l, k, w).apply(q_inject(mu, w)).u;
}

LinearDiffOp weighted_L(int n, int k, int l) {
  if (l < 0) throw OutOfRange("L^k_l needs l >= 0");
  check_range(n, k, n);
  return build_K(n, l, k, l - n / 2 + k).restricted();
}

ExpansionTerms weighted_expansion(const ScaleContext& ctx, int k, int l, const BaseForm& mu) {
  const int n = ctx.n(), w = l - n / 2 + k;
  if (l < 0) throw OutOfRange("L^k_l needs l >= 0");
  ScalarExpr s = sigma_power(ctx, w);
  ExpansionTerms t{apply_weighted_L(n, k, l, s * mu), BaseForm(n, k), BaseForm(n, k)};
  DescendedOperator K = build_K(n, l - 1, k + 1, w);
  GSection first_in = g_wedge(y_section(ctx), q_inject(s * mu, w));
  t.first = Rational(2 * w * (l + 1)) * iota_y(ctx, K.apply(first_in)).u;
  t.second = Rational(2 * (l + 1)) * iota_y(ctx, K.apply(q_inject(s * flat_d(mu), w))).u;
  return t;
}

CollapseReport verify_closed_form_collapse(const ScaleContext& ctx, int k, const BaseForm& phi) {
  const int n = ctx.n(), l = critical_l(n, k);
  if (k == n / 2) throw OutOfRange("the collapse check needs k < n/2");
  if (!flat_d(phi).is_zero()) throw NotClosed("the collapse check needs a closed form");
  ScalarExpr omega;
  if (!ctx.is_flat()) {
    if (!ctx.factor()->omega) throw std::invalid_argument("the variation needs a rational omega");
    omega = ScalarExpr(*ctx.factor()->omega);
  }
  auto flat = ScaleContext::flat(n);
  DescendedOperator K = build_K(n, l - 1, k + 1, 0);
  GDualSection g0 = K.apply(g_wedge(y_section(flat), q_inject(phi)));
  GDualSection g1 = K.apply(g_wedge(y_section(ctx), q_inject(phi)));

  CollapseReport r;
  r.top_slot_zero = g0.u.is_zero() && g1.u.is_zero();
  r.bottom_is_M = g0.v == apply_M(flat, k, phi) && g1.v == apply_M(ctx, k, phi);
  BaseForm variation = g1.v - g0.v;
  BaseForm lw = apply_L(n, k, omega * phi);
  Rational expected(-1, 2 * (l + 1));
  if (lw.is_zero()) {
    r.variation_constant = expected;
    r.variation_matches = variation.is_zero();
    return r;
  }
  auto& [m, c] = *lw.components().begin();
  ScalarExpr ratio = variation.get(m) / c;
  if (ratio.is_constant()) {
    r.variation_constant = ratio.constant_value();
    r.variation_matches = r.variation_constant == expected && variation == r.variation_constant * lw;
  }
  return r;
}

}  // namespace conformal
