#include "ambient/descent.hpp"

namespace conformal {

ScalarExpr extend_density(const ScalarExpr& f, int n, int w) {
  if (f.has_factor()) throw ScalarError("cannot extend a t-graded expression");
  if (f.is_zero()) return f;
  return ScalarExpr(quadric_context(n).extend_from_base(f.rational(), w));
}

AmbientForm extend_form(const BaseForm& mu, int w) {
  const int n = mu.n();
  const int k = mu.degree();
  // pi^* dy^i as ambient 1-forms of weight 0
  std::vector<AmbientForm> pulled;
  pulled.reserve(n + 1);
  pulled.emplace_back(n, 1, 0);
  for (int i = 1; i <= n; ++i) {
    AmbientForm e(n, 1, 0);
    e.set(bit(i), ScalarExpr::var(0, -1));
    e.set(bit(0), -(ScalarExpr::var(i) * ScalarExpr::var(0, -2)));
    pulled.push_back(std::move(e));
  }
  AmbientForm out(n, k, w);
  for (auto& [m, f] : mu.components()) {
    AmbientForm term = AmbientForm::scalar(n, extend_density(f, n, w));
    for (int i : mask_indices(m)) term = wedge(term, pulled[i]);
    out += term;
  }
  out.set_weight(w);
  return out;
}

namespace {

ScalarExpr on_section(const ScalarExpr& f, const QuadricContext& q) {
  if (f.has_factor()) throw ScalarError("cannot restrict a t-graded expression");
  RatFunc r = f.rational();
  const int m = q.minus();
  RatFunc xm = RatFunc(q.radius2() * Rational(-1, 2));
  r = r.substitute(m, xm);
  return ScalarExpr(r.substitute(0, RatFunc(Rational(1))));
}

}  // namespace

BaseForm pullback_section(const AmbientForm& F, const std::optional<BaseForm>& upsilon) {
  const int n = F.n();
  const auto& q = F.ctx();
  // Jacobian rows J^A = ds^A + s^A upsilon
  std::vector<BaseForm> J(n + 2, BaseForm(n, 1));
  for (int i = 1; i <= n; ++i) J[i].set(bit(i), ScalarExpr(1L));
  for (int i = 1; i <= n; ++i) J[n + 1].set(bit(i), -ScalarExpr::var(i));
  if (upsilon) {
    J[0] += *upsilon;
    for (int i = 1; i <= n; ++i) J[i] += ScalarExpr::var(i) * *upsilon;
    J[n + 1] += ScalarExpr(RatFunc(q.radius2() * Rational(-1, 2))) * *upsilon;
  }
  BaseForm out(n, F.degree());
  for (auto& [m, f] : F.components()) {
    ScalarExpr c = on_section(f, q);
    if (c.is_zero()) continue;
    BaseForm term = BaseForm::scalar(n, c);
    for (int a : mask_indices(m)) {
      term = wedge(term, J[a]);
      if (term.is_zero()) break;
    }
    out += term;
  }
  return out;
}

BaseForm restrict_to_base(const AmbientForm& F) {
  if (!F.weight()) throw WeightMissing("restriction needs a declared weight");
  return pullback_section(F);
}

CheckResult check_extension_independence(const AmbientOperator& P, int n, int k, int w, int trials, uint64_t seed) {
  CheckResult res;
  Rng rng(seed);
  RandomFormOptions opt;
  opt.max_components = 4;
  for (int t = 0; t < trials; ++t) {
    Rng sub = rng.fork(t);
    AmbientForm F = random_form(n, k, w, sub, opt);
    AmbientForm junk = random_form(n, k, w - 2, sub, opt);
    AmbientForm G = F + mul_Q(junk);
    G.set_weight(w);
    BaseForm a = pullback_section(P(F));
    BaseForm b = pullback_section(P(G));
    ++res.trials;
    if (a != b) {
      res.pass = false;
      res.witness = "trial " + std::to_string(t) + ": restriction depends on the extension";
      return res;
    }
  }
  return res;
}

}  // namespace conformal
