#include "ambient/operators.hpp"

#include <map>
#include <stdexcept>

namespace conformal {

namespace {

std::optional<int> shifted(std::optional<int> w, int s) {
  if (!w) return std::nullopt;
  return *w + s;
}

}  // namespace

AmbientForm exterior_d(const AmbientForm& F) {
  const int N = F.dim();
  AmbientForm out(F.n(), F.degree() + 1, F.weight());
  for (auto& [m, f] : F.components())
    for (int a = 0; a < N; ++a) {
      if (has_bit(m, a)) continue;
      ScalarExpr df = f.derivative(a);
      if (df.is_zero()) continue;
      if (insertion_sign(m, a) < 0) df = -df;
      out.add(m | bit(a), df);
    }
  return out;
}

AmbientForm codifferential(const AmbientForm& F) {
  if (F.degree() <= 0) throw DegreeUnderflow("codifferential of a 0-form");
  const auto& q = F.ctx();
  AmbientForm out(F.n(), F.degree() - 1, shifted(F.weight(), -2));
  for (auto& [m, f] : F.components())
    for (int b : mask_indices(m)) {
      ScalarExpr df = f.derivative(q.partner(b));
      if (df.is_zero()) continue;
      if (insertion_sign(m, b) > 0) df = -df;
      out.add(m & ~bit(b), df);
    }
  return out;
}

AmbientForm eps_X(const AmbientForm& F) {
  const int N = F.dim();
  const auto& q = F.ctx();
  AmbientForm out(F.n(), F.degree() + 1, shifted(F.weight(), 2));
  for (auto& [m, f] : F.components())
    for (int a = 0; a < N; ++a) {
      if (has_bit(m, a)) continue;
      ScalarExpr g = ScalarExpr::var(q.partner(a)) * f;
      if (insertion_sign(m, a) < 0) g = -g;
      out.add(m | bit(a), g);
    }
  return out;
}

AmbientForm iota_X(const AmbientForm& F) {
  AmbientForm out(F.n(), F.degree() - 1, F.weight());
  for (auto& [m, f] : F.components())
    for (int b : mask_indices(m)) {
      ScalarExpr g = ScalarExpr::var(b) * f;
      if (insertion_sign(m, b) < 0) g = -g;
      out.add(m & ~bit(b), g);
    }
  return out;
}

AmbientForm lie_X(const AmbientForm& F) {
  AmbientForm out(F.n(), F.degree());
  if (F.degree() > 0) out += exterior_d(iota_X(F));
  out += iota_X(exterior_d(F));
  out.set_weight(F.weight());
  return out;
}

AmbientForm lie_X_star(const AmbientForm& F) {
  AmbientForm out = codifferential(eps_X(F));
  if (F.degree() > 0) out += eps_X(codifferential(F));
  out.set_weight(F.weight());
  return out;
}

AmbientForm K_X(const AmbientForm& F) {
  AmbientForm out = lie_X(F) - lie_X_star(F);
  out.set_weight(F.weight());
  return out;
}

AmbientForm form_laplacian(const AmbientForm& F) {
  AmbientForm out = codifferential(exterior_d(F));
  if (F.degree() > 0) out += exterior_d(codifferential(F));
  out.set_weight(shifted(F.weight(), -2));
  return out;
}

AmbientForm form_laplacian_direct(const AmbientForm& F) {
  const int n = F.n();
  AmbientForm out(n, F.degree(), shifted(F.weight(), -2));
  for (auto& [m, f] : F.components()) {
    ScalarExpr acc = f.derivative(0).derivative(n + 1) * Rational(2);
    for (int i = 1; i <= n; ++i) acc += f.derivative(i).derivative(i);
    out.add(m, -acc);
  }
  return out;
}

AmbientForm mul_Q(const AmbientForm& F) {
  ScalarExpr q(F.ctx().Q_poly());
  AmbientForm out = q * F;
  out.set_weight(shifted(F.weight(), 2));
  return out;
}

AmbientForm eps_D(const AmbientForm& F) {
  AmbientForm inner = K_X(F) - F * Rational(4);
  AmbientForm out = exterior_d(inner) + eps_X(form_laplacian(F));
  out.set_weight(F.weight());
  return out;
}

AmbientForm eps_D_alt(const AmbientForm& F) {
  AmbientForm out = K_X(exterior_d(F)) + form_laplacian(eps_X(F));
  out.set_weight(F.weight());
  return out;
}

AmbientForm iota_D(const AmbientForm& F) {
  AmbientForm out(F.n(), F.degree() - 1);
  if (F.degree() > 0) out = -codifferential(K_X(F) - F * Rational(4));
  out += iota_X(form_laplacian(F));
  out.set_weight(shifted(F.weight(), -2));
  return out;
}

AmbientForm laplacian_power(const AmbientForm& F, int m) {
  AmbientForm out = F;
  for (int i = 0; i < m; ++i) out = form_laplacian_direct(out);
  return out;
}

AmbientForm wedge(const AmbientForm& a, const AmbientForm& b) {
  std::optional<int> w;
  if (a.weight() && b.weight()) w = *a.weight() + *b.weight();
  AmbientForm out(a.n(), a.degree() + b.degree(), w);
  for (auto& [ma, fa] : a.components())
    for (auto& [mb, fb] : b.components()) {
      int s = wedge_sign(ma, mb);
      if (!s) continue;
      ScalarExpr g = fa * fb;
      if (s < 0) g = -g;
      out.add(ma | mb, g);
    }
  return out;
}

AmbientForm wedge_one_form(const AmbientForm& u, const AmbientForm& F) {
  if (u.degree() != 1) throw std::invalid_argument("expected a 1-form");
  return wedge(u, F);
}

AmbientForm interior_one_form(const AmbientForm& u, const AmbientForm& F) {
  if (u.degree() != 1) throw std::invalid_argument("expected a 1-form");
  const auto& q = F.ctx();
  std::optional<int> w;
  if (u.weight() && F.weight()) w = *u.weight() + *F.weight();
  AmbientForm out(F.n(), F.degree() - 1, w);
  for (auto& [mu, fu] : u.components()) {
    int a = mask_indices(mu)[0];
    int b = q.partner(a);  // u^b = h^{ba} u_a
    for (auto& [m, f] : F.components()) {
      if (!has_bit(m, b)) continue;
      ScalarExpr g = fu * f;
      if (insertion_sign(m, b) < 0) g = -g;
      out.add(m & ~bit(b), g);
    }
  }
  return out;
}

AmbientForm AmbientOperator::operator()(const AmbientForm& F) const { return apply(F); }

AmbientOperator AmbientOperator::compose(const AmbientOperator& o) const {
  auto f = apply, g = o.apply;
  return {name + "." + o.name, degree_shift + o.degree_shift, weight_shift + o.weight_shift,
          [f, g](const AmbientForm& F) { return f(g(F)); }};
}

AmbientOperator AmbientOperator::operator+(const AmbientOperator& o) const {
  auto f = apply, g = o.apply;
  int ds = degree_shift;
  return {"(" + name + "+" + o.name + ")", degree_shift, weight_shift, [f, g, ds](const AmbientForm& F) {
            AmbientForm a = f(F), b = g(F);
            AmbientForm out(F.n(), F.degree() + ds);
            out += a;
            out += b;
            return out;
          }};
}

AmbientOperator AmbientOperator::operator-(const AmbientOperator& o) const { return *this + o.scaled(-1); }

AmbientOperator AmbientOperator::scaled(const Rational& c) const {
  auto f = apply;
  return {c.get_str() + "*" + name, degree_shift, weight_shift,
          [f, c](const AmbientForm& F) { return f(F) * c; }};
}

AmbientOperator AmbientOperator::power(int m) const {
  AmbientOperator out = op_identity();
  for (int i = 0; i < m; ++i) out = compose(out);
  if (m > 0) out.name = name + "^" + std::to_string(m);
  return out;
}

AmbientOperator op_identity() {
  return {"id", 0, 0, [](const AmbientForm& F) { return F; }};
}

AmbientOperator op_zero(int degree_shift, int weight_shift) {
  return {"0", degree_shift, weight_shift,
          [degree_shift](const AmbientForm& F) { return AmbientForm(F.n(), F.degree() + degree_shift); }};
}

namespace {

AmbientForm safe_delta(const AmbientForm& F) {
  if (F.degree() <= 0) return AmbientForm(F.n(), F.degree() - 1);
  return codifferential(F);
}

AmbientForm safe_iota(const AmbientForm& F) {
  if (F.degree() <= 0) return AmbientForm(F.n(), F.degree() - 1);
  return iota_X(F);
}

}  // namespace

AmbientOperator op_named(const std::string& name) {
  static const std::map<std::string, AmbientOperator> table = {
      {"d", {"d", 1, 0, exterior_d}},
      {"delta", {"delta", -1, -2, safe_delta}},
      {"eps_X", {"eps_X", 1, 2, eps_X}},
      {"iota_X", {"iota_X", -1, 0, safe_iota}},
      {"L_X", {"L_X", 0, 0, lie_X}},
      {"L_X_star", {"L_X_star", 0, 0, lie_X_star}},
      {"K_X", {"K_X", 0, 0, K_X}},
      {"Lap", {"Lap", 0, -2, form_laplacian}},
      {"Q", {"Q", 0, 2, mul_Q}},
      {"eps_D", {"eps_D", 1, 0, eps_D}},
      {"iota_D", {"iota_D", -1, -2, iota_D}},
      {"id", op_identity()},
  };
  auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown ambient operator: " + name);
  // compositions can pass through negative degree (e.g. after iota of a 0-form)
  AmbientOperator op = it->second;
  auto f = op.apply;
  int ds = op.degree_shift;
  op.apply = [f, ds](const AmbientForm& F) {
    if (F.degree() < 0 || (F.degree() == 0 && ds < 0)) return AmbientForm(F.n(), F.degree() + ds);
    return f(F);
  };
  return op;
}

AmbientOperator op_pipeline(const std::vector<std::string>& names) {
  AmbientOperator out = op_identity();
  bool first = true;
  for (auto& nm : names) {
    AmbientOperator g = op_named(nm);
    out = first ? g : out.compose(g);
    first = false;
  }
  return out;
}

}  // namespace conformal
