#include "tractor/base_form.hpp"

#include <stdexcept>

#include "scalar/expr_json.hpp"

namespace conformal {

BaseForm BaseForm::scalar(int n, const ScalarExpr& f) {
  BaseForm out(n, 0);
  out.set(0, f);
  return out;
}

BaseForm BaseForm::one_form(int n, const std::vector<ScalarExpr>& c) {
  BaseForm out(n, 1);
  for (int a = 1; a <= n; ++a) out.set(bit(a), c.at(a - 1));
  return out;
}

ScalarExpr BaseForm::get(Mask m) const {
  auto it = comps_.find(m);
  return it == comps_.end() ? ScalarExpr() : it->second;
}

void BaseForm::set(Mask m, ScalarExpr v) {
  if (v.is_zero())
    comps_.erase(m);
  else
    comps_[m] = std::move(v);
}

void BaseForm::add(Mask m, const ScalarExpr& v) {
  if (v.is_zero()) return;
  auto it = comps_.find(m);
  if (it == comps_.end()) {
    comps_.emplace(m, v);
    return;
  }
  it->second += v;
  if (it->second.is_zero()) comps_.erase(it);
}

BaseForm BaseForm::operator-() const {
  BaseForm r = *this;
  for (auto& [m, f] : r.comps_) f = -f;
  return r;
}

BaseForm& BaseForm::operator+=(const BaseForm& o) {
  if (o.degree_ != degree_ && !o.is_zero() && !is_zero()) throw std::invalid_argument("adding forms of different degree");
  if (is_zero()) degree_ = o.degree_;
  for (auto& [m, f] : o.comps_) add(m, f);
  return *this;
}

BaseForm& BaseForm::operator-=(const BaseForm& o) { return *this += -o; }

BaseForm& BaseForm::operator*=(const ScalarExpr& f) {
  if (f.is_zero()) {
    comps_.clear();
    return *this;
  }
  Components next;
  for (auto& [m, g] : comps_) {
    ScalarExpr p = g * f;
    if (!p.is_zero()) next.emplace(m, std::move(p));
  }
  comps_ = std::move(next);
  return *this;
}

BaseForm& BaseForm::operator*=(const Rational& c) {
  if (c == 0) comps_.clear();
  for (auto& [m, g] : comps_) g *= c;
  return *this;
}

BaseForm BaseForm::partial(int a) const {
  BaseForm out(n_, degree_);
  for (auto& [m, f] : comps_) out.set(m, f.derivative(a));
  return out;
}

BaseForm BaseForm::substitute_factor(const RatFunc& t_value) const {
  BaseForm out(n_, degree_);
  for (auto& [m, f] : comps_) out.set(m, f.substitute_factor(t_value, n_ + 2));
  return out;
}

std::string BaseForm::to_string() const {
  if (comps_.empty()) return "0";
  auto names = variable_names(n_);
  std::string s;
  for (auto& [m, f] : comps_) {
    if (!s.empty()) s += " + ";
    s += "(" + f.to_string(names) + ")";
    for (int a : mask_indices(m)) s += (a == mask_indices(m)[0] ? " dx" : "^dx") + std::to_string(a);
  }
  return s;
}

nlohmann::json BaseForm::to_json() const {
  nlohmann::json comps = nlohmann::json::object();
  for (auto& [m, f] : comps_) {
    std::string key;
    for (int a : mask_indices(m)) key += (key.empty() ? "" : ",") + std::to_string(a);
    comps[key] = expr_to_json(f, n_);
  }
  return {{"degree", degree_}, {"components", comps}};
}

BaseForm BaseForm::from_json(const nlohmann::json& j, int n, FactorPtr factor) {
  BaseForm out(n, j.at("degree").get<int>());
  for (auto& [key, val] : j.at("components").items()) {
    Mask m = 0;
    size_t pos = 0;
    while (pos < key.size()) {
      size_t next = key.find(',', pos);
      if (next == std::string::npos) next = key.size();
      int a = std::stoi(key.substr(pos, next - pos));
      if (a < 1 || a > n) throw ExprParseError("base index out of range: " + key);
      m |= bit(a);
      pos = next + 1;
    }
    if (popcount(m) != out.degree()) throw ExprParseError("component degree mismatch: " + key);
    out.set(m, expr_from_json(val, n, factor));
  }
  return out;
}

BaseForm eps_basis(int a, const BaseForm& u) {
  BaseForm out(u.n(), u.degree() + 1);
  for (auto& [m, f] : u.components()) {
    if (has_bit(m, a)) continue;
    out.add(m | bit(a), insertion_sign(m, a) < 0 ? -f : f);
  }
  return out;
}

BaseForm iota_basis(int a, const BaseForm& u) {
  BaseForm out(u.n(), u.degree() - 1);
  for (auto& [m, f] : u.components()) {
    if (!has_bit(m, a)) continue;
    out.add(m & ~bit(a), insertion_sign(m, a) < 0 ? -f : f);
  }
  return out;
}

BaseForm flat_d(const BaseForm& u) {
  BaseForm out(u.n(), u.degree() + 1);
  for (int a = 1; a <= u.n(); ++a) out += eps_basis(a, u.partial(a));
  return out;
}

BaseForm flat_delta(const BaseForm& u) {
  BaseForm out(u.n(), u.degree() - 1);
  if (u.degree() == 0) return out;
  for (int a = 1; a <= u.n(); ++a) out -= iota_basis(a, u.partial(a));
  return out;
}

BaseForm wedge(const BaseForm& a, const BaseForm& b) {
  BaseForm out(a.n(), a.degree() + b.degree());
  for (auto& [ma, fa] : a.components())
    for (auto& [mb, fb] : b.components()) {
      int s = wedge_sign(ma, mb);
      if (!s) continue;
      ScalarExpr g = fa * fb;
      out.add(ma | mb, s < 0 ? -g : g);
    }
  return out;
}

BaseForm interior(const BaseForm& v, const BaseForm& u) {
  if (v.degree() != 1) throw std::invalid_argument("interior product needs a 1-form");
  BaseForm out(u.n(), u.degree() - 1);
  for (auto& [m, f] : v.components()) out += f * iota_basis(mask_indices(m)[0], u);
  return out;
}

}  // namespace conformal
