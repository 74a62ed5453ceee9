#include "scalar/scalar_expr.hpp"

#include <algorithm>

namespace conformal {

FactorPtr FactorSpec::from_omega(const RatFunc& omega, int nvars) {
  auto s = std::make_shared<FactorSpec>();
  for (int v = 0; v < nvars; ++v) s->dlog.push_back(omega.derivative(v));
  s->omega = omega;
  return s;
}

FactorPtr FactorSpec::from_exp_omega(const RatFunc& e, int nvars) {
  if (e.is_zero()) throw InconsistentFactor("e^omega must be nonzero");
  auto s = std::make_shared<FactorSpec>();
  RatFunc inv = e.inverse();
  for (int v = 0; v < nvars; ++v) s->dlog.push_back(e.derivative(v) * inv);
  s->exp_omega = e;
  return s;
}

ScalarExpr ScalarExpr::t_power(int p, FactorPtr spec) {
  ScalarExpr r;
  r.parts_.emplace_back(p, RatFunc(Rational(1)));
  r.factor_ = std::move(spec);
  if (p != 0 && !r.factor_) throw InconsistentFactor("t used without a factor spec");
  return r;
}

bool ScalarExpr::has_factor() const {
  for (auto& [p, r] : parts_)
    if (p != 0) return true;
  return false;
}

const RatFunc& ScalarExpr::rational() const {
  static const RatFunc zero;
  if (parts_.empty()) return zero;
  if (parts_.size() != 1 || parts_[0].first != 0) throw ScalarError("expression carries a t-factor");
  return parts_[0].second;
}

RatFunc ScalarExpr::part(int p) const {
  for (auto& [q, r] : parts_)
    if (q == p) return r;
  return RatFunc();
}

bool ScalarExpr::is_constant() const {
  if (parts_.empty()) return true;
  return parts_.size() == 1 && parts_[0].first == 0 && parts_[0].second.is_constant();
}

Rational ScalarExpr::constant_value() const {
  if (parts_.empty()) return Rational(0);
  if (!is_constant()) throw ScalarError("expression is not constant");
  return parts_[0].second.constant_value();
}

void ScalarExpr::merge_factor(const ScalarExpr& o) {
  if (!o.factor_) return;
  if (!factor_) {
    factor_ = o.factor_;
    return;
  }
  if (factor_ != o.factor_) throw InconsistentFactor("expressions use different conformal factors");
}

ScalarExpr ScalarExpr::operator-() const {
  ScalarExpr r = *this;
  for (auto& [p, x] : r.parts_) x = -x;
  return r;
}

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& o) {
  if (o.parts_.empty()) return *this;
  merge_factor(o);
  if (parts_.size() == 1 && o.parts_.size() == 1 && parts_[0].first == o.parts_[0].first) {
    parts_[0].second += o.parts_[0].second;
    if (parts_[0].second.is_zero()) parts_.clear();
    return *this;
  }
  std::vector<Part> out;
  size_t i = 0, j = 0;
  while (i < parts_.size() || j < o.parts_.size()) {
    if (j == o.parts_.size() || (i < parts_.size() && parts_[i].first < o.parts_[j].first)) {
      out.push_back(std::move(parts_[i++]));
    } else if (i == parts_.size() || o.parts_[j].first < parts_[i].first) {
      out.push_back(o.parts_[j++]);
    } else {
      RatFunc s = parts_[i].second + o.parts_[j].second;
      if (!s.is_zero()) out.emplace_back(parts_[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  parts_ = std::move(out);
  return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& o) { return *this += -o; }

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
  ScalarExpr r;
  if (a.parts_.empty() || b.parts_.empty()) return r;
  r.factor_ = a.factor_;
  r.merge_factor(b);
  if (a.parts_.size() == 1 && b.parts_.size() == 1) {
    RatFunc prod = a.parts_[0].second * b.parts_[0].second;
    if (!prod.is_zero()) r.parts_.emplace_back(a.parts_[0].first + b.parts_[0].first, std::move(prod));
    return r;
  }
  for (auto& [p, x] : a.parts_)
    for (auto& [q, y] : b.parts_) {
      ScalarExpr term;
      term.parts_.emplace_back(p + q, x * y);
      if (term.parts_[0].second.is_zero()) continue;
      term.factor_ = r.factor_;
      r += term;
    }
  return r;
}

ScalarExpr& ScalarExpr::operator*=(const ScalarExpr& o) {
  *this = *this * o;
  return *this;
}

ScalarExpr& ScalarExpr::operator*=(const Rational& c) {
  if (c == 0) {
    parts_.clear();
    return *this;
  }
  for (auto& [p, x] : parts_) x *= c;
  return *this;
}

ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
  if (b.parts_.size() != 1) throw ScalarError("division by an expression with mixed t-powers");
  ScalarExpr inv;
  inv.parts_.emplace_back(-b.parts_[0].first, b.parts_[0].second.inverse());
  inv.factor_ = b.factor_;
  return a * inv;
}

ScalarExpr ScalarExpr::pow(int e) const {
  if (e < 0) return ScalarExpr(Rational(1)) / pow(-e);
  ScalarExpr result(Rational(1)), base = *this;
  result.factor_ = factor_;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

bool ScalarExpr::operator==(const ScalarExpr& o) const { return parts_ == o.parts_; }

ScalarExpr ScalarExpr::derivative(int v) const {
  ScalarExpr r;
  r.factor_ = factor_;
  for (auto& [p, x] : parts_) {
    RatFunc d = x.derivative(v);
    if (p != 0) {
      if (!factor_) throw InconsistentFactor("t-derivative without factor spec");
      d += x * factor_->dlog.at(v) * Rational(p);
    }
    if (!d.is_zero()) r.parts_.emplace_back(p, std::move(d));
  }
  return r;
}

std::optional<int> ScalarExpr::homogeneity_degree() const {
  if (has_factor()) throw ScalarError("homogeneity of a t-graded expression");
  if (parts_.empty()) return 0;
  int d = 0;
  if (!parts_[0].second.homogeneous(&d)) return std::nullopt;
  return d;
}

ScalarExpr ScalarExpr::substitute(int v, const ScalarExpr& value) const {
  if (has_factor()) throw ScalarError("substitution in a t-graded expression");
  if (parts_.empty()) return *this;
  return ScalarExpr(parts_[0].second.substitute(v, value.rational()));
}

ScalarExpr ScalarExpr::substitute_factor(const RatFunc& t_value, int nvars) const {
  if (t_value.is_zero()) throw InconsistentFactor("t value must be nonzero");
  if (has_factor()) {
    if (!factor_) throw InconsistentFactor("no factor spec");
    RatFunc inv = t_value.inverse();
    for (int v = 0; v < nvars; ++v)
      if (t_value.derivative(v) * inv != factor_->dlog.at(v))
        throw InconsistentFactor("log-derivative of the t value does not match d(omega)");
  }
  RatFunc out;
  for (auto& [p, x] : parts_) out += (p == 0 ? x : x * t_value.pow(p));
  return ScalarExpr(out);
}

ScalarExpr ScalarExpr::with_factor(FactorPtr spec) const {
  ScalarExpr r = *this;
  r.factor_ = std::move(spec);
  return r;
}

std::string ScalarExpr::to_string(const std::vector<std::string>& names) const {
  if (parts_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [p, x] : parts_) {
    if (!first) s += " + ";
    first = false;
    if (p == 0) {
      s += parts_.size() == 1 ? x.to_string(names) : "(" + x.to_string(names) + ")";
    } else {
      s += "(" + x.to_string(names) + ")*t";
      if (p != 1) s += "^" + std::to_string(p);
    }
  }
  return s;
}

}  // namespace conformal
