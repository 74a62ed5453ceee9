#include "scalar/ratfunc.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace conformal {

namespace {

Poly product(const std::vector<RatFunc::Factor>& fs) {
  Poly r(Rational(1));
  for (auto& [f, e] : fs) r *= f.pow(e);
  return r;
}

}  // namespace

Poly RatFunc::den_poly() const { return product(den_); }

void RatFunc::insert_factor(std::vector<Factor>& den, Poly f, int e, Poly& scale_num) {
  if (f.is_zero()) throw std::domain_error("division by zero");
  Monomial m = f.min_exponents();
  Rational c = f.content();
  {
    Rational inv = 1 / c;
    f *= inv;
    Monomial neg;
    for (int i = 0; i < kMaxVars; ++i) neg[i] = static_cast<int8_t>(-m[i]);
    f = f.mul_monomial(neg);
    // scale_num /= (c*m)^e
    Monomial sm;
    for (int i = 0; i < kMaxVars; ++i) sm[i] = static_cast<int8_t>(-m[i] * e);
    Rational ce(1);
    for (int i = 0; i < e; ++i) ce *= c;
    scale_num = scale_num.mul_monomial(sm);
    scale_num *= Rational(1 / ce);
  }
  if (f.is_constant()) return;
  for (auto& [g, ge] : den) {
    Poly q;
    while (!f.is_constant() && f.divide_exact(g, &q)) {
      ge += e;
      f = q;
    }
  }
  if (f.is_constant()) {
    // leftover unit from the normalizations above
    Rational u = f.constant_value();
    Rational ue(1);
    for (int i = 0; i < e; ++i) ue *= u;
    scale_num *= Rational(1 / ue);
    return;
  }
  Rational c2 = f.content();
  if (c2 != 1) {
    f *= Rational(1 / c2);
    Rational ce(1);
    for (int i = 0; i < e; ++i) ce *= c2;
    scale_num *= Rational(1 / ce);
  }
  for (auto& [g, ge] : den) {
    if (g == f) {
      ge += e;
      return;
    }
  }
  den.emplace_back(std::move(f), e);
  std::sort(den.begin(), den.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
}

RatFunc RatFunc::make(const Poly& num, const std::vector<Factor>& den) {
  RatFunc r;
  r.num_ = num;
  if (num.is_zero()) return r;
  Poly scale(Rational(1));
  for (auto& [f, e] : den) insert_factor(r.den_, f, e, scale);
  r.num_ *= scale;
  r.cancel();
  return r;
}

void RatFunc::cancel() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& [f, e] : den_) {
    Poly q;
    while (e > 0 && num_.divide_exact(f, &q)) {
      num_ = std::move(q);
      --e;
    }
  }
  den_.erase(std::remove_if(den_.begin(), den_.end(), [](const Factor& x) { return x.second == 0; }),
             den_.end());
}

bool RatFunc::operator==(const RatFunc& o) const {
  if (num_ == o.num_ && den_ == o.den_) return true;
  if (den_.empty() && o.den_.empty()) return false;
  // a power of a factor may be stored expanded; compare the difference
  return (*this - o).is_zero();
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.empty() && o.den_.empty()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
    cancel();
    return *this;
  }
  std::vector<Factor> common = den_;
  for (auto& [g, ge] : o.den_) {
    bool found = false;
    for (auto& [f, e] : common)
      if (f == g) {
        e = std::max(e, ge);
        found = true;
      }
    if (!found) common.emplace_back(g, ge);
  }
  std::sort(common.begin(), common.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
  auto lift = [&](const RatFunc& x) {
    Poly p = x.num_;
    for (auto& [f, e] : common) {
      int have = 0;
      for (auto& [g, ge] : x.den_)
        if (g == f) have = ge;
      if (e > have) p *= f.pow(e - have);
    }
    return p;
  };
  num_ = lift(*this) + lift(o);
  den_ = std::move(common);
  cancel();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) {
    num_ = Poly();
    den_.clear();
    return *this;
  }
  num_ *= o.num_;
  if (den_.empty() && o.den_.empty()) return *this;
  for (auto& [g, ge] : o.den_) {
    bool found = false;
    for (auto& [f, e] : den_)
      if (f == g) {
        e += ge;
        found = true;
      }
    if (!found) den_.emplace_back(g, ge);
  }
  std::sort(den_.begin(), den_.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
  cancel();
  return *this;
}

RatFunc& RatFunc::operator*=(const Rational& c) {
  num_ *= c;
  if (num_.is_zero()) den_.clear();
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Poly top = product(den_);
  std::vector<Factor> fs{{num_, 1}};
  return make(top, fs);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc result(Rational(1)), base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

bool RatFunc::operator<(const RatFunc& o) const {
  if (num_ != o.num_) return num_ < o.num_;
  if (den_.size() != o.den_.size()) return den_.size() < o.den_.size();
  for (size_t i = 0; i < den_.size(); ++i) {
    if (den_[i].first != o.den_[i].first) return den_[i].first < o.den_[i].first;
    if (den_[i].second != o.den_[i].second) return den_[i].second < o.den_[i].second;
  }
  return false;
}

RatFunc RatFunc::derivative(int v) const {
  if (den_.empty()) return RatFunc(num_.derivative(v));
  Poly g(Rational(1));
  for (auto& [f, e] : den_) g *= f;
  Poly top = num_.derivative(v) * g;
  for (size_t i = 0; i < den_.size(); ++i) {
    Poly df = den_[i].first.derivative(v);
    if (df.is_zero()) continue;
    Poly rest(Rational(den_[i].second));
    for (size_t j = 0; j < den_.size(); ++j)
      if (j != i) rest *= den_[j].first;
    top -= num_ * df * rest;
  }
  RatFunc r;
  r.num_ = std::move(top);
  r.den_ = den_;
  for (auto& [f, e] : r.den_) e += 1;
  r.cancel();
  return r;
}

bool RatFunc::homogeneous(int* deg) const {
  int d = 0;
  if (!num_.homogeneous(&d)) return false;
  for (auto& [f, e] : den_) {
    int fd = 0;
    if (!f.homogeneous(&fd)) return false;
    d -= fd * e;
  }
  if (deg) *deg = d;
  return true;
}

namespace {

RatFunc substitute_poly(const Poly& p, int v, const RatFunc& value) {
  std::map<int, std::vector<Poly::Term>> by_power;
  for (auto& t : p.terms()) {
    Monomial m = t.first;
    int ex = m[v];
    m[v] = 0;
    by_power[ex].emplace_back(m, t.second);
  }
  RatFunc out;
  for (auto& [ex, terms] : by_power) {
    RatFunc piece(Poly::from_terms(std::move(terms)));
    if (ex != 0) piece *= value.pow(ex);
    out += piece;
  }
  return out;
}

}  // namespace

RatFunc RatFunc::substitute(int v, const RatFunc& value) const {
  RatFunc out = substitute_poly(num_, v, value);
  // invert before raising so each factor keeps its multiplicity
  for (auto& [f, e] : den_) out *= substitute_poly(f, v, value).inverse().pow(e);
  return out;
}

std::string RatFunc::to_string(const std::vector<std::string>& names) const {
  if (den_.empty()) return num_.to_string(names);
  std::string s = "(" + num_.to_string(names) + ")/(";
  bool first = true;
  for (auto& [f, e] : den_) {
    if (!first) s += "*";
    first = false;
    s += "(" + f.to_string(names) + ")";
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s + ")";
}

}  // namespace conformal
