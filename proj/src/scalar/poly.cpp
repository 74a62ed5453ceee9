#include "scalar/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace conformal {

namespace {

void merge_sorted(std::vector<Poly::Term>& out, std::vector<Poly::Term>&& raw) {
  std::sort(raw.begin(), raw.end(),
            [](const Poly::Term& a, const Poly::Term& b) { return a.first < b.first; });
  out.clear();
  out.reserve(raw.size());
  for (auto& t : raw) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
      if (out.back().second == 0) out.pop_back();
    } else if (t.second != 0) {
      out.push_back(std::move(t));
    }
  }
}

}  // namespace

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace_back(Monomial{}, c);
}

Poly Poly::var(int idx, int power) {
  Monomial m;
  m[idx] = static_cast<int8_t>(power);
  return mono(m, Rational(1));
}

Poly Poly::mono(const Monomial& m, const Rational& c) {
  Poly p;
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  Poly p;
  merge_sorted(p.terms_, std::move(terms));
  return p;
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  return terms_[0].second;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      out.push_back(o.terms_[j++]);
    } else {
      Rational c = terms_[i].second + o.terms_[j].second;
      if (c != 0) out.emplace_back(terms_[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (b.terms_.size() == 1) {
    Poly r;
    r.terms_.reserve(a.terms_.size());
    for (auto& t : a.terms_) r.terms_.emplace_back(t.first * b.terms_[0].first, t.second * b.terms_[0].second);
    return r;  // monomial shift preserves order
  }
  if (a.terms_.size() == 1) return b * a;
  std::vector<Poly::Term> raw;
  raw.reserve(a.terms_.size() * b.terms_.size());
  for (auto& s : a.terms_)
    for (auto& t : b.terms_) raw.emplace_back(s.first * t.first, s.second * t.second);
  Poly r;
  merge_sorted(r.terms_, std::move(raw));
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].first != o.terms_[i].first || terms_[i].second != o.terms_[i].second) return false;
  return true;
}

bool Poly::operator<(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size();
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].first != o.terms_[i].first) return terms_[i].first < o.terms_[i].first;
    if (terms_[i].second != o.terms_[i].second) return terms_[i].second < o.terms_[i].second;
  }
  return false;
}

Poly Poly::mul_monomial(const Monomial& m) const {
  Poly r = *this;
  for (auto& t : r.terms_) t.first = t.first * m;
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power of polynomial");
  Poly result(Rational(1)), base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Poly Poly::derivative(int v) const {
  std::vector<Term> raw;
  raw.reserve(terms_.size());
  for (auto& t : terms_) {
    int ex = t.first[v];
    if (ex == 0) continue;
    Monomial m = t.first;
    m[v] = static_cast<int8_t>(ex - 1);
    raw.emplace_back(m, t.second * ex);
  }
  // lowering one exponent keeps relative order only within equal prefixes,
  // so re-sort
  return from_terms(std::move(raw));
}

Monomial Poly::min_exponents() const {
  Monomial m;
  if (terms_.empty()) return m;
  m = terms_[0].first;
  for (auto& t : terms_)
    for (int i = 0; i < kMaxVars; ++i) m.e[i] = std::min(m.e[i], t.first.e[i]);
  return m;
}

int Poly::max_degree_in(int v) const {
  int d = 0;
  bool first = true;
  for (auto& t : terms_) {
    if (first || t.first[v] > d) d = t.first[v];
    first = false;
  }
  return d;
}

int Poly::min_degree_in(int v) const {
  int d = 0;
  bool first = true;
  for (auto& t : terms_) {
    if (first || t.first[v] < d) d = t.first[v];
    first = false;
  }
  return d;
}

bool Poly::homogeneous(int* deg) const {
  if (terms_.empty()) {
    if (deg) *deg = 0;
    return true;
  }
  int d = terms_[0].first.total_degree();
  for (auto& t : terms_)
    if (t.first.total_degree() != d) return false;
  if (deg) *deg = d;
  return true;
}

Rational Poly::content() const {
  if (terms_.empty()) return Rational(0);
  mpz_class num_gcd = 0, den_lcm = 1;
  for (auto& t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.second.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.second.get_den_mpz_t());
  }
  Rational c(num_gcd, den_lcm);
  c.canonicalize();
  if (leading().second < 0) c = -c;
  return c;
}

Poly Poly::primitive() const {
  if (terms_.empty()) return Poly();
  Rational c = content();
  Poly r = *this;
  Rational inv = 1 / c;
  r *= inv;
  return r;
}

bool Poly::divide_exact(const Poly& divisor, Poly* quotient) const {
  if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
  if (is_zero()) {
    if (quotient) *quotient = Poly();
    return true;
  }
  const Term& lt = divisor.leading();
  if (divisor.terms_.size() == 1) {
    if (quotient) {
      Poly q = *this;
      Rational inv = 1 / lt.second;
      for (auto& t : q.terms_) {
        t.first = t.first / lt.first;
        t.second *= inv;
      }
      *quotient = std::move(q);
    }
    return true;
  }
  // Work in the ordinary polynomial ring: strip the monomial content of
  // both sides, divide, then put the monomial back.
  Monomial shift = min_exponents();
  Monomial dshift = divisor.min_exponents();
  Poly rem = *this;
  for (auto& t : rem.terms_) t.first = t.first / shift;
  Poly dv = divisor;
  for (auto& t : dv.terms_) t.first = t.first / dshift;
  const Term& dlt = dv.leading();
  std::vector<Term> qterms;
  Rational inv_lc = 1 / dlt.second;
  while (!rem.is_zero()) {
    const Term& r = rem.leading();
    if (!dlt.first.divides(r.first)) return false;
    Monomial qm = r.first / dlt.first;
    Rational qc = r.second * inv_lc;
    qterms.emplace_back(qm, qc);
    rem -= dv.mul_monomial(qm) * qc;
    if (qterms.size() > 200000) throw std::runtime_error("division did not terminate");
  }
  if (quotient) {
    Poly q = from_terms(std::move(qterms));
    *quotient = q.mul_monomial(shift / dshift);
  }
  return true;
}

Poly Poly::substitute(int v, const Poly& value) const {
  int maxd = max_degree_in(v);
  if (min_degree_in(v) < 0) throw std::invalid_argument("substitute: negative exponent");
  std::vector<Poly> powers{Poly(Rational(1))};
  for (int i = 1; i <= maxd; ++i) powers.push_back(powers.back() * value);
  Poly out;
  std::vector<Term> direct;
  for (auto& t : terms_) {
    int ex = t.first[v];
    Monomial m = t.first;
    m[v] = 0;
    if (ex == 0) {
      direct.emplace_back(m, t.second);
    } else {
      Poly piece = powers[ex].mul_monomial(m);
      piece *= t.second;
      out += piece;
    }
  }
  out += from_terms(std::move(direct));
  return out;
}

Poly Poly::set_variable(int v, const Rational& value) const {
  std::vector<Term> raw;
  raw.reserve(terms_.size());
  for (auto& t : terms_) {
    int ex = t.first[v];
    Monomial m = t.first;
    m[v] = 0;
    Rational c = t.second;
    if (ex != 0) {
      if (value == 0) {
        if (ex > 0) continue;
        throw std::domain_error("set_variable: zero to negative power");
      }
      Rational p(1);
      for (int i = 0; i < std::abs(ex); ++i) p *= value;
      if (ex > 0)
        c *= p;
      else
        c /= p;
    }
    raw.emplace_back(m, c);
  }
  return from_terms(std::move(raw));
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Rational& c = it->second;
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool unit = it->first.is_one();
    if (a != 1 || unit) os << a.get_str();
    bool need_star = (a != 1);
    for (int i = 0; i < kMaxVars; ++i) {
      int ex = it->first[i];
      if (!ex) continue;
      if (need_star) os << "*";
      need_star = true;
      os << (i < static_cast<int>(names.size()) ? names[i] : "v" + std::to_string(i));
      if (ex != 1) os << "^" << ex;
    }
  }
  return os.str();
}

}  // namespace conformal
