#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace conformal {

using Rational = mpq_class;

inline constexpr int kMaxVars = 20;

// Exponent vector of a Laurent monomial.  Variable 0 is the most
// significant position in the lex order.
struct Monomial {
  std::array<int8_t, kMaxVars> e{};

  int operator[](int i) const { return e[i]; }
  int8_t& operator[](int i) { return e[i]; }
  int total_degree() const {
    int s = 0;
    for (auto v : e) s += v;
    return s;
  }
  bool is_one() const {
    for (auto v : e)
      if (v) return false;
    return true;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<int8_t>(a.e[i] + b.e[i]);
    return r;
  }
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<int8_t>(a.e[i] - b.e[i]);
    return r;
  }
  // true when b/a has only non-negative exponents
  bool divides(const Monomial& b) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i] > b.e[i]) return false;
    return true;
  }
  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

struct MonomialHash {
  size_t operator()(const Monomial& m) const noexcept {
    uint64_t h = 1469598103934665603ull;
    for (auto v : m.e) {
      h ^= static_cast<uint8_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

// Sparse Laurent polynomial over Q.  Terms are kept sorted ascending by
// monomial with nonzero coefficients, so structural equality is equality.
class Poly {
 public:
  using Term = std::pair<Monomial, Rational>;

  Poly() = default;
  explicit Poly(const Rational& c);
  explicit Poly(long c) : Poly(Rational(c)) {}
  static Poly var(int idx, int power = 1);
  static Poly mono(const Monomial& m, const Rational& c);
  static Poly from_terms(std::vector<Term> terms);  // sorts and merges

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_value() const;
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.back(); }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }
  bool operator<(const Poly& o) const;

  Poly mul_monomial(const Monomial& m) const;
  Poly pow(int e) const;  // e >= 0
  Poly derivative(int v) const;

  // Smallest exponent of each variable over all terms.
  Monomial min_exponents() const;
  int max_degree_in(int v) const;
  int min_degree_in(int v) const;
  // returns true and sets deg if every term has the same total degree
  bool homogeneous(int* deg) const;

  // Coefficients as integers with positive leading term; returns the scale
  // factor c with *this == c * primitive.
  Rational content() const;
  Poly primitive() const;

  // Exact division by a polynomial with non-negative exponents; nullopt-like
  // via the bool return.
  bool divide_exact(const Poly& divisor, Poly* quotient) const;

  // Substitute variable v by a polynomial (v must appear with
  // non-negative exponents only).
  Poly substitute(int v, const Poly& value) const;
  // Substitute v -> value where value is a Laurent monomial times poly and
  // v may appear with negative exponent only if value is a monomial.
  Poly set_variable(int v, const Rational& value) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::vector<Term> terms_;
};

std::string rational_to_string(const Rational& q);

}  // namespace conformal
