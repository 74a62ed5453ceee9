#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scalar/poly.hpp"

namespace conformal {

// Quotient num / prod(f_i^e_i).  num is a Laurent polynomial, so monomial
// denominators never appear as factors.  Each f_i is primitive, has a
// positive leading coefficient and no monomial content; factors are taken to
// be irreducible, and num is kept coprime to all of them.
class RatFunc {
 public:
  using Factor = std::pair<Poly, int>;

  RatFunc() = default;
  RatFunc(const Poly& p) : num_(p) {}  // NOLINT: implicit on purpose
  explicit RatFunc(const Rational& c) : num_(c) {}
  explicit RatFunc(long c) : num_(Rational(c)) {}
  static RatFunc var(int idx, int power = 1) { return RatFunc(Poly::var(idx, power)); }

  const Poly& num() const { return num_; }
  const std::vector<Factor>& den() const { return den_; }
  Poly den_poly() const;
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  Rational constant_value() const { return num_.constant_value(); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator*=(const Rational& c);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator*(RatFunc a, const Rational& c) { return a *= c; }
  friend RatFunc operator*(const Rational& c, RatFunc a) { return a *= c; }
  RatFunc inverse() const;
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  RatFunc pow(int e) const;

  bool operator==(const RatFunc& o) const;
  bool operator!=(const RatFunc& o) const { return !(*this == o); }
  bool operator<(const RatFunc& o) const;

  RatFunc derivative(int v) const;
  // deg num - deg den if both sides are homogeneous
  bool homogeneous(int* deg) const;

  // Replace variable v by the given value everywhere.
  RatFunc substitute(int v, const RatFunc& value) const;

  std::string to_string(const std::vector<std::string>& names) const;

  // Builds num / den from arbitrary pieces and canonicalizes.
  static RatFunc make(const Poly& num, const std::vector<Factor>& den);

 private:
  void cancel();
  static void insert_factor(std::vector<Factor>& den, Poly f, int e, Poly& scale_num);

  Poly num_;
  std::vector<Factor> den_;
};

}  // namespace conformal
