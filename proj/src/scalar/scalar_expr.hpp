#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scalar/ratfunc.hpp"

namespace conformal {

struct ScalarError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistentFactor : ScalarError {
  using ScalarError::ScalarError;
};
struct DenominatorOnCone : ScalarError {
  using ScalarError::ScalarError;
};

// The formal unit t = e^omega.  Only d(omega) matters for differentiation;
// omega itself is kept when it is rational so it can be used as a
// multiplication operator.
struct FactorSpec {
  std::vector<RatFunc> dlog;       // d_v omega, one entry per coordinate
  std::optional<RatFunc> omega;    // when omega is rational
  std::optional<RatFunc> exp_omega;  // when e^omega is rational

  static std::shared_ptr<const FactorSpec> from_omega(const RatFunc& omega, int nvars);
  static std::shared_ptr<const FactorSpec> from_exp_omega(const RatFunc& e, int nvars);
};

using FactorPtr = std::shared_ptr<const FactorSpec>;

// Sum over integer powers p of t^p * R_p with R_p rational functions free of t.
class ScalarExpr {
 public:
  using Part = std::pair<int, RatFunc>;

  ScalarExpr() = default;
  ScalarExpr(const RatFunc& r) {  // NOLINT
    if (!r.is_zero()) parts_.emplace_back(0, r);
  }
  ScalarExpr(const Poly& p) : ScalarExpr(RatFunc(p)) {}  // NOLINT
  explicit ScalarExpr(const Rational& c) : ScalarExpr(RatFunc(c)) {}
  explicit ScalarExpr(long c) : ScalarExpr(Rational(c)) {}
  static ScalarExpr var(int idx, int power = 1) { return ScalarExpr(RatFunc::var(idx, power)); }
  static ScalarExpr t_power(int p, FactorPtr spec);

  bool is_zero() const { return parts_.empty(); }
  bool has_factor() const;
  const std::vector<Part>& parts() const { return parts_; }
  const FactorPtr& factor() const { return factor_; }
  // The t^0 part; throws if other powers are present.
  const RatFunc& rational() const;
  RatFunc part(int p) const;
  bool is_constant() const;
  Rational constant_value() const;

  ScalarExpr operator-() const;
  ScalarExpr& operator+=(const ScalarExpr& o);
  ScalarExpr& operator-=(const ScalarExpr& o);
  ScalarExpr& operator*=(const ScalarExpr& o);
  ScalarExpr& operator*=(const Rational& c);
  friend ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
  friend ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }
  friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator*(ScalarExpr a, const Rational& c) { return a *= c; }
  friend ScalarExpr operator*(const Rational& c, ScalarExpr a) { return a *= c; }
  // Division is only defined by expressions with a single t-power.
  friend ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b);
  ScalarExpr pow(int e) const;

  bool operator==(const ScalarExpr& o) const;
  bool operator!=(const ScalarExpr& o) const { return !(*this == o); }

  ScalarExpr derivative(int v) const;
  // Homogeneity degree of the t-free part; nullopt when inhomogeneous.
  std::optional<int> homogeneity_degree() const;

  ScalarExpr substitute(int v, const ScalarExpr& value) const;
  // Replaces t by a concrete rational function after checking that its
  // logarithmic derivative matches the declared d(omega).
  ScalarExpr substitute_factor(const RatFunc& t_value, int nvars) const;
  ScalarExpr with_factor(FactorPtr spec) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void merge_factor(const ScalarExpr& o);
  std::vector<Part> parts_;  // sorted by power, all nonzero
  FactorPtr factor_;
};

}  // namespace conformal
