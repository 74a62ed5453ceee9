#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "scalar/quadric.hpp"
#include "util/masks.hpp"

namespace conformal {

struct DegreeUnderflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WeightMissing : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WeightMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const QuadricContext& quadric_context(int n);

// k-form on R^{n+2}: sorted index sets (bit masks over 0..n+1) to
// coefficients.  weight, when present, asserts L_X F = weight * F.
class AmbientForm {
 public:
  using Components = std::map<Mask, ScalarExpr>;

  AmbientForm(int n, int degree, std::optional<int> weight = std::nullopt)
      : n_(n), degree_(degree), weight_(weight) {}

  static AmbientForm scalar(int n, const ScalarExpr& f, std::optional<int> weight = std::nullopt);

  int n() const { return n_; }
  int dim() const { return n_ + 2; }
  int degree() const { return degree_; }
  std::optional<int> weight() const { return weight_; }
  void set_weight(std::optional<int> w) { weight_ = w; }
  const Components& components() const { return comps_; }
  const QuadricContext& ctx() const { return quadric_context(n_); }

  ScalarExpr get(Mask m) const;
  void set(Mask m, ScalarExpr value);
  void add(Mask m, const ScalarExpr& value);
  bool is_zero() const { return comps_.empty(); }

  AmbientForm operator-() const;
  AmbientForm& operator+=(const AmbientForm& o);
  AmbientForm& operator-=(const AmbientForm& o);
  AmbientForm& operator*=(const Rational& c);
  AmbientForm& operator*=(const ScalarExpr& f);
  friend AmbientForm operator+(AmbientForm a, const AmbientForm& b) { return a += b; }
  friend AmbientForm operator-(AmbientForm a, const AmbientForm& b) { return a -= b; }
  friend AmbientForm operator*(AmbientForm a, const Rational& c) { return a *= c; }
  friend AmbientForm operator*(const Rational& c, AmbientForm a) { return a *= c; }
  friend AmbientForm operator*(const ScalarExpr& f, AmbientForm a) { return a *= f; }

  // Equality of components; the weight annotation is ignored.
  bool operator==(const AmbientForm& o) const { return comps_ == o.comps_ && (comps_.empty() || degree_ == o.degree_); }
  bool operator!=(const AmbientForm& o) const { return !(*this == o); }

  // Componentwise reduction modulo Q.
  AmbientForm reduce_mod_quadric() const;
  bool vanishes_on_cone() const { return reduce_mod_quadric().is_zero(); }

  // Checks L_X F = w F exactly (Cartan formula) and records w.
  bool verify_weight(int w) const;
  AmbientForm& assert_weight(int w);

  std::string to_string() const;
  nlohmann::json to_json() const;
  static AmbientForm from_json(const nlohmann::json& j, int n);

 private:
  int n_;
  int degree_;
  std::optional<int> weight_;
  Components comps_;
};

// e.g. "dxp^dx1"
std::string mask_name(Mask m, int n);

}  // namespace conformal
