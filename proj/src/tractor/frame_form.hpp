#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "tractor/base_form.hpp"

namespace conformal {

// Slots of a k-form tractor in a scale:
//   V = Y^k.alpha + Z^k.mu + W^k.phi + X^k.rho
// alpha in E^{k-1}[k+w], mu in E^k[k+w], phi in E^{k-2}[k-2+w], rho in E^{k-1}[k-2+w].
struct TractorSlots {
  BaseForm alpha, mu, phi, rho;

  TractorSlots(int n, int k) : alpha(n, k - 1), mu(n, k), phi(n, k - 2), rho(n, k - 1) {}
  bool operator==(const TractorSlots& o) const {
    return alpha == o.alpha && mu == o.mu && phi == o.phi && rho == o.rho;
  }
};

// A weighted k-form tractor expanded in the frame of a scale: frame bit 0 is
// Y, bits 1..n are the Z^a and bit n+1 is X.  The coefficient of a frame
// monomial e^M has density weight w + #Y + #Z - #X.
//
// With blocks = 2 the object is a tractor-form-valued tractor form; the
// second factor uses the bits shifted up by n+2 and a monomial is the wedge
// of its inner and outer parts.  Only the degree in total is tracked.
class FrameForm {
 public:
  using Components = std::map<Mask, ScalarExpr>;

  FrameForm(int n, int degree, int weight, int blocks = 1)
      : n_(n), degree_(degree), weight_(weight), blocks_(blocks) {}
  static FrameForm from_slots(const TractorSlots& s, int weight);
  TractorSlots slots() const;

  int n() const { return n_; }
  int degree() const { return degree_; }
  int weight() const { return weight_; }
  int blocks() const { return blocks_; }
  int width() const { return blocks_ * (n_ + 2); }
  int y_bit(int block = 0) const { return block * (n_ + 2); }
  int x_bit(int block = 0) const { return block * (n_ + 2) + n_ + 1; }
  Mask z_mask() const { return ((Mask(1) << (n_ + 1)) - 1) & ~Mask(1); }
  int coefficient_weight(Mask m) const;

  const Components& components() const { return comps_; }
  ScalarExpr get(Mask m) const;
  void set(Mask m, ScalarExpr v);
  void add(Mask m, const ScalarExpr& v);
  bool is_zero() const { return comps_.empty(); }
  // adds c*o without comparing the declared weights
  void add_scaled(const FrameForm& o, const ScalarExpr& c);

  FrameForm operator-() const;
  FrameForm& operator+=(const FrameForm& o);
  FrameForm& operator-=(const FrameForm& o);
  FrameForm& operator*=(const ScalarExpr& f);
  FrameForm& operator*=(const Rational& c);
  friend FrameForm operator+(FrameForm a, const FrameForm& b) { return a += b; }
  friend FrameForm operator-(FrameForm a, const FrameForm& b) { return a -= b; }
  friend FrameForm operator*(const ScalarExpr& f, FrameForm a) { return a *= f; }
  friend FrameForm operator*(const Rational& c, FrameForm a) { return a *= c; }
  bool operator==(const FrameForm& o) const { return comps_ == o.comps_; }
  bool operator!=(const FrameForm& o) const { return !(*this == o); }

  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  int n_, degree_, weight_, blocks_;
  Components comps_;
};

// Linear map on frame 1-forms: images[i] lists (j, c) with e^i -> sum c e^j.
using FrameMap = std::vector<std::vector<std::pair<int, ScalarExpr>>>;

// Repeats a one-block map on every block.
FrameMap replicate(const FrameMap& one_block, int n, int blocks);
// Extends the map to the exterior algebra as a derivation.
FrameForm apply_derivation(const FrameForm& v, const FrameMap& images);
// Extends the map to the exterior algebra multiplicatively.
FrameForm apply_automorphism(const FrameForm& v, const FrameMap& images);

// Re-expresses V, given in the frame of one scale, in the frame of the
// scale rescaled by omega with d(omega) = upsilon (a 1-form):
//   Z^b = Zh^b - U^b X,  Y = Yh + U.Zh - |U|^2/2 X,  X = X.
FrameForm change_frame(const FrameForm& v, const BaseForm& upsilon);
FrameMap frame_change_map(int n, const BaseForm& upsilon);

// The same change stated on slots, read off from the projector laws
//   X^ = X, Z^ = Z + e(U)X, W^ = W + i(U)X,
//   Y^ = Y - i(U)Z + e(U)W + 1/2 (e(U)i(U) - i(U)e(U)) X
// for W = Y ^ X ^ Z^{k-2}.  With the opposite orientation X ^ Y ^ Z^{k-2}
// the two W terms change sign.
TractorSlots transform_slots(const TractorSlots& s, const BaseForm& upsilon);

// The tractor metric (h(X,Y) = 1, h(Z^a,Z^b) = delta) extended to forms,
// summing over sorted frame monomials.
ScalarExpr tractor_metric(const FrameForm& a, const FrameForm& b);

// e(X) and i(X) on tractor forms (i(X) uses h, so it picks out the Y bit).
FrameForm eps_x(const FrameForm& v, int block = 0);
FrameForm iota_x(const FrameForm& v, int block = 0);
// e^i ^ v and the contraction removing frame bit i, with the given new weight
FrameForm insert_bit(const FrameForm& v, int i, int weight);
FrameForm remove_bit(const FrameForm& v, int i, int weight);

}  // namespace conformal
