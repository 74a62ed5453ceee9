#pragma once

#include <optional>
#include <string>

#include "factory/gsection.hpp"
#include "tractor/diffop.hpp"

namespace conformal {

struct OutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct NotClosed : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// K_l = iota(X) Lap^{l+1} eps(X) on the flat ambient space; l = -1 gives
// iota(X) eps(X).
AmbientOperator ambient_K(int l);

// An ambient composition that descends: G^k[w] -> G_k[-w].
struct DescendedOperator {
  std::string name, provenance;
  int n = 0, l = 0;
  int source_degree = 0, source_weight = 0;
  int target_degree = 0, target_weight = 0;
  AmbientOperator ambient;

  GDualSection apply(const GSection& F) const;
  // Perturbs the extension of random inputs by Q * junk.
  CheckResult check_extension_independence(int trials, uint64_t seed) const;
  // q^k (this) q_k as an operator E^k[w] -> E_k[-w] in the flat scale
  LinearDiffOp restricted() const;
};

// throws WeightMismatch unless w = l - n/2 + k
DescendedOperator build_K(int n, int l, int k, int w);

// The critical index l = n/2 - k; throws OutOfRange unless 0 <= k <= n/2.
int critical_l(int n, int k);

// q^k K_l q_k on E^k (unweighted), 0 <= k <= n/2 - 1
LinearDiffOp build_L(int n, int k);
BaseForm apply_L(int n, int k, const BaseForm& mu);

// The two slots of K_l q_k u in the scale of ctx: the E_k part (L_k u) and
// the E_{k-1} part, read with iota(Y).
struct BbL {
  LinearDiffOp top, bottom;
};
BbL build_bbL(const ScaleContext& ctx, int k);
GDualSection apply_bbL(const ScaleContext& ctx, int k, const BaseForm& mu);

// M_k = q^k iota(Y) K_{l-1} eps(Y) q_k, 0 <= k <= n/2, in the scale of ctx
BaseForm apply_M(const ScaleContext& ctx, int k, const BaseForm& phi);
LinearDiffOp build_M(const ScaleContext& ctx, int k);
// (n+2) n ... (n-2k+2)
Rational q_normalization(int n, int k);
BaseForm apply_Q(const ScaleContext& ctx, int k, const BaseForm& phi);
LinearDiffOp build_Q(const ScaleContext& ctx, int k);

// G_k = delta Q_k.  For k = 0 the target is zero and `trivial` is set.
struct GaugeOperator {
  LinearDiffOp op;
  bool trivial = false;
};
GaugeOperator build_G(const ScaleContext& ctx, int k);
BaseForm apply_G(const ScaleContext& ctx, int k, const BaseForm& phi);

// L^k_l = q^k K_l q_k on E^k[w], w = l - n/2 + k, any l >= 0 on the flat model
LinearDiffOp weighted_L(int n, int k, int l);
BaseForm apply_weighted_L(int n, int k, int l, const BaseForm& mu);

// The two summands of L^k_l (sigma^w mu) for the scale sigma of ctx:
//   first  = 2 w (l+1) q^k iota(Y) K_{l-1} (sigma^w eps(Y) q_k mu)
//   second = 2 (l+1) q^k iota(Y) K_{l-1} (sigma^w q_{k+1} d mu)
// and the direct value, all in the flat trivialization.  sigma^w = e^{-w omega}
// there, so ctx must be flat or come from a rational e^omega.
struct ExpansionTerms {
  BaseForm direct, first, second;
};
ExpansionTerms weighted_expansion(const ScaleContext& ctx, int k, int l, const BaseForm& mu);

// For closed phi: the top slot of K_{l-1} eps(Y) q_k phi, which must vanish,
// its bottom slot (M_k phi), and the conformal variation of that bottom slot
// from the flat scale to ctx against -(1/(2(l+1))) L_k (omega phi).
struct CollapseReport {
  bool top_slot_zero = false;
  bool bottom_is_M = false;
  bool variation_matches = false;
  Rational variation_constant;
  bool pass() const { return top_slot_zero && bottom_is_M && variation_matches; }
};
// ctx must carry a rational omega.
CollapseReport verify_closed_form_collapse(const ScaleContext& ctx, int k, const BaseForm& phi);

}  // namespace conformal
