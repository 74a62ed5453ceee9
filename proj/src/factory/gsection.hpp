#pragma once

#include "ambient/descent.hpp"
#include "tractor/scale.hpp"

namespace conformal {

// Element of G^k[w] = T^k[w-k] / (image of eps(X)) in the flat scale:
// Y^k.alpha + Z^k.mu with alpha in E^{k-1}[w], mu in E^k[w].
struct GSection {
  BaseForm alpha, mu;
  int weight = 0;

  GSection(int n, int k, int w) : alpha(n, k - 1), mu(n, k), weight(w) {}
  int n() const { return mu.n(); }
  int degree() const { return mu.degree(); }
  bool operator==(const GSection& o) const { return alpha == o.alpha && mu == o.mu && weight == o.weight; }
};

// Element of G_k[w], the image of iota(X) inside T^k[k-n+w]:
// Z^k.u + X^k.v with u in E_k[w], v in E_{k-1}[w].
struct GDualSection {
  BaseForm u, v;
  int weight = 0;

  GDualSection(int n, int k, int w) : u(n, k), v(n, k - 1), weight(w) {}
  int n() const { return u.n(); }
  int degree() const { return u.degree(); }
  // density weight of the u-slot written with upper indices
  int upper_weight() const { return weight + 2 * degree() - n(); }
  bool operator==(const GDualSection& o) const { return u == o.u && v == o.v && weight == o.weight; }
};

GSection q_inject(const BaseForm& mu, int w = 0);
BaseForm q_project(const GDualSection& F);
// the u-slot embedding E_k[w] -> G_k[w] (v = 0)
GDualSection q_dual_embed(const BaseForm& u, int w = 0);

// (alpha, mu) -> (w mu - d alpha, d mu)
GSection d_tilde(const GSection& F);
// the same operator written in another scale: slots taken in that scale's
// frame, nabla the coupled Levi-Civita connection
GSection d_tilde(const ScaleContext& ctx, const GSection& F);
// formal adjoint: (u, v) -> (delta u - w v, -delta v) on G_k[w]
GDualSection delta_tilde(const GDualSection& F);
// change of splitting for G^k: alpha' = alpha, mu' = mu + Upsilon ^ alpha
GSection change_scale(const GSection& F, const BaseForm& upsilon);

// the wedge product of G-sections, as the quotient of the tractor wedge
GSection g_wedge(const GSection& a, const GSection& b);
// Y = sigma^{-1} d~ sigma in G^1[0] for the scale e^{-omega} sigma_flat
GSection y_section(const ScaleContext& ctx);

// eps(X): G_k -> G_{k+1}, (u, v) -> (0, u); iota(X): G^k -> G^{k-1}, (alpha, mu) -> (0, alpha)
GDualSection eps_x(const GDualSection& F);
GSection iota_x(const GSection& F);
// iota(Y) for the scale of ctx: G_k -> G_{k-1}, (u, v) -> (v - iota(Upsilon) u, iota(Upsilon) v)
GDualSection iota_y(const ScaleContext& ctx, const GDualSection& F);

// Ambient realizations on the flat model and their restrictions to the
// section x+ = 1 of the null cone.
AmbientForm to_ambient(const GSection& F);
AmbientForm to_ambient(const GDualSection& F);
GSection g_from_ambient(const AmbientForm& F, int w);
GDualSection g_dual_from_ambient(const AmbientForm& F, int w);

// ambient one-forms dx+/x+ (the flat Y) and X = x_A dx^A
AmbientForm ambient_y(int n);
AmbientForm ambient_x(int n);

}  // namespace conformal
