#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tractor/frame_form.hpp"
#include "tractor/weighted.hpp"

namespace conformal {

// Normal tractor connection coupled to the Levi-Civita connection of the
// scale, on tractor forms of any block count.  In the frame of the scale
//   nabla_a X = Z_a,  nabla_a Z^b = -P_a^b X - delta_a^b Y,  nabla_a Y = P_ab Z^b.
FrameForm tractor_nabla(const ScaleContext& ctx, const FrameForm& v, int a);
std::vector<FrameForm> tractor_nabla(const ScaleContext& ctx, const FrameForm& v);  // entries 1..n
// nabla^a nabla_a, the second derivative also acting on the form index a
FrameForm tractor_laplacian(const ScaleContext& ctx, const FrameForm& v);
// [nabla_a, nabla_b] v
FrameForm tractor_curvature_on(const ScaleContext& ctx, const FrameForm& v, int a, int b);

// mu in E^k  ->  (0, mu, 0, (n-2k)^{-1} delta mu) in T^k[-k]
FrameForm splitting_S(const ScaleContext& ctx, const BaseForm& mu);

// -nabla^a nabla_a - (1 - n/2) J, coupled, on tractors of weight 1 - n/2
FrameForm tractor_box(const ScaleContext& ctx, const FrameForm& v);

// Box S_{n/2-1} mu
FrameForm translate_box_S(const ScaleContext& ctx, const BaseForm& mu);

// D_A V = (n+2w-2) w Y_A V + (n+2w-2) Z_A^a nabla_a V - X_A (nabla^a nabla_a + wJ) V.
// parts[i] is the coefficient of the frame element i (Y = 0, Z^a = a, X = n+1)
// in the new tractor index.
struct TractorDValue {
  std::vector<FrameForm> parts;
  bool operator==(const TractorDValue& o) const { return parts == o.parts; }
};
TractorDValue tractor_D(const ScaleContext& ctx, const FrameForm& v);
// Rescales both the new index and the tractor argument.
TractorDValue change_frame(const TractorDValue& d, const BaseForm& upsilon);

// K_ab = C_abce Z^c ^ Z^e - 2 nabla_[a P_b]e X ^ Z^e as tractor 2-forms, for a < b
std::map<std::pair<int, int>, FrameForm> tractor_curvature_K(const ScaleContext& ctx);
// Omega = sum_{a<b} Z^a ^ Z^b (outer block) (x) K_ab
FrameForm omega_field(const ScaleContext& ctx);
// 3/((n-2)(n-4)) i(D) e(X) Omega with e(X), i(D) on the outer block
FrameForm w_tractor(const ScaleContext& ctx);

}  // namespace conformal
