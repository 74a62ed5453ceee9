#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace conformal {

using Mask = uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }
inline bool has_bit(Mask m, int a) { return (m >> a) & 1u; }
inline Mask bit(int a) { return Mask(1) << a; }

// (-1)^(number of elements of m below a): the sign of moving e^a to its
// sorted place in e^a ^ e^m, or of pulling it out for interior products.
inline int insertion_sign(Mask m, int a) { return (std::popcount(m & (bit(a) - 1)) & 1) ? -1 : 1; }

inline std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  while (m) {
    int a = std::countr_zero(m);
    out.push_back(a);
    m &= m - 1;
  }
  return out;
}

// All masks of popcount k whose bits lie in [lo, hi].
inline std::vector<Mask> subsets(int lo, int hi, int k) {
  std::vector<Mask> out;
  if (k < 0) return out;
  int width = hi - lo + 1;
  if (k > width) return out;
  for (Mask m = 0; m < (Mask(1) << width); ++m)
    if (std::popcount(m) == k) out.push_back(m << lo);
  return out;
}

// sign of the wedge e^a ^ e^b for disjoint sorted masks, 0 if they meet
inline int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int s = 0;
  for (Mask x = a; x; x &= x - 1) s += std::popcount(b & (bit(std::countr_zero(x)) - 1));
  return (s & 1) ? -1 : 1;
}

}  // namespace conformal
