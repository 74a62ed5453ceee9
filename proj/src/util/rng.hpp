#pragma once

#include <cstdint>
#include <random>

namespace conformal {

// mt19937_64 is fully specified by the standard; the distributions are not,
// so bounded draws are done here to keep streams identical across toolchains.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // uniform in [lo, hi]
  long range(long lo, long hi) {
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t x;
    do x = eng_();
    while (x >= limit);
    return lo + static_cast<long>(x % span);
  }
  long nonzero(long bound) {
    long v = range(-bound, bound - 1);
    return v >= 0 ? v + 1 : v;
  }
  bool coin() { return (eng_() >> 63) != 0; }

  // Independent stream for sub-task i.
  Rng fork(uint64_t i) { return Rng(eng_() ^ (0x9e3779b97f4a7c15ull * (i + 1))); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace conformal
