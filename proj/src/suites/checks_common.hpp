#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "factory/factory.hpp"
#include "tractor/frame_form.hpp"
#include "tractor/random_base.hpp"
#include "util/rng.hpp"

namespace conformal {

struct CheckEnv {
  explicit CheckEnv(uint64_t s) : seed(s), rng(s) {}
  uint64_t seed;
  Rng rng;
};

// Collects the first failure of a check and the constants it measured.
class Verdict {
 public:
  bool pass() const { return ok_; }
  const std::string& witness() const { return witness_; }
  const std::map<std::string, std::string>& constants() const { return constants_; }

  void fail(const std::string& what);
  bool expect(bool cond, const std::string& what) {
    if (!cond) fail(what);
    return cond;
  }
  template <class T>
  bool equal(const T& a, const T& b, const std::string& what) {
    if (a == b) return true;
    if constexpr (requires { (a - b).to_string(); })
      fail(what + ": residual " + (a - b).to_string());
    else if constexpr (requires { a.to_string(); })
      fail(what + ": got " + a.to_string() + ", expected " + b.to_string());
    else
      fail(what);
    return false;
  }
  void record(const std::string& key, const std::string& value) { constants_[key] = value; }

 private:
  bool ok_ = true;
  std::string witness_;
  std::map<std::string, std::string> constants_;
};

TractorSlots random_slots(int n, int k, Rng& rng);
GSection random_gsection(int n, int k, int w, Rng& rng);
// d of a random form, or a nonzero constant for k = 0
BaseForm random_closed(int n, int k, Rng& rng);

// grad of a weighted density as a 1-form
BaseForm gradient(const ScaleContext& ctx, const BaseForm& f, int w);

LinearDiffOp flat_d_op(int n, int k);
LinearDiffOp flat_delta_op(int n, int k);
// (delta d)^m on k-forms, by composition of probed first-order operators
LinearDiffOp delta_d_power(int n, int k, int m);

// |xi|^{2(m-1)} iota(xi) eps(xi) on k-forms, built directly from the
// exterior algebra (the symbol of (delta d)^m)
Symbol delta_d_symbol(int n, int k, int m);
// c with a = c b, when the symbols have equal order and parity
std::optional<Rational> symbol_ratio(const Symbol& a, const Symbol& b);
// rank of the stacked symbol matrices at the covector xi, on k-forms
size_t stacked_symbol_rank(const std::vector<const Symbol*>& symbols, int n, int k, const std::vector<Rational>& xi);

}  // namespace conformal
