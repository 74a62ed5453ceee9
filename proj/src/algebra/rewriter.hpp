#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebra/coeff.hpp"
#include "ambient/form.hpp"
#include "util/rng.hpp"

namespace conformal {

// Declaration order is the canonical word order; L_X and L_X* come last and
// never survive normalization.
enum class Gen : uint8_t { Q, EpsX, Lap, D, Delta, IotaX, LX, LXs };
inline constexpr int kNumGens = 8;

struct GenInfo {
  const char* symbol;  // unicode display
  const char* ascii;   // matches op_named
  int degree_shift;
  int weight_shift;  // on L_X-weights
  bool odd;
};
const GenInfo& gen_info(Gen g);
inline Gen gen_from_index(int i) { return static_cast<Gen>(i); }

using Word = std::vector<Gen>;

// Finite sum of coefficient * word.  A coefficient is a polynomial in the
// (n, w, k) of the platform the whole word is applied to.
class AlgebraElement {
 public:
  using Terms = std::map<Word, Coeff>;

  AlgebraElement() = default;
  static AlgebraElement gen(Gen g);
  static AlgebraElement scalar(const Coeff& c);
  static AlgebraElement word(const Word& w, const Coeff& c = coeff_const(1));

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const Word& w, const Coeff& c);

  AlgebraElement operator-() const;
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  // composition a o b (b acts first)
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  // multiplies coefficients; c is read on the input platform
  AlgebraElement scaled(const Coeff& c) const;
  AlgebraElement power(int m) const;
  bool operator==(const AlgebraElement& o) const { return terms_ == o.terms_; }
  bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

  // 0 even, 1 odd, nullopt for mixed parity
  std::optional<int> parity() const;

  std::string to_string(bool ascii = false) const;

 private:
  Terms terms_;
};

int word_degree_shift(const Word& w);
int word_weight_shift(const Word& w);

struct TraceStep {
  std::string rule;
  size_t position;
  bool operator==(const TraceStep&) const = default;
};

AlgebraElement normal_form(const AlgebraElement& e, std::vector<TraceStep>* trace = nullptr);
// Applies rewrite rules at randomly chosen redexes.
AlgebraElement normal_form_random(const AlgebraElement& e, Rng& rng);
bool is_normal(const AlgebraElement& e);

// ab - (-1)^{|a||b|} ba when graded, ab - ba otherwise; normalized.
AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b, bool graded);

// Normal form of [Lap^m, Q].
AlgebraElement derive_power_commutator(int m);
// -2m(2v - 2m + n + 4) Lap^{m-1} with v = w - k the nabla_X weight.
AlgebraElement expected_power_commutator(int m);

// [a,[b,c]] - [[a,b],c] - (-1)^{|a||b|}[b,[a,c]] in normal form.
AlgebraElement jacobi_defect(Gen a, Gen b, Gen c);

// Applies e to a weighted form, evaluating coefficients at (n, weight, degree).
AmbientForm evaluate(const AlgebraElement& e, const AmbientForm& F);

// Words over the six surviving generators, uniformly random of length 1..max_len.
Word random_word(Rng& rng, int max_len, bool include_lie = true);

}  // namespace conformal
