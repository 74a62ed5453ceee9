#pragma once

#include <string>
#include <vector>

#include "ambient/operators.hpp"
#include "ambient/random_forms.hpp"

namespace conformal {

struct CheckResult {
  bool pass = true;
  int trials = 0;
  std::string witness;  // empty on pass
};

enum class BracketKind { Anti, Comm };

// Evaluates {a,b} or [a,b] minus `expected` on random mixed-weight forms of
// degrees min_degree..max_degree.
CheckResult check_bracket(const AmbientOperator& a, const AmbientOperator& b, BracketKind kind,
                          const AmbientOperator& expected, int n, int trials, uint64_t seed, int min_degree = 0,
                          int max_degree = 3);

// lhs(F) == rhs(F) exactly (or modulo Q when mod_q) on forms produced by gen.
CheckResult check_identity(const AmbientOperator& lhs, const AmbientOperator& rhs, int trials, uint64_t seed,
                           const std::function<AmbientForm(int trial, Rng&)>& gen, bool mod_q = false);

struct BracketEntry {
  std::string id;
  std::string a, b;
  BracketKind kind;
  AmbientOperator expected;
};
// The sixteen anticommutators of the odd generators.
std::vector<BracketEntry> anticommutator_table();
// The sixteen commutators [even, odd] and the sixteen [even, even].
std::vector<BracketEntry> commutator_table();
std::vector<BracketEntry> even_commutator_table();

// Empirical scalar by which K_X acts on k-forms of L_X-weight w.
inline int k_x_scalar(int n, int k, int w) { return n + 2 * w - 2 * k + 2; }
// L_X-weight of a k-form whose tractor (nabla_X) weight is w.
inline int lie_weight(int k, int w_nabla) { return w_nabla + k; }

// P tangential on k-forms of nabla_X-weight w: P(Q U) vanishes on the cone
// for random U of nabla_X-weight w - 2.
CheckResult is_tangential(const AmbientOperator& P, int n, int k, int w_nabla, int trials, uint64_t seed);

std::string describe_residual(const AmbientForm& r);

}  // namespace conformal
