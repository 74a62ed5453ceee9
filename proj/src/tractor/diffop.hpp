#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "tractor/base_form.hpp"
#include "util/rng.hpp"

namespace conformal {

// Exponents of d/dy^1 .. d/dy^n (entry 0 unused).
using MultiIndex = std::vector<int>;

// Linear differential operator between form bundles on the base patch:
//   (L u)_N = sum_{M, beta} c_{N,M,beta} d^beta u_M
// over sorted multi-indices N (output) and M (input).  Weights are metadata.
class LinearDiffOp {
 public:
  using Key = std::tuple<Mask, Mask, MultiIndex>;  // out, in, beta
  using Terms = std::map<Key, ScalarExpr>;
  using Action = std::function<BaseForm(const BaseForm&)>;

  LinearDiffOp(int n, int in_degree, int out_degree) : n_(n), in_degree_(in_degree), out_degree_(out_degree) {}

  // Recovers the coefficients of an operator of order at most max_order
  // from its action on y^beta/beta! e^M.
  static LinearDiffOp probe(int n, int in_degree, int out_degree, int max_order, const Action& op);
  static LinearDiffOp identity(int n, int degree);
  static LinearDiffOp multiplication(int n, int degree, const ScalarExpr& f);

  int n() const { return n_; }
  int in_degree() const { return in_degree_; }
  int out_degree() const { return out_degree_; }
  int in_weight = 0, out_weight = 0;
  const Terms& terms() const { return terms_; }
  void add(const Key& k, const ScalarExpr& c);
  bool is_zero() const { return terms_.empty(); }
  int order() const;  // -1 for the zero operator

  BaseForm apply(const BaseForm& u) const;

  LinearDiffOp operator-() const;
  LinearDiffOp& operator+=(const LinearDiffOp& o);
  LinearDiffOp& operator-=(const LinearDiffOp& o);
  friend LinearDiffOp operator+(LinearDiffOp a, const LinearDiffOp& b) { return a += b; }
  friend LinearDiffOp operator-(LinearDiffOp a, const LinearDiffOp& b) { return a -= b; }
  LinearDiffOp scaled(const ScalarExpr& c) const;
  LinearDiffOp scaled(const Rational& c) const { return scaled(ScalarExpr(RatFunc(c))); }
  // this o other
  LinearDiffOp compose(const LinearDiffOp& other) const;
  bool operator==(const LinearDiffOp& o) const {
    return terms_ == o.terms_ && in_degree_ == o.in_degree_ && out_degree_ == o.out_degree_;
  }
  bool operator!=(const LinearDiffOp& o) const { return !(*this == o); }

  // Integration by parts for the pairing sum_M int u_M v_M.
  LinearDiffOp formal_adjoint() const;

  // If this == c * o for a constant c, returns c.
  std::optional<Rational> constant_multiple_of(const LinearDiffOp& o) const;
  // nullopt when some coefficient is not constant
  bool has_constant_coefficients() const;

  nlohmann::json to_json() const;
  std::string to_string() const;

 private:
  int n_, in_degree_, out_degree_;
  Terms terms_;
};

// Principal symbol: d_a -> i xi_a on the top-order part.  The entries hold
// i^m sum c_beta xi^beta when the order m is even; for odd m the stored
// entries are i^{m-1} sum c_beta xi^beta and `imaginary` records the extra i.
// xi_a is the variable kXiOffset + a.
struct Symbol {
  int order = -1;
  bool imaginary = false;
  std::map<std::pair<Mask, Mask>, ScalarExpr> entries;  // (out, in)
  bool operator==(const Symbol& o) const = default;
};
Symbol principal_symbol(const LinearDiffOp& op);
// matrix product, with the i bookkeeping
Symbol symbol_product(const Symbol& a, const Symbol& b);
// |xi|^{2p} times the identity on k-forms
Symbol xi_power_identity(int n, int k, int p);
Symbol symbol_scaled(const Symbol& s, const Rational& c);

// Applies random inputs to both and compares exactly.
bool agrees_on_random(const LinearDiffOp& op, const LinearDiffOp::Action& f, int trials, Rng& rng);

}  // namespace conformal
