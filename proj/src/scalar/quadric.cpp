#include "scalar/quadric.hpp"

#include <algorithm>
#include <stdexcept>

namespace conformal {

QuadricContext::QuadricContext(int n) : n_(n) {
  if (n < 1 || n + 2 > kMaxVars) throw std::invalid_argument("unsupported dimension");
  for (int i = 1; i <= n; ++i) r2_ += Poly::var(i, 2);
  q_ = Poly::var(0) * Poly::var(n + 1) * Rational(2) + r2_;
  xminus_on_cone_ = RatFunc(r2_ * Rational(-1, 2)) * RatFunc::var(0, -1);
}

int QuadricContext::h(int a, int b) const {
  if (a == 0) return b == n_ + 1 ? 1 : 0;
  if (a == n_ + 1) return b == 0 ? 1 : 0;
  return a == b ? 1 : 0;
}

int QuadricContext::partner(int a) const {
  if (a == 0) return n_ + 1;
  if (a == n_ + 1) return 0;
  return a;
}

RatFunc QuadricContext::reduce_mod_quadric(const RatFunc& e) const {
  const int m = n_ + 1;
  bool touches = e.num().max_degree_in(m) != 0 || e.num().min_degree_in(m) != 0;
  for (auto& [f, ex] : e.den())
    if (f.max_degree_in(m) != 0) touches = true;
  if (!touches) return e;
  RatFunc num = RatFunc(e.num()).substitute(m, xminus_on_cone_);
  RatFunc out = num;
  for (auto& [f, ex] : e.den()) {
    RatFunc fr = RatFunc(f).substitute(m, xminus_on_cone_);
    if (fr.is_zero()) throw DenominatorOnCone("denominator vanishes on the cone");
    out = out / fr.pow(ex);
  }
  return out;
}

ScalarExpr QuadricContext::reduce_mod_quadric(const ScalarExpr& e) const {
  ScalarExpr out;
  for (auto& [p, r] : e.parts()) {
    ScalarExpr piece(reduce_mod_quadric(r));
    if (p != 0) piece = piece * ScalarExpr::t_power(p, e.factor());
    out += piece;
  }
  return out;
}

RatFunc QuadricContext::restrict_to_base(const RatFunc& e) const {
  RatFunc r = reduce_mod_quadric(e);
  return r.substitute(0, RatFunc(Rational(1)));
}

namespace {

// y^b -> x^b (x+)^{shift - |b|}; returns the total x+ shift needed to make
// the result a polynomial when every term has degree <= top.
Poly homogenize(const Poly& p, int shift) {
  std::vector<Poly::Term> terms;
  terms.reserve(p.size());
  for (auto& [m, c] : p.terms()) {
    Monomial h = m;
    int deg = 0;
    for (int i = 1; i < kMaxVars; ++i) deg += m[i];
    h[0] = static_cast<int8_t>(h[0] + shift - deg);
    terms.emplace_back(h, c);
  }
  return Poly::from_terms(std::move(terms));
}

int max_total_degree(const Poly& p) {
  int top = 0;
  for (auto& [m, c] : p.terms()) top = std::max(top, m.total_degree());
  return top;
}

}  // namespace

RatFunc QuadricContext::extend_from_base(const RatFunc& f, int w) const {
  if (f.num().max_degree_in(0) != 0 || f.num().min_degree_in(0) != 0)
    throw std::invalid_argument("base function depends on x+");
  std::vector<RatFunc::Factor> den;
  int shift = w;
  for (auto& [g, e] : f.den()) {
    int top = max_total_degree(g);
    den.emplace_back(homogenize(g, top), e);
    shift += top * e;
  }
  return RatFunc::make(homogenize(f.num(), shift), den);
}

}  // namespace conformal
