#include "factory/continuation.hpp"

#include <cstdlib>

#include "ambient/operators.hpp"

#ifndef CONFORMAL_SOURCE_GOLDEN_DIR
#define CONFORMAL_SOURCE_GOLDEN_DIR "tests/golden"
#endif

namespace conformal {

namespace {

Rational power_of_two(int e) {
  Rational r(1);
  for (int i = 0; i < std::abs(e); ++i) r *= 2;
  return e >= 0 ? r : Rational(1) / r;
}

Rational lagrange_at(const std::vector<std::pair<int, Rational>>& pts, int x) {
  Rational total(0);
  for (size_t i = 0; i < pts.size(); ++i) {
    Rational term = pts[i].second;
    for (size_t j = 0; j < pts.size(); ++j)
      if (j != i) term *= Rational(x - pts[j].first) / Rational(pts[i].first - pts[j].first);
    total += term;
  }
  return total;
}

}  // namespace

RatFunc round_sphere_factor(int n) {
  Poly r2;
  for (int a = 1; a <= n; ++a) r2 += Poly::var(a, 2);
  return RatFunc(Poly(Rational(2))) / RatFunc(Poly(Rational(1)) + r2);
}

Rational continuation_sample(int N, int l) {
  const int w = l - N / 2;
  if (N % 2 || N < 2) throw OutOfRange("continuation samples need an even dimension");
  if (w == 0) throw OutOfRange("the sample at w = 0 carries no information");
  RatFunc sigma = RatFunc(Poly::var(0) - Poly::var(N + 1) * Rational(2)) * RatFunc(Rational(1, 2));
  AmbientForm G = ambient_K(l)(AmbientForm::scalar(N, ScalarExpr(sigma.pow(w)), w));
  ScalarExpr v = G.get(0).substitute(0, ScalarExpr(1L));
  for (int i = 1; i <= N + 1; ++i) v = v.substitute(i, ScalarExpr());
  // the origin of the section sits at sigma = 1/2; rescale to sigma = 1
  return v.constant_value() * power_of_two(w - 2 * l) / Rational(2 * w * (l + 1));
}

ContinuationResult q0_round_sphere_by_continuation(int n) {
  if (n % 2 || n < 4) throw OutOfRange("continuation needs an even dimension n >= 4");
  ContinuationResult r;
  r.n = n;
  r.l = n / 2;
  int N = 2;
  auto next = [&] {
    if (N == n) N += 2;
    int cur = N;
    N += 2;
    return std::make_pair(cur, continuation_sample(cur, r.l));
  };
  // ambient dimension is capped by the variable budget
  const int extra = 1, max_samples = (kMaxVars - 2) / 2 - 1;
  for (r.degree = 2 * r.l; r.degree + 1 + extra <= max_samples; ++r.degree) {
    while (static_cast<int>(r.samples.size()) < r.degree + 1 + extra) r.samples.push_back(next());
    std::vector<std::pair<int, Rational>> fit(r.samples.begin(), r.samples.begin() + r.degree + 1);
    r.consistent = true;
    for (size_t i = r.degree + 1; i < r.samples.size(); ++i)
      if (lagrange_at(fit, r.samples[i].first) != r.samples[i].second) r.consistent = false;
    if (r.consistent) {
      r.m_value = lagrange_at(fit, n);
      r.q_value = q_normalization(n, 0) * r.m_value;
      return r;
    }
  }
  return r;
}

ScalarExpr q0_round_sphere_field(int n) {
  auto ctx = ScaleContext::from_exp_omega(n, round_sphere_factor(n));
  return apply_Q(ctx, 0, BaseForm::scalar(n, ScalarExpr(1L))).coeff();
}

std::optional<Rational> q0_round_sphere_direct(int n) {
  ScalarExpr in_sphere = ScalarExpr(round_sphere_factor(n).pow(-n)) * q0_round_sphere_field(n);
  if (!in_sphere.is_constant()) return std::nullopt;
  return in_sphere.constant_value();
}

std::string golden_dir() {
  if (const char* env = std::getenv("CONFORMAL_GOLDEN_DIR"); env && *env) return env;
  return CONFORMAL_SOURCE_GOLDEN_DIR;
}

std::string golden_path(const std::string& name) { return golden_dir() + "/" + name; }

}  // namespace conformal
