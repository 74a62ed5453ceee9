#include "tractor/diffop.hpp"

#include <numeric>

#include "scalar/expr_json.hpp"
#include "tractor/random_base.hpp"

namespace conformal {

namespace {

int total(const MultiIndex& b) { return std::accumulate(b.begin(), b.end(), 0); }

// all multi-indices of total degree exactly d over coordinates 1..n
void indices_of_degree(int n, int d, int from, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (from > n) {
    if (d == 0) out.push_back(cur);
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur[from] = e;
    indices_of_degree(n, d - e, from + 1, cur, out);
  }
  cur[from] = 0;
}

std::vector<MultiIndex> indices_up_to(int n, int m) {
  std::vector<MultiIndex> out;
  MultiIndex cur(n + 1, 0);
  for (int d = 0; d <= m; ++d) indices_of_degree(n, d, 1, cur, out);
  return out;
}

Rational factorial(int k) {
  Rational r(1);
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

Rational multi_factorial(const MultiIndex& b) {
  Rational r(1);
  for (int e : b) r *= factorial(e);
  return r;
}

Rational binom(const MultiIndex& a, const MultiIndex& g) {
  Rational r = multi_factorial(a);
  MultiIndex d(a.size());
  for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - g[i];
  return r / (multi_factorial(g) * multi_factorial(d));
}

bool leq(const MultiIndex& g, const MultiIndex& b) {
  for (size_t i = 0; i < b.size(); ++i)
    if (g[i] > b[i]) return false;
  return true;
}

MultiIndex minus(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex d(a.size());
  for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

MultiIndex plus(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex d(a.size());
  for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] + b[i];
  return d;
}

ScalarExpr monomial(const MultiIndex& b) {
  Monomial m;
  for (size_t i = 1; i < b.size(); ++i) m[static_cast<int>(i)] = static_cast<int8_t>(b[i]);
  return ScalarExpr(Poly::mono(m, Rational(1)));
}

ScalarExpr d_beta(const ScalarExpr& f, const MultiIndex& b) {
  ScalarExpr g = f;
  for (size_t i = 1; i < b.size() && !g.is_zero(); ++i)
    for (int e = 0; e < b[i]; ++e) g = g.derivative(static_cast<int>(i));
  return g;
}

ScalarExpr xi_monomial(const MultiIndex& b) {
  Monomial m;
  for (size_t i = 1; i < b.size(); ++i) m[kXiOffset + static_cast<int>(i)] = static_cast<int8_t>(b[i]);
  return ScalarExpr(Poly::mono(m, Rational(1)));
}

std::string mask_string(Mask m) {
  std::string s;
  for (int a : mask_indices(m)) s += (s.empty() ? "" : ",") + std::to_string(a);
  return "[" + s + "]";
}

}  // namespace

void LinearDiffOp::add(const Key& k, const ScalarExpr& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

int LinearDiffOp::order() const {
  int m = -1;
  for (auto& [k, c] : terms_) m = std::max(m, total(std::get<2>(k)));
  return m;
}

LinearDiffOp LinearDiffOp::probe(int n, int in_degree, int out_degree, int max_order, const Action& op) {
  LinearDiffOp out(n, in_degree, out_degree);
  auto betas = indices_up_to(n, max_order);
  for (Mask in : subsets(1, n, in_degree)) {
    std::vector<std::pair<MultiIndex, std::pair<Mask, ScalarExpr>>> known;
    for (auto& beta : betas) {
      BaseForm u(n, in_degree);
      u.set(in, monomial(beta) * (Rational(1) / multi_factorial(beta)));
      BaseForm r = op(u);
      for (auto& [g, nc] : known) {
        if (!leq(g, beta)) continue;
        MultiIndex d = minus(beta, g);
        r.add(nc.first, -(nc.second * monomial(d)) * (Rational(1) / multi_factorial(d)));
      }
      for (auto& [outm, c] : r.components()) {
        out.add({outm, in, beta}, c);
        known.push_back({beta, {outm, c}});
      }
    }
  }
  return out;
}

LinearDiffOp LinearDiffOp::identity(int n, int degree) { return multiplication(n, degree, ScalarExpr(1L)); }

LinearDiffOp LinearDiffOp::multiplication(int n, int degree, const ScalarExpr& f) {
  LinearDiffOp out(n, degree, degree);
  for (Mask m : subsets(1, n, degree)) out.add({m, m, MultiIndex(n + 1, 0)}, f);
  return out;
}

BaseForm LinearDiffOp::apply(const BaseForm& u) const {
  BaseForm out(n_, out_degree_);
  for (auto& [k, c] : terms_) {
    auto& [outm, in, beta] = k;
    ScalarExpr v = u.get(in);
    if (v.is_zero()) continue;
    out.add(outm, c * d_beta(v, beta));
  }
  return out;
}

LinearDiffOp LinearDiffOp::operator-() const { return scaled(Rational(-1)); }

LinearDiffOp& LinearDiffOp::operator+=(const LinearDiffOp& o) {
  if (o.in_degree_ != in_degree_ || o.out_degree_ != out_degree_) throw std::invalid_argument("operator shapes differ");
  for (auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

LinearDiffOp& LinearDiffOp::operator-=(const LinearDiffOp& o) { return *this += -o; }

LinearDiffOp LinearDiffOp::scaled(const ScalarExpr& c) const {
  LinearDiffOp out(n_, in_degree_, out_degree_);
  out.in_weight = in_weight;
  out.out_weight = out_weight;
  for (auto& [k, v] : terms_) out.add(k, v * c);
  return out;
}

LinearDiffOp LinearDiffOp::compose(const LinearDiffOp& other) const {
  if (other.out_degree_ != in_degree_) throw std::invalid_argument("operators do not compose");
  LinearDiffOp out(n_, other.in_degree_, out_degree_);
  out.in_weight = other.in_weight;
  out.out_weight = out_weight;
  for (auto& [ka, ca] : terms_) {
    auto& [p, na, alpha] = ka;
    for (auto& [kb, cb] : other.terms_) {
      auto& [nb, m, beta] = kb;
      if (nb != na) continue;
      for (auto& gamma : indices_up_to(n_, total(alpha))) {
        if (!leq(gamma, alpha)) continue;
        ScalarExpr dc = d_beta(cb, minus(alpha, gamma));
        if (dc.is_zero()) continue;
        out.add({p, m, plus(beta, gamma)}, ca * dc * binom(alpha, gamma));
      }
    }
  }
  return out;
}

LinearDiffOp LinearDiffOp::formal_adjoint() const {
  LinearDiffOp out(n_, out_degree_, in_degree_);
  out.in_weight = out_weight;
  out.out_weight = in_weight;
  for (auto& [k, c] : terms_) {
    auto& [outm, in, beta] = k;
    Rational sign = (total(beta) % 2) ? Rational(-1) : Rational(1);
    for (auto& gamma : indices_up_to(n_, total(beta))) {
      if (!leq(gamma, beta)) continue;
      ScalarExpr dc = d_beta(c, minus(beta, gamma));
      if (dc.is_zero()) continue;
      out.add({in, outm, gamma}, dc * (sign * binom(beta, gamma)));
    }
  }
  return out;
}

bool LinearDiffOp::has_constant_coefficients() const {
  for (auto& [k, c] : terms_)
    if (!c.is_constant()) return false;
  return true;
}

std::optional<Rational> LinearDiffOp::constant_multiple_of(const LinearDiffOp& o) const {
  if (o.is_zero()) return is_zero() ? std::optional<Rational>(Rational(0)) : std::nullopt;
  auto& [k, c] = *o.terms_.begin();
  auto it = terms_.find(k);
  if (it == terms_.end()) return is_zero() ? std::optional<Rational>(Rational(0)) : std::nullopt;
  ScalarExpr ratio = it->second / c;
  if (!ratio.is_constant()) return std::nullopt;
  Rational r = ratio.constant_value();
  if (*this != o.scaled(r)) return std::nullopt;
  return r;
}

nlohmann::json LinearDiffOp::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (auto& [k, c] : terms_) {
    auto& [outm, in, beta] = k;
    nlohmann::json b = nlohmann::json::array();
    for (int a = 1; a <= n_; ++a) b.push_back(beta[a]);
    terms.push_back({{"out", mask_indices(outm)}, {"in", mask_indices(in)}, {"multi_index", b}, {"coeff", expr_to_json(c, n_)}});
  }
  return {{"n", n_},
          {"source", {{"degree", in_degree_}, {"weight", in_weight}}},
          {"target", {{"degree", out_degree_}, {"weight", out_weight}}},
          {"order", order()},
          {"terms", terms}};
}

std::string LinearDiffOp::to_string() const {
  if (terms_.empty()) return "0";
  auto names = variable_names(n_);
  std::string s;
  for (auto& [k, c] : terms_) {
    auto& [outm, in, beta] = k;
    if (!s.empty()) s += "\n";
    s += mask_string(outm) + " <- " + mask_string(in) + " d^(";
    for (int a = 1; a <= n_; ++a) s += (a > 1 ? "," : "") + std::to_string(beta[a]);
    s += ") : " + c.to_string(names);
  }
  return s;
}

Symbol principal_symbol(const LinearDiffOp& op) {
  Symbol s;
  s.order = op.order();
  if (s.order < 0) return s;
  int m = s.order;
  s.imaginary = m % 2 == 1;
  int real_power = s.imaginary ? m - 1 : m;
  Rational sign = (real_power / 2) % 2 ? Rational(-1) : Rational(1);
  for (auto& [k, c] : op.terms()) {
    auto& [outm, in, beta] = k;
    if (total(beta) != m) continue;
    auto key = std::make_pair(outm, in);
    ScalarExpr v = c * xi_monomial(beta) * sign;
    auto it = s.entries.find(key);
    if (it == s.entries.end())
      s.entries.emplace(key, v);
    else
      it->second += v;
  }
  for (auto it = s.entries.begin(); it != s.entries.end();)
    it = it->second.is_zero() ? s.entries.erase(it) : std::next(it);
  return s;
}

Symbol symbol_product(const Symbol& a, const Symbol& b) {
  Symbol s;
  if (a.order < 0 || b.order < 0) return s;
  s.order = a.order + b.order;
  s.imaginary = a.imaginary != b.imaginary;
  Rational sign = a.imaginary && b.imaginary ? Rational(-1) : Rational(1);
  for (auto& [ka, va] : a.entries)
    for (auto& [kb, vb] : b.entries) {
      if (ka.second != kb.first) continue;
      auto key = std::make_pair(ka.first, kb.second);
      ScalarExpr v = va * vb * sign;
      auto it = s.entries.find(key);
      if (it == s.entries.end())
        s.entries.emplace(key, v);
      else
        it->second += v;
    }
  for (auto it = s.entries.begin(); it != s.entries.end();)
    it = it->second.is_zero() ? s.entries.erase(it) : std::next(it);
  return s;
}

Symbol xi_power_identity(int n, int k, int p) {
  Symbol s;
  s.order = 2 * p;
  ScalarExpr norm;
  for (int a = 1; a <= n; ++a) norm += ScalarExpr::var(kXiOffset + a, 2);
  ScalarExpr v = norm.pow(p);
  for (Mask m : subsets(1, n, k)) s.entries.emplace(std::make_pair(m, m), v);
  return s;
}

Symbol symbol_scaled(const Symbol& s, const Rational& c) {
  Symbol out = s;
  if (c == 0) {
    out.entries.clear();
    return out;
  }
  for (auto& [k, v] : out.entries) v *= c;
  return out;
}

bool agrees_on_random(const LinearDiffOp& op, const LinearDiffOp::Action& f, int trials, Rng& rng) {
  for (int t = 0; t < trials; ++t) {
    BaseForm u = random_base_form(op.n(), op.in_degree(), rng, std::max(2, op.order() + 2));
    if (op.apply(u) != f(u)) return false;
  }
  return true;
}

}  // namespace conformal
