#include "suites/checks_common.hpp"

#include "scalar/expr_json.hpp"
#include "tractor/weighted.hpp"

namespace conformal {

void Verdict::fail(const std::string& what) {
  if (!ok_) return;
  ok_ = false;
  constexpr size_t kMax = 600;
  witness_ = what.size() > kMax ? what.substr(0, kMax) + "..." : what;
}

TractorSlots random_slots(int n, int k, Rng& rng) {
  TractorSlots s(n, k);
  s.alpha = random_base_form(n, k - 1, rng);
  s.mu = random_base_form(n, k, rng);
  s.phi = random_base_form(n, k - 2, rng);
  s.rho = random_base_form(n, k - 1, rng);
  return s;
}

GSection random_gsection(int n, int k, int w, Rng& rng) {
  GSection F(n, k, w);
  F.alpha = random_base_form(n, k - 1, rng);
  F.mu = random_base_form(n, k, rng);
  return F;
}

BaseForm random_closed(int n, int k, Rng& rng) {
  if (k == 0) return BaseForm::scalar(n, ScalarExpr(Rational(rng.nonzero(5))));
  return flat_d(random_base_form(n, k - 1, rng, 3));
}

BaseForm gradient(const ScaleContext& ctx, const BaseForm& f, int w) {
  auto g = lc_nabla(ctx, f, w);
  std::vector<ScalarExpr> c;
  for (int a = 1; a <= ctx.n(); ++a) c.push_back(g[a].coeff());
  return BaseForm::one_form(ctx.n(), c);
}

LinearDiffOp flat_d_op(int n, int k) { return LinearDiffOp::probe(n, k, k + 1, 1, flat_d); }
LinearDiffOp flat_delta_op(int n, int k) { return LinearDiffOp::probe(n, k, k - 1, 1, flat_delta); }

LinearDiffOp delta_d_power(int n, int k, int m) {
  LinearDiffOp dd = flat_delta_op(n, k + 1).compose(flat_d_op(n, k));
  LinearDiffOp p = dd;
  for (int i = 1; i < m; ++i) p = p.compose(dd);
  return p;
}

Symbol delta_d_symbol(int n, int k, int m) {
  auto xi = [](int a) { return ScalarExpr::var(kXiOffset + a); };
  ScalarExpr norm;
  for (int a = 1; a <= n; ++a) norm += xi(a) * xi(a);
  ScalarExpr scale(1L);
  for (int i = 1; i < m; ++i) scale *= norm;
  Symbol s;
  s.order = 2 * m;
  for (Mask in : subsets(1, n, k)) {
    BaseForm e(n, k);
    e.set(in, ScalarExpr(1L));
    BaseForm out(n, k);
    for (int a = 1; a <= n; ++a) {
      BaseForm ea = eps_basis(a, e);
      for (int b = 1; b <= n; ++b) out += (xi(a) * xi(b)) * iota_basis(b, ea);
    }
    for (auto& [o, c] : out.components()) s.entries[{o, in}] = scale * c;
  }
  return s;
}

std::optional<Rational> symbol_ratio(const Symbol& a, const Symbol& b) {
  if (a.order != b.order || a.imaginary != b.imaginary || b.entries.empty()) return std::nullopt;
  auto& [key, be] = *b.entries.begin();
  auto it = a.entries.find(key);
  if (it == a.entries.end()) return std::nullopt;
  const auto& bt = be.rational().num().terms().front();
  std::optional<Rational> c;
  for (auto& [m, v] : it->second.rational().num().terms())
    if (m == bt.first) c = v / bt.second;
  if (!c || symbol_scaled(b, *c) != a) return std::nullopt;
  return c;
}

size_t stacked_symbol_rank(const std::vector<const Symbol*>& symbols, int n, int k, const std::vector<Rational>& xi) {
  auto eval = [&](ScalarExpr e) {
    for (int a = 1; a <= n; ++a) e = e.substitute(kXiOffset + a, ScalarExpr(xi[static_cast<size_t>(a - 1)]));
    return e.constant_value();
  };
  auto in_masks = subsets(1, n, k);
  std::vector<std::vector<Rational>> rows;
  for (const Symbol* s : symbols) {
    std::map<Mask, std::vector<Rational>> by_out;
    for (auto& [key, e] : s->entries) {
      auto& row = by_out[key.first];
      if (row.empty()) row.assign(in_masks.size(), Rational(0));
      for (size_t j = 0; j < in_masks.size(); ++j)
        if (in_masks[j] == key.second) row[j] = eval(e);
    }
    for (auto& [o, row] : by_out) rows.push_back(row);
  }
  size_t rank = 0;
  for (size_t c = 0; c < in_masks.size() && rank < rows.size(); ++c) {
    size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r][c] != 0) {
        Rational f = rows[r][c] / rows[rank][c];
        for (size_t j = 0; j < in_masks.size(); ++j) rows[r][j] -= f * rows[rank][j];
      }
    ++rank;
  }
  return rank;
}

}  // namespace conformal
