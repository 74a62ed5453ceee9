#include "algebra/rewriter.hpp"

#include <stdexcept>

#include "ambient/operators.hpp"

namespace conformal {

const GenInfo& gen_info(Gen g) {
  static const GenInfo table[kNumGens] = {
      {"Q", "Q", 0, 2, false},          {"ε(X)", "eps_X", 1, 2, true},   {"Δ", "Lap", 0, -2, false},
      {"d", "d", 1, 0, true},           {"δ", "delta", -1, -2, true},    {"ι(X)", "iota_X", -1, 0, true},
      {"ℒ_X", "L_X", 0, 0, false},      {"ℒ_X*", "L_X_star", 0, 0, false},
  };
  return table[static_cast<int>(g)];
}

int word_degree_shift(const Word& w) {
  int s = 0;
  for (Gen g : w) s += gen_info(g).degree_shift;
  return s;
}

int word_weight_shift(const Word& w) {
  int s = 0;
  for (Gen g : w) s += gen_info(g).weight_shift;
  return s;
}

AlgebraElement AlgebraElement::gen(Gen g) { return word({g}); }
AlgebraElement AlgebraElement::scalar(const Coeff& c) { return word({}, c); }
AlgebraElement AlgebraElement::word(const Word& w, const Coeff& c) {
  AlgebraElement e;
  e.add(w, c);
  return e;
}

void AlgebraElement::add(const Word& w, const Coeff& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) { return *this += -o; }

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out;
  for (auto& [wa, ca] : a.terms_)
    for (auto& [wb, cb] : b.terms_) {
      // a's coefficients refer to the platform produced by wb
      Coeff c = coeff_shift(ca, word_weight_shift(wb), word_degree_shift(wb)) * cb;
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add(w, c);
    }
  return out;
}

AlgebraElement AlgebraElement::scaled(const Coeff& c) const {
  AlgebraElement out;
  for (auto& [w, x] : terms_) out.add(w, x * c);
  return out;
}

AlgebraElement AlgebraElement::power(int m) const {
  AlgebraElement out = scalar(coeff_const(1));
  for (int i = 0; i < m; ++i) out = *this * out;
  return out;
}

std::optional<int> AlgebraElement::parity() const {
  std::optional<int> p;
  for (auto& [w, c] : terms_) {
    int q = 0;
    for (Gen g : w) q ^= gen_info(g).odd ? 1 : 0;
    if (p && *p != q) return std::nullopt;
    p = q;
  }
  return p.value_or(0);
}

std::string AlgebraElement::to_string(bool ascii) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto& [w, c] : terms_) {
    std::string cs = coeff_to_string(c);
    bool simple = c.size() == 1;
    bool neg = simple && cs[0] == '-';
    if (!s.empty()) s += neg ? " - " : " + ";
    else if (neg) s += "-";
    if (neg) cs = cs.substr(1);
    std::string ws;
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) ws += ascii ? "." : "∘";
      ws += ascii ? gen_info(w[i]).ascii : gen_info(w[i]).symbol;
    }
    if (ws.empty()) {
      s += simple ? cs : "(" + cs + ")";
    } else if (cs == "1") {
      s += ws;
    } else {
      s += (simple ? cs : "(" + cs + ")") + " " + ws;
    }
  }
  return s;
}

namespace {

struct Extra {
  long c;
  Gen g;
};

struct Rule {
  bool defined = false;
  int swap_sign = 0;  // 0: the word vanishes (odd square)
  std::vector<Extra> extras;
};

// rules[a][b] for the adjacent pair a b with a > b, or a == b odd
const Rule& rule_for(Gen a, Gen b) {
  static const auto table = [] {
    std::vector<std::vector<Rule>> t(kNumGens, std::vector<Rule>(kNumGens));
    auto set = [&](Gen a, Gen b, int sign, std::vector<Extra> ex) {
      t[int(a)][int(b)] = Rule{true, sign, std::move(ex)};
    };
    using G = Gen;
    for (Gen g : {G::EpsX, G::D, G::Delta, G::IotaX}) set(g, g, 0, {});
    set(G::D, G::EpsX, -1, {});
    set(G::IotaX, G::EpsX, -1, {{1, G::Q}});
    set(G::Delta, G::EpsX, -1, {{1, G::LXs}});
    set(G::Lap, G::Q, 1, {{-2, G::LX}, {2, G::LXs}});
    set(G::D, G::Q, 1, {{2, G::EpsX}});
    set(G::Lap, G::EpsX, 1, {{-2, G::D}});
    set(G::Delta, G::D, -1, {{1, G::Lap}});
    set(G::IotaX, G::D, -1, {{1, G::LX}});
    set(G::IotaX, G::Delta, -1, {});
    set(G::IotaX, G::Lap, 1, {{-2, G::Delta}});
    set(G::Delta, G::Lap, 1, {});
    set(G::D, G::Lap, 1, {});
    set(G::EpsX, G::Q, 1, {});
    set(G::IotaX, G::Q, 1, {});
    set(G::Delta, G::Q, 1, {{-2, G::IotaX}});
    return t;
  }();
  return table[int(a)][int(b)];
}

bool is_lie(Gen g) { return g == Gen::LX || g == Gen::LXs; }

// Kinds of redex: a Lie letter at i, or a rule pair at (i, i+1).
std::vector<size_t> redexes(const Word& w) {
  std::vector<size_t> out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (is_lie(w[i])) {
      out.push_back(i);
      continue;
    }
    if (i + 1 < w.size() && !is_lie(w[i + 1]) && rule_for(w[i], w[i + 1]).defined) out.push_back(i);
  }
  return out;
}

std::string rule_name(const Word& w, size_t i) {
  if (is_lie(w[i])) return std::string(gen_info(w[i]).ascii) + "->scalar";
  return std::string(gen_info(w[i]).ascii) + "." + gen_info(w[i + 1]).ascii;
}

// Scalar by which the Lie letter at i acts, as a polynomial in the platform (n, w, k).
Coeff lie_scalar(const Word& w, size_t i) {
  Word suffix(w.begin() + i + 1, w.end());
  Coeff W = coeff_var(kVarW) + coeff_const(word_weight_shift(suffix));
  Coeff K = coeff_var(kVarK) + coeff_const(word_degree_shift(suffix));
  if (w[i] == Gen::LX) return W;
  // L_X* = L_X - K_X with K_X = n + 2W - 2k + 2
  return -W - coeff_var(kVarN) + K * Rational(2) - coeff_const(2);
}

// One rewrite of term (c, w) at redex i, appended to out.
void rewrite_at(const Coeff& c, const Word& w, size_t i, std::vector<std::pair<Coeff, Word>>& out) {
  if (is_lie(w[i])) {
    Word r = w;
    r.erase(r.begin() + i);
    out.emplace_back(c * lie_scalar(w, i), std::move(r));
    return;
  }
  const Rule& rule = rule_for(w[i], w[i + 1]);
  if (rule.swap_sign != 0) {
    Word r = w;
    std::swap(r[i], r[i + 1]);
    out.emplace_back(c * Rational(rule.swap_sign), std::move(r));
  }
  for (auto& ex : rule.extras) {
    Word r(w.begin(), w.begin() + i);
    r.push_back(ex.g);
    r.insert(r.end(), w.begin() + i + 2, w.end());
    out.emplace_back(c * Rational(ex.c), std::move(r));
  }
}

template <class Pick>
AlgebraElement normalize(const AlgebraElement& e, Pick pick, std::vector<TraceStep>* trace) {
  AlgebraElement out;
  std::vector<std::pair<Coeff, Word>> stack;
  for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it) stack.emplace_back(it->second, it->first);
  while (!stack.empty()) {
    auto [c, w] = std::move(stack.back());
    stack.pop_back();
    if (c.is_zero()) continue;
    auto rs = redexes(w);
    if (rs.empty()) {
      out.add(w, c);
      continue;
    }
    size_t i = pick(rs);
    if (trace) trace->push_back({rule_name(w, i), i});
    std::vector<std::pair<Coeff, Word>> next;
    rewrite_at(c, w, i, next);
    for (auto it = next.rbegin(); it != next.rend(); ++it) stack.push_back(std::move(*it));
  }
  return out;
}

}  // namespace

AlgebraElement normal_form(const AlgebraElement& e, std::vector<TraceStep>* trace) {
  return normalize(e, [](const std::vector<size_t>& rs) { return rs.front(); }, trace);
}

AlgebraElement normal_form_random(const AlgebraElement& e, Rng& rng) {
  return normalize(
      e, [&](const std::vector<size_t>& rs) { return rs[static_cast<size_t>(rng.range(0, long(rs.size()) - 1))]; },
      nullptr);
}

bool is_normal(const AlgebraElement& e) {
  for (auto& [w, c] : e.terms())
    if (!redexes(w).empty()) return false;
  return true;
}

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b, bool graded) {
  int sign = 1;
  if (graded) {
    auto pa = a.parity(), pb = b.parity();
    if (!pa || !pb) throw std::invalid_argument("graded bracket of mixed-parity elements");
    if (*pa && *pb) sign = -1;
  }
  AlgebraElement ba = b * a;
  return normal_form(a * b - (sign < 0 ? -ba : ba));
}

AlgebraElement derive_power_commutator(int m) {
  if (m < 1 || m > 12) throw std::out_of_range("power commutator exponent out of range");
  AlgebraElement lap = AlgebraElement::gen(Gen::Lap);
  return bracket(lap.power(m), AlgebraElement::gen(Gen::Q), false);
}

AlgebraElement expected_power_commutator(int m) {
  Coeff v = coeff_var(kVarW) - coeff_var(kVarK);
  Coeff c = (v * Rational(2) + coeff_const(4 - 2 * m) + coeff_var(kVarN)) * Rational(-2 * m);
  return AlgebraElement::gen(Gen::Lap).power(m - 1).scaled(c);
}

AlgebraElement jacobi_defect(Gen a, Gen b, Gen c) {
  auto A = AlgebraElement::gen(a), B = AlgebraElement::gen(b), C = AlgebraElement::gen(c);
  int sab = gen_info(a).odd && gen_info(b).odd ? -1 : 1;
  AlgebraElement lhs = bracket(A, bracket(B, C, true), true);
  AlgebraElement r1 = bracket(bracket(A, B, true), C, true);
  AlgebraElement r2 = bracket(B, bracket(A, C, true), true);
  return normal_form(lhs - r1 - (sab < 0 ? -r2 : r2));
}

AmbientForm evaluate(const AlgebraElement& e, const AmbientForm& F) {
  if (!F.weight()) throw WeightMissing("evaluation needs a weighted form");
  AmbientForm out(F.n(), F.degree());
  bool first = true;
  for (auto& [w, c] : e.terms()) {
    Rational s = coeff_eval(c, F.n(), *F.weight(), F.degree());
    AmbientForm G = F;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      G = op_named(gen_info(*it).ascii)(G);
      if (G.is_zero()) break;
    }
    if (first) {
      out = AmbientForm(F.n(), F.degree() + word_degree_shift(w));
      first = false;
    }
    out += G * s;
  }
  out.set_weight(std::nullopt);
  return out;
}

Word random_word(Rng& rng, int max_len, bool include_lie) {
  int len = static_cast<int>(rng.range(1, max_len));
  int top = include_lie ? kNumGens - 1 : 5;
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(gen_from_index(static_cast<int>(rng.range(0, top))));
  return w;
}

}  // namespace conformal
