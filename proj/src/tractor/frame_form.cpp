#include "tractor/frame_form.hpp"

#include <stdexcept>

#include "scalar/expr_json.hpp"

namespace conformal {

namespace {

int parity_sign(int count) { return (count & 1) ? -1 : 1; }

// sign of e^P ^ e^j relative to the sorted monomial
int append_sign(Mask p, int j) { return parity_sign(popcount(p >> (j + 1))); }

std::string frame_name(int i, int n) {
  int block = i / (n + 2), r = i % (n + 2);
  std::string s = r == 0 ? "Y" : r == n + 1 ? "X" : "Z" + std::to_string(r);
  return block ? s + "'" : s;
}

}  // namespace

int FrameForm::coefficient_weight(Mask m) const {
  int w = weight_;
  for (int b = 0; b < blocks_; ++b) {
    Mask part = m >> (b * (n_ + 2));
    w += (has_bit(part, 0) ? 1 : 0) + popcount(part & z_mask()) - (has_bit(part, n_ + 1) ? 1 : 0);
  }
  return w;
}

FrameForm FrameForm::from_slots(const TractorSlots& s, int weight) {
  const int n = s.mu.n();
  const int k = s.mu.degree();
  FrameForm v(n, k, weight);
  const Mask y = bit(0), x = bit(n + 1);
  for (auto& [b, f] : s.alpha.components()) v.add(y | b, f);
  for (auto& [b, f] : s.mu.components()) v.add(b, f);
  for (auto& [b, f] : s.phi.components()) v.add(y | x | b, parity_sign(popcount(b)) < 0 ? -f : f);
  for (auto& [b, f] : s.rho.components()) v.add(x | b, parity_sign(popcount(b)) < 0 ? -f : f);
  return v;
}

TractorSlots FrameForm::slots() const {
  if (blocks_ != 1) throw std::invalid_argument("slots of a two-block tractor");
  TractorSlots s(n_, degree_);
  const Mask zm = z_mask();
  for (auto& [m, f] : comps_) {
    Mask b = m & zm;
    bool y = has_bit(m, 0), x = has_bit(m, n_ + 1);
    bool neg = parity_sign(popcount(b)) < 0;
    if (y && !x) s.alpha.add(b, f);
    else if (!y && !x) s.mu.add(b, f);
    else if (y && x) s.phi.add(b, neg ? -f : f);
    else s.rho.add(b, neg ? -f : f);
  }
  return s;
}

ScalarExpr FrameForm::get(Mask m) const {
  auto it = comps_.find(m);
  return it == comps_.end() ? ScalarExpr() : it->second;
}

void FrameForm::set(Mask m, ScalarExpr v) {
  if (v.is_zero())
    comps_.erase(m);
  else
    comps_[m] = std::move(v);
}

void FrameForm::add(Mask m, const ScalarExpr& v) {
  if (v.is_zero()) return;
  if (popcount(m) != degree_) throw std::invalid_argument("frame monomial of wrong degree");
  auto it = comps_.find(m);
  if (it == comps_.end()) {
    comps_.emplace(m, v);
    return;
  }
  it->second += v;
  if (it->second.is_zero()) comps_.erase(it);
}

void FrameForm::add_scaled(const FrameForm& o, const ScalarExpr& c) {
  if (c.is_zero()) return;
  for (auto& [m, f] : o.comps_) add(m, f * c);
}

FrameForm FrameForm::operator-() const {
  FrameForm r = *this;
  for (auto& [m, f] : r.comps_) f = -f;
  return r;
}

FrameForm& FrameForm::operator+=(const FrameForm& o) {
  if (!o.is_zero() && (o.degree_ != degree_ || o.weight_ != weight_) && !is_zero())
    throw std::invalid_argument("adding tractors of different type");
  if (is_zero()) {
    degree_ = o.degree_;
    weight_ = o.weight_;
    blocks_ = o.blocks_;
  }
  for (auto& [m, f] : o.comps_) add(m, f);
  return *this;
}

FrameForm& FrameForm::operator-=(const FrameForm& o) { return *this += -o; }

FrameForm& FrameForm::operator*=(const ScalarExpr& f) {
  Components next;
  if (!f.is_zero())
    for (auto& [m, g] : comps_) {
      ScalarExpr p = g * f;
      if (!p.is_zero()) next.emplace(m, std::move(p));
    }
  comps_ = std::move(next);
  return *this;
}

FrameForm& FrameForm::operator*=(const Rational& c) {
  if (c == 0) comps_.clear();
  for (auto& [m, g] : comps_) g *= c;
  return *this;
}

std::string FrameForm::to_string() const {
  if (comps_.empty()) return "0";
  auto names = variable_names(n_);
  std::string s;
  for (auto& [m, f] : comps_) {
    if (!s.empty()) s += " + ";
    s += "(" + f.to_string(names) + ")";
    for (int i : mask_indices(m)) s += " " + frame_name(i, n_);
  }
  return s;
}

nlohmann::json FrameForm::to_json() const {
  nlohmann::json comps = nlohmann::json::object();
  for (auto& [m, f] : comps_) {
    std::string key;
    for (int i : mask_indices(m)) {
      if (!key.empty()) key += ",";
      key += frame_name(i, n_);
    }
    comps[key] = expr_to_json(f, n_);
  }
  nlohmann::json j = {{"degree", degree_}, {"weight", weight_}, {"components", comps}};
  if (blocks_ != 1) j["blocks"] = blocks_;
  return j;
}

FrameForm apply_derivation(const FrameForm& v, const FrameMap& images) {
  FrameForm out(v.n(), v.degree(), v.weight(), v.blocks());
  for (auto& [m, f] : v.components())
    for (int i : mask_indices(m)) {
      Mask rest = m & ~bit(i);
      int si = insertion_sign(rest, i);
      for (auto& [j, c] : images[i]) {
        if (has_bit(rest, j)) continue;
        ScalarExpr g = c * f;
        out.add(rest | bit(j), si * insertion_sign(rest, j) < 0 ? -g : g);
      }
    }
  return out;
}

FrameForm apply_automorphism(const FrameForm& v, const FrameMap& images) {
  FrameForm out(v.n(), v.degree(), v.weight(), v.blocks());
  for (auto& [m, f] : v.components()) {
    std::map<Mask, ScalarExpr> acc{{0, f}};
    for (int i : mask_indices(m)) {
      std::map<Mask, ScalarExpr> next;
      for (auto& [p, g] : acc)
        for (auto& [j, c] : images[i]) {
          if (has_bit(p, j)) continue;
          ScalarExpr h = g * c;
          if (append_sign(p, j) < 0) h = -h;
          auto [it, fresh] = next.emplace(p | bit(j), h);
          if (!fresh) it->second += h;
        }
      acc = std::move(next);
    }
    for (auto& [p, g] : acc) out.add(p, g);
  }
  return out;
}

FrameMap frame_change_map(int n, const BaseForm& upsilon) {
  FrameMap images(n + 2);
  const int x = n + 1;
  ScalarExpr norm;
  images[0].push_back({0, ScalarExpr(1L)});
  for (int b = 1; b <= n; ++b) {
    ScalarExpr u = upsilon.get(bit(b));
    images[b].push_back({b, ScalarExpr(1L)});
    if (!u.is_zero()) {
      images[b].push_back({x, -u});
      images[0].push_back({b, u});
      norm += u * u;
    }
  }
  if (!norm.is_zero()) images[0].push_back({x, norm * Rational(-1, 2)});
  images[x].push_back({x, ScalarExpr(1L)});
  return images;
}

FrameMap replicate(const FrameMap& one_block, int n, int blocks) {
  FrameMap out(blocks * (n + 2));
  for (int b = 0; b < blocks; ++b)
    for (int i = 0; i < n + 2; ++i)
      for (auto& [j, c] : one_block[i]) out[b * (n + 2) + i].push_back({b * (n + 2) + j, c});
  return out;
}

FrameForm change_frame(const FrameForm& v, const BaseForm& upsilon) {
  return apply_automorphism(v, replicate(frame_change_map(v.n(), upsilon), v.n(), v.blocks()));
}

TractorSlots transform_slots(const TractorSlots& s, const BaseForm& upsilon) {
  const BaseForm& u = upsilon;
  TractorSlots t(s.mu.n(), s.mu.degree());
  t.alpha = s.alpha;
  t.mu = s.mu + wedge(u, s.alpha);
  t.phi = s.phi - interior(u, s.alpha);
  BaseForm ei = wedge(u, interior(u, s.alpha));
  BaseForm ie = interior(u, wedge(u, s.alpha));
  t.rho = s.rho - interior(u, t.mu) - wedge(u, t.phi) - Rational(1, 2) * (ei - ie);
  return t;
}

ScalarExpr tractor_metric(const FrameForm& a, const FrameForm& b) {
  const int x = a.n() + 1;
  ScalarExpr out;
  for (auto& [m, f] : a.components()) {
    Mask partner = m;
    if (has_bit(m, 0) != has_bit(m, x)) partner ^= bit(0) | bit(x);
    ScalarExpr g = b.get(partner);
    if (g.is_zero()) continue;
    // sign of the permutation sorting the partners: a transposition when both
    // Y and X occur, otherwise a cyclic shift past the Z factors
    int sign = has_bit(m, 0) && has_bit(m, x) ? -1 : parity_sign(popcount(m & a.z_mask()));
    if (!has_bit(m, 0) && !has_bit(m, x)) sign = 1;
    ScalarExpr p = f * g;
    out += sign < 0 ? -p : p;
  }
  return out;
}

FrameForm insert_bit(const FrameForm& v, int i, int weight) {
  FrameForm out(v.n(), v.degree() + 1, weight, v.blocks());
  for (auto& [m, f] : v.components()) {
    if (has_bit(m, i)) continue;
    out.add(m | bit(i), insertion_sign(m, i) < 0 ? -f : f);
  }
  return out;
}

FrameForm remove_bit(const FrameForm& v, int i, int weight) {
  FrameForm out(v.n(), v.degree() - 1, weight, v.blocks());
  for (auto& [m, f] : v.components()) {
    if (!has_bit(m, i)) continue;
    Mask r = m & ~bit(i);
    out.add(r, insertion_sign(r, i) < 0 ? -f : f);
  }
  return out;
}

FrameForm eps_x(const FrameForm& v, int block) { return insert_bit(v, v.x_bit(block), v.weight() + 1); }

FrameForm iota_x(const FrameForm& v, int block) { return remove_bit(v, v.y_bit(block), v.weight() + 1); }

}  // namespace conformal
