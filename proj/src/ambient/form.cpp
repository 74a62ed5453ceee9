#include "ambient/form.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <sstream>

#include "ambient/operators.hpp"
#include "scalar/expr_json.hpp"

namespace conformal {

const QuadricContext& quadric_context(int n) {
  static std::mutex mu;
  static std::array<std::unique_ptr<QuadricContext>, kMaxVars> cache;
  if (n < 1 || n + 2 > kMaxVars) throw std::invalid_argument("unsupported dimension");
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[n]) cache[n] = std::make_unique<QuadricContext>(n);
  return *cache[n];
}

AmbientForm AmbientForm::scalar(int n, const ScalarExpr& f, std::optional<int> weight) {
  AmbientForm F(n, 0, weight);
  F.set(0, f);
  return F;
}

ScalarExpr AmbientForm::get(Mask m) const {
  auto it = comps_.find(m);
  return it == comps_.end() ? ScalarExpr() : it->second;
}

void AmbientForm::set(Mask m, ScalarExpr value) {
  if (popcount(m) != degree_) throw std::logic_error("component index does not match form degree");
  if (value.is_zero()) comps_.erase(m);
  else comps_[m] = std::move(value);
}

void AmbientForm::add(Mask m, const ScalarExpr& value) {
  if (value.is_zero()) return;
  auto it = comps_.find(m);
  if (it == comps_.end()) {
    if (popcount(m) != degree_) throw std::logic_error("component index does not match form degree");
    comps_.emplace(m, value);
    return;
  }
  it->second += value;
  if (it->second.is_zero()) comps_.erase(it);
}

AmbientForm AmbientForm::operator-() const {
  AmbientForm r = *this;
  for (auto& [m, c] : r.comps_) c = -c;
  return r;
}

AmbientForm& AmbientForm::operator+=(const AmbientForm& o) {
  if (o.comps_.empty()) return *this;
  if (comps_.empty()) degree_ = o.degree_;
  if (degree_ != o.degree_) throw std::logic_error("adding forms of different degree");
  if (weight_ != o.weight_) weight_.reset();
  for (auto& [m, c] : o.comps_) add(m, c);
  return *this;
}

AmbientForm& AmbientForm::operator-=(const AmbientForm& o) { return *this += -o; }

AmbientForm& AmbientForm::operator*=(const Rational& c) {
  if (c == 0) comps_.clear();
  for (auto& [m, x] : comps_) x *= c;
  return *this;
}

AmbientForm& AmbientForm::operator*=(const ScalarExpr& f) {
  for (auto it = comps_.begin(); it != comps_.end();) {
    it->second *= f;
    if (it->second.is_zero()) it = comps_.erase(it);
    else ++it;
  }
  weight_.reset();
  return *this;
}

AmbientForm AmbientForm::reduce_mod_quadric() const {
  AmbientForm r(n_, degree_, weight_);
  const auto& q = ctx();
  for (auto& [m, c] : comps_) r.set(m, q.reduce_mod_quadric(c));
  return r;
}

bool AmbientForm::verify_weight(int w) const {
  AmbientForm lx = lie_X(*this);
  return lx == *this * Rational(w);
}

AmbientForm& AmbientForm::assert_weight(int w) {
  if (!verify_weight(w)) throw WeightMismatch("form is not homogeneous of the asserted weight");
  weight_ = w;
  return *this;
}

std::string mask_name(Mask m, int n) {
  auto names = variable_names(n);
  std::string s;
  for (int a : mask_indices(m)) {
    if (!s.empty()) s += "^";
    s += "d" + names[a];
  }
  return s.empty() ? "1" : s;
}

std::string AmbientForm::to_string() const {
  if (comps_.empty()) return "0";
  auto names = variable_names(n_);
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : comps_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string(names) << ")";
    if (m) os << " " << mask_name(m, n_);
  }
  return os.str();
}

nlohmann::json AmbientForm::to_json() const {
  nlohmann::json j;
  j["degree"] = degree_;
  if (weight_) j["weight"] = *weight_;
  nlohmann::json comps = nlohmann::json::object();
  for (auto& [m, c] : comps_) {
    std::string key;
    for (int a : mask_indices(m)) {
      if (!key.empty()) key += ",";
      key += std::to_string(a);
    }
    comps[key] = expr_to_json(c, n_);
  }
  j["components"] = comps;
  return j;
}

AmbientForm AmbientForm::from_json(const nlohmann::json& j, int n) {
  AmbientForm F(n, j.at("degree").get<int>());
  if (j.contains("weight")) F.weight_ = j.at("weight").get<int>();
  for (auto& [key, val] : j.at("components").items()) {
    Mask m = 0;
    std::stringstream ss(key);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) m |= bit(std::stoi(tok));
    F.set(m, expr_from_json(val, n));
  }
  return F;
}

}  // namespace conformal
