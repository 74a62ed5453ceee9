#include "scalar/expr_json.hpp"

namespace conformal {

using nlohmann::json;

std::vector<std::string> variable_names(int n) {
  std::vector<std::string> names(kMaxVars);
  for (int i = 0; i < kMaxVars; ++i) names[i] = "v" + std::to_string(i);
  names[0] = "xp";
  for (int i = 1; i <= n; ++i) names[i] = "x" + std::to_string(i);
  if (n + 1 < kMaxVars) names[n + 1] = "xm";
  for (int a = 1; kXiOffset + a < kMaxVars && a <= n; ++a) names[kXiOffset + a] = "xi" + std::to_string(a);
  return names;
}

int variable_index(const std::string& name, int n) {
  auto names = variable_names(n);
  for (int i = 0; i < kMaxVars; ++i)
    if (names[i] == name) return i;
  return -1;
}

namespace {

json rat(const Rational& q) { return json{{"op", "rat"}, {"value", q.get_str()}}; }

json power_of(json base, int e) {
  if (e == 1) return base;
  return json{{"op", "pow"}, {"base", std::move(base)}, {"exp", e}};
}

json sum_of(std::vector<json> args) {
  if (args.empty()) return rat(Rational(0));
  if (args.size() == 1) return args[0];
  return json{{"op", "+"}, {"args", std::move(args)}};
}

json product_of(std::vector<json> args) {
  if (args.empty()) return rat(Rational(1));
  if (args.size() == 1) return args[0];
  return json{{"op", "*"}, {"args", std::move(args)}};
}

json poly_json(const Poly& p, const std::vector<std::string>& names) {
  std::vector<json> terms;
  for (auto& [m, c] : p.terms()) {
    std::vector<json> fs;
    if (c != 1 || m.is_one()) fs.push_back(rat(c));
    for (int i = 0; i < kMaxVars; ++i)
      if (m[i]) fs.push_back(power_of(json{{"op", "var"}, {"name", names[i]}}, m[i]));
    terms.push_back(product_of(std::move(fs)));
  }
  return sum_of(std::move(terms));
}

}  // namespace

json expr_to_json(const ScalarExpr& e, int n) {
  auto names = variable_names(n);
  std::vector<json> parts;
  for (auto& [p, r] : e.parts()) {
    std::vector<json> fs;
    if (p != 0) fs.push_back(power_of(json{{"op", "var"}, {"name", "t"}}, p));
    fs.push_back(poly_json(r.num(), names));
    for (auto& [f, ex] : r.den()) fs.push_back(power_of(poly_json(f, names), -ex));
    parts.push_back(product_of(std::move(fs)));
  }
  return sum_of(std::move(parts));
}

ScalarExpr expr_from_json(const json& j, int n, FactorPtr factor) {
  if (!j.is_object() || !j.contains("op")) throw ExprParseError("expression node must be an object with \"op\"");
  std::string op = j.at("op").get<std::string>();
  if (op == "rat") {
    std::string v = j.at("value").is_string() ? j.at("value").get<std::string>()
                                              : std::to_string(j.at("value").get<long long>());
    Rational q;
    if (q.set_str(v, 10) != 0 || q.get_den() == 0) throw ExprParseError("bad rational literal: " + v);
    q.canonicalize();
    return ScalarExpr(q);
  }
  if (op == "var") {
    std::string name = j.at("name").get<std::string>();
    if (name == "t") {
      if (!factor) throw ExprParseError("t used without a conformal factor");
      return ScalarExpr::t_power(1, factor);
    }
    int idx = variable_index(name, n);
    if (idx < 0) throw ExprParseError("unknown variable: " + name);
    return ScalarExpr::var(idx);
  }
  if (op == "+" || op == "*") {
    const json& args = j.at("args");
    if (!args.is_array()) throw ExprParseError("args must be an array");
    ScalarExpr acc(Rational(op == "+" ? 0 : 1));
    for (auto& a : args) {
      ScalarExpr x = expr_from_json(a, n, factor);
      if (op == "+") acc += x;
      else acc *= x;
    }
    return acc;
  }
  if (op == "pow") {
    ScalarExpr b = expr_from_json(j.at("base"), n, factor);
    int e = j.at("exp").get<int>();
    if (e < 0 && b.is_zero()) throw ExprParseError("negative power of zero");
    return b.pow(e);
  }
  throw ExprParseError("unknown op: " + op);
}

}  // namespace conformal
