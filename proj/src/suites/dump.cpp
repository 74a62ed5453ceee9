#include <fstream>

#include "factory/continuation.hpp"
#include "scalar/expr_json.hpp"
#include "suites/checks_common.hpp"
#include "suites/suites.hpp"
#include "tractor/weighted.hpp"

namespace conformal {

namespace {

void record_multiple(Report& rep, const std::string& key, const LinearDiffOp& op, const LinearDiffOp& model) {
  if (auto c = op.constant_multiple_of(model)) rep.constants[key] = c->get_str();
}

void check(Report& rep, const std::string& id, bool ok, const std::string& witness = "") {
  rep.checks.push_back({id, ok, 0, ok ? "" : witness});
}

ScaleContext context_for(const BuildRequest& req) {
  return req.scale ? ScaleContext::from_json(*req.scale, req.n) : ScaleContext::flat(req.n);
}

void add_field(Report& rep, const ScaleContext& ctx, const ScalarExpr& field, int weight) {
  const int n = ctx.n();
  rep.extra["field"] = expr_to_json(field, n);
  auto names = variable_names(n);
  std::string text = "field (flat trivialization): " + field.to_string(names);
  if (ctx.factor() && ctx.factor()->exp_omega) {
    ScalarExpr own = ScalarExpr(ctx.factor()->exp_omega->pow(weight)) * field;
    rep.extra["field_in_scale"] = expr_to_json(own, n);
    text += "\nfield (own trivialization): " + own.to_string(names);
    check(rep, "field.constant", own.is_constant(), "not constant in its own trivialization");
    if (own.is_constant()) {
      rep.constants["Q_0 1"] = own.constant_value().get_str();
      if (*ctx.factor()->exp_omega == round_sphere_factor(n)) {
        std::ifstream in(golden_path("q0_round_sphere.json"));
        bool ok = false;
        std::string why = "missing golden file " + golden_path("q0_round_sphere.json");
        if (in.good()) {
          auto golden = nlohmann::json::parse(in);
          auto key = std::to_string(n);
          if (golden.contains("values") && golden["values"].contains(key)) {
            Rational g(golden["values"][key].get<std::string>());
            ok = g == own.constant_value();
            why = "golden value " + g.get_str();
          } else {
            why = "no golden value for n=" + key;
          }
        }
        check(rep, "golden.q0_round_sphere", ok, why);
      }
    }
  }
  rep.extra["field_text"] = text;
}

}  // namespace

Report build_operator(const BuildRequest& req) {
  const int n = req.n;
  if (n % 2 || n < 4) throw OutOfRange("the factory needs an even dimension n >= 4");
  Report rep;
  rep.name = "build:" + req.name;
  rep.n = n;
  rep.k = req.k;
  const int k = req.k;
  LinearDiffOp op(n, 0, 0);

  if (req.name == "L") {
    const int l = critical_l(n, k);
    if (k > n / 2 - 1) throw OutOfRange("L_k needs 0 <= k <= n/2 - 1");
    if (req.l && *req.l != l) throw OutOfRange("L_k is defined at l = n/2 - k");
    rep.l = l;
    op = build_L(n, k);
    record_multiple(rep, "L_" + std::to_string(k) + " / (delta d)^" + std::to_string(l), op, delta_d_power(n, k, l));
    check(rep, "self_adjoint", op.formal_adjoint() == op);
    if (req.scale) rep.notes.push_back("L_k does not depend on the scale; the flat realization is dumped");
  } else if (req.name == "Q" || req.name == "M") {
    const int l = critical_l(n, k);
    rep.l = l;
    auto ctx = context_for(req);
    op = req.name == "Q" ? build_Q(ctx, k) : build_M(ctx, k);
    rep.constants["q_normalization"] = q_normalization(n, k).get_str();
    if (k == n / 2) record_multiple(rep, req.name + "_" + std::to_string(k), op, LinearDiffOp::identity(n, k));
    if (k == n / 2) check(rep, "constant", op.order() == 0 && rep.constants.count(req.name + "_" + std::to_string(k)));
    if (k == 0 && req.name == "Q") {
      BaseForm field = apply_Q(ctx, 0, BaseForm::scalar(n, ScalarExpr(1L)));
      add_field(rep, ctx, field.coeff(), -n);
    }
  } else if (req.name == "G") {
    rep.l = critical_l(n, k);
    auto ctx = context_for(req);
    GaugeOperator g = build_G(ctx, k);
    op = g.op;
    rep.extra["trivial"] = g.trivial;
    if (n == 4 && k == 1) {
      auto es = LinearDiffOp::probe(n, 1, 0, 3, [&](const BaseForm& u) { return eastwood_singer(ctx, u); });
      record_multiple(rep, "G_1 / Eastwood-Singer", op, es);
    }
  } else if (req.name == "K") {
    const int l = req.l ? *req.l : critical_l(n, k);
    if (l < 0 || l > 4) throw OutOfRange("K_l is dumped for 0 <= l <= 4");
    if (k < 0 || k > n) throw OutOfRange("form degree out of range");
    rep.l = l;
    const int w = l - n / 2 + k;
    DescendedOperator K = build_K(n, l, k, w);
    op = K.restricted();
    rep.extra["source"] = {{"degree", K.source_degree}, {"weight", K.source_weight}};
    rep.extra["target"] = {{"degree", K.target_degree}, {"weight", K.target_weight}};
    auto ext = K.check_extension_independence(2, 1);
    check(rep, "extension_independent", ext.pass, ext.witness);
  } else {
    throw std::invalid_argument("unknown operator " + req.name + " (expected L, Q, G, M or K)");
  }
  rep.extra["operator"] = op.to_json();
  std::string text = op.to_string();
  if (rep.extra.contains("field_text")) text += "\n" + rep.extra["field_text"].get<std::string>();
  rep.extra.erase("field_text");
  rep.extra["operator_text"] = text;
  rep.canonicalize();
  return rep;
}

}  // namespace conformal
