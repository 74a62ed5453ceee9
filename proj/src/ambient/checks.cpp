#include "ambient/checks.hpp"

#include "scalar/expr_json.hpp"

namespace conformal {

std::string describe_residual(const AmbientForm& r) {
  if (r.is_zero()) return "";
  auto it = r.components().begin();
  return "component " + mask_name(it->first, r.n()) + " residual " + it->second.to_string(variable_names(r.n()));
}

CheckResult check_identity(const AmbientOperator& lhs, const AmbientOperator& rhs, int trials, uint64_t seed,
                           const std::function<AmbientForm(int, Rng&)>& gen, bool mod_q) {
  CheckResult res;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Rng sub = rng.fork(t);
    AmbientForm F = gen(t, sub);
    AmbientForm r = lhs(F) - rhs(F);
    if (mod_q) r = r.reduce_mod_quadric();
    ++res.trials;
    if (!r.is_zero()) {
      res.pass = false;
      res.witness = "trial " + std::to_string(t) + " degree " + std::to_string(F.degree()) + ": " + describe_residual(r);
      return res;
    }
  }
  return res;
}

CheckResult check_bracket(const AmbientOperator& a, const AmbientOperator& b, BracketKind kind,
                          const AmbientOperator& expected, int n, int trials, uint64_t seed, int min_degree,
                          int max_degree) {
  AmbientOperator ab = a.compose(b), ba = b.compose(a);
  AmbientOperator br = kind == BracketKind::Anti ? ab + ba : ab - ba;
  RandomFormOptions opt;
  opt.max_components = 6;
  auto gen = [&](int t, Rng& rng) {
    int k = min_degree + t % (max_degree - min_degree + 1);
    return random_mixed_form(n, k, rng, opt);
  };
  return check_identity(br, expected, trials, seed, gen);
}

namespace {

AmbientOperator scaled(const std::string& name, long c) { return op_named(name).scaled(Rational(c)); }

}  // namespace

std::vector<BracketEntry> anticommutator_table() {
  const std::vector<std::string> odd = {"d", "delta", "eps_X", "iota_X"};
  // row-major {a, b}
  const char* expected[4][4] = {{"0", "Lap", "0", "L_X"},
                                {"Lap", "0", "L_X_star", "0"},
                                {"0", "L_X_star", "0", "Q"},
                                {"L_X", "0", "Q", "0"}};
  std::vector<BracketEntry> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::string e = expected[i][j];
      AmbientOperator op = e == "0" ? op_zero() : op_named(e);
      out.push_back({"anti{" + odd[i] + "," + odd[j] + "}", odd[i], odd[j], BracketKind::Anti, op});
    }
  return out;
}

std::vector<BracketEntry> commutator_table() {
  const std::vector<std::string> even = {"Lap", "L_X", "L_X_star", "Q"};
  const std::vector<std::string> odd = {"d", "delta", "eps_X", "iota_X"};
  struct E {
    const char* name;
    long c;
  };
  const E expected[4][4] = {{{"0", 0}, {"0", 0}, {"d", -2}, {"delta", 2}},
                            {{"0", 0}, {"delta", -2}, {"eps_X", 2}, {"0", 0}},
                            {{"d", 2}, {"0", 0}, {"0", 0}, {"iota_X", -2}},
                            {{"eps_X", -2}, {"iota_X", 2}, {"0", 0}, {"0", 0}}};
  std::vector<BracketEntry> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const E& e = expected[i][j];
      AmbientOperator op = e.c == 0 ? op_zero() : scaled(e.name, e.c);
      out.push_back({"comm[" + even[i] + "," + odd[j] + "]", even[i], odd[j], BracketKind::Comm, op});
    }
  return out;
}

std::vector<BracketEntry> even_commutator_table() {
  const std::vector<std::string> even = {"Lap", "L_X", "L_X_star", "Q"};
  struct E {
    const char* name;
    long c;
  };
  const E expected[4][4] = {{{"0", 0}, {"Lap", 2}, {"Lap", -2}, {"K_X", -2}},
                            {{"Lap", -2}, {"0", 0}, {"0", 0}, {"Q", 2}},
                            {{"Lap", 2}, {"0", 0}, {"0", 0}, {"Q", -2}},
                            {{"K_X", 2}, {"Q", -2}, {"Q", 2}, {"0", 0}}};
  std::vector<BracketEntry> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const E& e = expected[i][j];
      AmbientOperator op = e.c == 0 ? op_zero() : scaled(e.name, e.c);
      out.push_back({"comm[" + even[i] + "," + even[j] + "]", even[i], even[j], BracketKind::Comm, op});
    }
  return out;
}

CheckResult is_tangential(const AmbientOperator& P, int n, int k, int w_nabla, int trials, uint64_t seed) {
  CheckResult res;
  Rng rng(seed);
  RandomFormOptions opt;
  opt.max_components = 4;
  opt.max_poly_degree = 8;
  opt.terms = 3;
  const int lw = lie_weight(k, w_nabla - 2);
  for (int t = 0; t < trials; ++t) {
    Rng sub = rng.fork(t);
    AmbientForm U = random_form(n, k, lw, sub, opt);
    AmbientForm r = P(mul_Q(U)).reduce_mod_quadric();
    ++res.trials;
    if (!r.is_zero()) {
      res.pass = false;
      res.witness = "trial " + std::to_string(t) + ": " + describe_residual(r);
      return res;
    }
  }
  return res;
}

}  // namespace conformal
