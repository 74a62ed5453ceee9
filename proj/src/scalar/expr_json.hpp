#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "scalar/scalar_expr.hpp"

namespace conformal {

// Variable naming shared by the whole library: index 0 is "xp", indices
// 1..n are "x1".."xn", index n+1 is "xm".  Base coordinates reuse x1..xn.
// Symbol variables (used for principal symbols) live at kXiOffset + a.
inline constexpr int kXiOffset = 10;

std::vector<std::string> variable_names(int n);
// -1 when the name is unknown
int variable_index(const std::string& name, int n);

// {"op":"rat","value":"p/q"}, {"op":"var","name":..}, {"op":"+"|"*","args":[..]},
// {"op":"pow","base":..,"exp":int}.  The name "t" denotes the conformal unit.
nlohmann::json expr_to_json(const ScalarExpr& e, int n);
ScalarExpr expr_from_json(const nlohmann::json& j, int n, FactorPtr factor = nullptr);

struct ExprParseError : ScalarError {
  using ScalarError::ScalarError;
};

}  // namespace conformal
