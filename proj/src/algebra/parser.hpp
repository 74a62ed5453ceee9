#pragma once

#include <stdexcept>
#include <string>

#include "algebra/rewriter.hpp"

namespace conformal {

struct WordParseError : std::runtime_error {
  WordParseError(size_t pos, const std::string& msg)
      : std::runtime_error("parse error at column " + std::to_string(pos) + ": " + msg), position(pos) {}
  size_t position;  // 0-based code point offset
};

// Grammar (UTF-8, whitespace ignored):
//   sum     := ['+'|'-'] product (('+'|'-') product)*
//   product := factor (('∘'|'.'|'*') factor)*
//   factor  := atom ['^' int]
//   atom    := generator | int | 'n' | 'w' | 'k' | '(' sum ')'
//            | '[' sum ',' sum ']'    commutator
//            | '{' sum ',' sum '}'    anticommutator
// Generators accept unicode and ASCII spellings: d, δ|delta, ε(X)|eps_X,
// ι(X)|iota_X, Δ|Lap, ℒ_X|L_X, ℒ_X*|L_X_star, Q, K_X, ε(𝔻)|eps_D, ι(𝔻)|iota_D.
// K_X, ε(𝔻) and ι(𝔻) are expanded into their defining composites.
AlgebraElement parse_word(const std::string& text);

}  // namespace conformal
