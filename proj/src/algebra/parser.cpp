#include "algebra/parser.hpp"

#include <cctype>
#include <utility>
#include <vector>

namespace conformal {

namespace {

using E = AlgebraElement;

E g(Gen x) { return E::gen(x); }

E k_x() { return g(Gen::LX) - g(Gen::LXs); }

E eps_D() { return g(Gen::D) * (k_x() - E::scalar(coeff_const(4))) + g(Gen::EpsX) * g(Gen::Lap); }

E iota_D() { return -(g(Gen::Delta) * (k_x() - E::scalar(coeff_const(4)))) + g(Gen::IotaX) * g(Gen::Lap); }

struct Spelling {
  const char* text;
  E (*make)();
};

// longest spellings first where one is a prefix of another
const std::vector<Spelling>& spellings() {
  static const std::vector<Spelling> s = {
      {"ι(𝔻)", iota_D},
      {"iota_D", iota_D},
      {"ε(𝔻)", eps_D},
      {"eps_D", eps_D},
      {"ℒ_X*", [] { return g(Gen::LXs); }},
      {"L_X_star", [] { return g(Gen::LXs); }},
      {"L_X*", [] { return g(Gen::LXs); }},
      {"ℒ_X", [] { return g(Gen::LX); }},
      {"L_X", [] { return g(Gen::LX); }},
      {"K_X", k_x},
      {"ε(X)", [] { return g(Gen::EpsX); }},
      {"eps_X", [] { return g(Gen::EpsX); }},
      {"ι(X)", [] { return g(Gen::IotaX); }},
      {"iota_X", [] { return g(Gen::IotaX); }},
      {"delta", [] { return g(Gen::Delta); }},
      {"δ", [] { return g(Gen::Delta); }},
      {"Δ", [] { return g(Gen::Lap); }},
      {"Lap", [] { return g(Gen::Lap); }},
      {"d", [] { return g(Gen::D); }},
      {"Q", [] { return g(Gen::Q); }},
      {"n", [] { return E::scalar(coeff_var(kVarN)); }},
      {"w", [] { return E::scalar(coeff_var(kVarW)); }},
      {"k", [] { return E::scalar(coeff_var(kVarK)); }},
  };
  return s;
}

class Parser {
 public:
  explicit Parser(const std::string& t) : text_(t) {}

  E parse() {
    skip();
    if (at_end()) fail("empty input");
    E e = sum();
    skip();
    if (!at_end()) fail("unexpected input");
    return e;
  }

 private:
  const std::string& text_;
  size_t pos_ = 0;

  bool at_end() const { return pos_ >= text_.size(); }

  size_t column() const {
    size_t col = 0;
    for (size_t i = 0; i < pos_ && i < text_.size(); ++i)
      if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) ++col;
    return col;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw WordParseError(column(), msg); }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(const char* s) {
    skip();
    std::string_view v(s);
    if (text_.compare(pos_, v.size(), v) == 0) {
      pos_ += v.size();
      return true;
    }
    return false;
  }

  void expect(const char* s) {
    if (!accept(s)) fail(std::string("expected '") + s + "'");
  }

  E sum() {
    E acc;
    bool neg = false;
    if (accept("-") || accept("−")) neg = true;
    else accept("+");
    E first = product();
    acc = neg ? -first : first;
    while (true) {
      if (accept("+")) acc += product();
      else if (accept("-") || accept("−")) acc -= product();
      else break;
    }
    return acc;
  }

  E product() {
    E acc = factor();
    while (accept("∘") || accept(".") || accept("*")) acc = acc * factor();
    return acc;
  }

  E factor() {
    E base = atom();
    if (accept("^")) {
      skip();
      size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      int e = std::stoi(text_.substr(start, pos_ - start));
      if (e > 64) fail("exponent too large");
      base = base.power(e);
    }
    return base;
  }

  E atom() {
    skip();
    if (at_end()) fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return E::scalar(coeff_const(Rational(text_.substr(start, pos_ - start))));
    }
    if (accept("(")) {
      E e = sum();
      expect(")");
      return e;
    }
    if (accept("[")) {
      E a = sum();
      expect(",");
      E b = sum();
      expect("]");
      return a * b - b * a;
    }
    if (accept("{")) {
      E a = sum();
      expect(",");
      E b = sum();
      expect("}");
      return a * b + b * a;
    }
    for (auto& sp : spellings())
      if (accept(sp.text)) return sp.make();
    fail("unknown symbol");
  }
};

}  // namespace

AlgebraElement parse_word(const std::string& text) { return Parser(text).parse(); }

}  // namespace conformal
