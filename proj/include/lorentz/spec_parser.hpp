#pragma once

// Text grammar for MonotoneMap trees.
//
//   leaf   := id | exp1 | sinmono | affine:a,b | pow:p | ridge:a | pwl:x,y;x,y;...
//           | sq | abs | sin | cos | exp | poly:c0,c1,...
//   node   := odd(F) | even(F) | sgn(F) | tilde(F) | inv(F) | neg(F) | int(F)
//           | comp(F,G) | piece(s,F,G)
//
// Whitespace is ignored. MonotoneMap::spec() prints in the same grammar.

#include <cctype>
#include <cstdlib>
#include <string>
#include <string_view>

#include "monotone.hpp"

namespace lorentz {

namespace detail {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) src_.push_back(c);
  }

  MonotoneMap parse() {
    MonotoneMap f = expr();
    if (pos_ != src_.size()) fail("trailing input");
    return f;
  }

 private:
  std::string src_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::parse, msg + " at offset " + std::to_string(pos_) + " in '" + src_ + "'");
  }

  bool accept(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string word() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    return src_.substr(start, pos_ - start);
  }

  double number() {
    const char* begin = src_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  std::vector<double> number_list() {
    std::vector<double> out{number()};
    // A comma followed by a name belongs to the enclosing node.
    while (pos_ + 1 < src_.size() && src_[pos_] == ',' && !std::isalpha(static_cast<unsigned char>(src_[pos_ + 1]))) {
      ++pos_;
      out.push_back(number());
    }
    return out;
  }

  MonotoneMap unary(MonotoneMap (*make)(const MonotoneMap&)) {
    expect('(');
    MonotoneMap f = expr();
    expect(')');
    return make(f);
  }

  MonotoneMap expr() {
    const std::string name = word();
    if (name.empty()) fail("expected a function name");

    if (name == "id") return identity_map();
    if (name == "exp1") return exp1();
    if (name == "sinmono") return sinmono();
    if (name == "sq") return square();
    if (name == "abs") return abs_value();
    if (name == "sin") return sine();
    if (name == "cos") return cosine();
    if (name == "exp") return exponential();

    if (name == "affine") {
      expect(':');
      const double a = number();
      expect(',');
      return affine(a, number());
    }
    if (name == "pow") {
      expect(':');
      return power_odd(number());
    }
    if (name == "ridge") {
      expect(':');
      return ridge(number());
    }
    if (name == "poly") {
      expect(':');
      return polynomial(number_list());
    }
    if (name == "pwl") {
      expect(':');
      std::vector<std::pair<double, double>> pts;
      do {
        const double x = number();
        expect(',');
        pts.emplace_back(x, number());
      } while (accept(';'));
      return pwl(std::move(pts));
    }

    if (name == "odd") return unary(&odd_extend_whole);
    if (name == "even") return unary(&even_extend_whole);
    if (name == "tilde") return unary(&lorentz::tilde);
    if (name == "inv") return unary(&lorentz::invert);
    if (name == "neg") return unary(&lorentz::negate);
    if (name == "int") return unary(&antiderivative_whole);
    if (name == "sgn") return unary(&lorentz::sign_times);

    if (name == "comp") {
      expect('(');
      MonotoneMap f = expr();
      expect(',');
      MonotoneMap g = expr();
      expect(')');
      return compose(f, g);
    }
    if (name == "piece") {
      expect('(');
      const double split = number();
      expect(',');
      MonotoneMap l = expr();
      expect(',');
      MonotoneMap r = expr();
      expect(')');
      return piecewise(split, l, r);
    }
    fail("unknown function '" + name + "'");
  }

  // odd/even accept maps defined on the whole line and use their half-line part.
  static MonotoneMap odd_extend_whole(const MonotoneMap& f) {
    return f.domain().lo < 0.0 ? odd_extend(restrict(f, {0.0, f.domain().hi})) : odd_extend(f);
  }
  static MonotoneMap even_extend_whole(const MonotoneMap& f) {
    return f.domain().lo < 0.0 ? even_extend(restrict(f, {0.0, f.domain().hi})) : even_extend(f);
  }
  static MonotoneMap antiderivative_whole(const MonotoneMap& f) { return antiderivative(f, f.domain()); }
};

}  // namespace detail

/// Parses a function spec; throws ParseError (or the builder's error) on bad input.
inline MonotoneMap parse_spec(std::string_view text) { return detail::SpecParser(text).parse(); }

}  // namespace lorentz
