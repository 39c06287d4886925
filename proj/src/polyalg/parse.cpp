#include "pncalc/parse.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "pncalc/errors.hpp"

namespace pncalc {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return p.promoted(ring_);
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", start);
    return std::string(text_.substr(start, pos_ - start));
  }

  Polynomial expr() {
    skip_ws();
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial b = base();
    if (accept('^')) {
      const std::size_t at = pos_;
      const std::string e = digits();
      if (e.size() > 6) throw ParseError("exponent too large", at);
      b = b.pow(static_cast<unsigned>(std::stoul(e)));
    }
    return b;
  }

  Polynomial base() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      if (accept('/')) {
        const std::size_t at = pos_;
        const std::string den = digits();
        if (std::all_of(den.begin(), den.end(), [](char d) { return d == '0'; }))
          throw ParseError("zero denominator", at);
        num += "/" + den;
      }
      return Polynomial::constant(ring_, Rational::parse(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (!ring_ || std::find(ring_->begin(), ring_->end(), name) == ring_->end())
        throw ParseError("unknown identifier '" + name + "'", start);
      return Polynomial::variable(ring_, variable_index(ring_, name));
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const Ring& ring) {
  return Parser(text, ring).parse();
}

}  // namespace pncalc
