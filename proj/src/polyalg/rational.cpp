#include "pncalc/rational.hpp"

#include <cctype>

#include "pncalc/errors.hpp"

namespace pncalc {

Rational::Rational(long num, long den) {
  if (den == 0) throw InputError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    return j;
  };
  const std::size_t num_end = digits(i);
  if (num_end == i) throw ParseError("expected integer", i);
  mpz_class num(std::string(text.substr(i, num_end - i)));
  mpz_class den(1);
  i = num_end;
  if (i < text.size() && text[i] == '/') {
    const std::size_t den_end = digits(i + 1);
    if (den_end == i + 1) throw ParseError("expected denominator", i + 1);
    den = mpz_class(std::string(text.substr(i + 1, den_end - i - 1)));
    if (den == 0) throw ParseError("zero denominator", i + 1);
    i = den_end;
  }
  if (i != text.size()) throw ParseError("trailing characters in rational", i);
  if (negative) num = -num;
  return Rational(mpq_class(num, den));
}

std::string Rational::to_string() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InputError("division by zero");
  value_ /= o.value_;
  return *this;
}

}  // namespace pncalc
