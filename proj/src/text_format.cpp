#include "lyapcert/text_format.hpp"

#include <cctype>
#include <optional>

namespace lyapcert {

namespace {

class PolynomialParser {
 public:
  explicit PolynomialParser(std::string_view text) {
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) text_.push_back(ch);
    }
  }

  Polynomial parse() {
    if (text_.empty()) fail("empty polynomial");
    Polynomial sum;
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = next() == '-' ? -1 : 1;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      Polynomial t = parse_term();
      if (sign < 0) t = -t;
      sum += t;
    }
    return sum;
  }

 private:
  Polynomial parse_term() {
    Rational coefficient(1);
    unsigned x_exp = 0;
    unsigned y_exp = 0;
    bool have_factor = false;
    while (true) {
      const char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        coefficient *= parse_number();
      } else if (ch == 'x' || ch == 'y') {
        ++pos_;
        const unsigned e = parse_exponent();
        (ch == 'x' ? x_exp : y_exp) += e;
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        fail(std::string("unknown variable '") + ch + "'");
      } else {
        fail("expected a coefficient or variable");
      }
      have_factor = true;
      if (peek() != '*') break;
      ++pos_;
    }
    if (!have_factor) fail("empty term");
    return Polynomial::term(coefficient, x_exp, y_exp);
  }

  Rational parse_number() {
    const std::string num = digits();
    if (peek() == '/') {
      ++pos_;
      const std::string den = digits();
      if (den.empty()) fail("missing denominator");
      try {
        return Rational::parse(num + "/" + den);
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    return Rational::parse(num);
  }

  unsigned parse_exponent() {
    if (peek() != '^') return 1;
    ++pos_;
    const std::string d = digits();
    if (d.empty()) fail("missing exponent");
    if (d.size() > 6) fail("exponent too large");
    return static_cast<unsigned>(std::stoul(d));
  }

  std::string digits() {
    std::string out;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      out.push_back(text_[pos_++]);
    }
    return out;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char next() { return text_[pos_++]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + message);
  }

  std::string text_;
  std::size_t pos_ = 0;
};

// Returns the index one past the ')' matching the '(' at `open`.
std::optional<std::size_t> matching_paren(std::string_view text, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')' && --depth == 0) return i + 1;
  }
  return std::nullopt;
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text) { return PolynomialParser(text).parse(); }

RationalFunction parse_rational_function(std::string_view text) {
  text = trim(text);
  if (text.empty() || text.front() != '(') return RationalFunction(parse_polynomial(text));
  const auto num_end = matching_paren(text, 0);
  if (!num_end) throw ParseError("unbalanced parentheses in rational function");
  const auto num_text = text.substr(1, *num_end - 2);
  auto rest = trim(text.substr(*num_end));
  if (rest.empty()) return RationalFunction(parse_polynomial(num_text));
  if (rest.front() != '/') throw ParseError("expected '/' between numerator and denominator");
  rest = trim(rest.substr(1));
  if (rest.empty() || rest.front() != '(') throw ParseError("denominator must be parenthesized");
  const auto den_end = matching_paren(rest, 0);
  if (!den_end || *den_end != rest.size()) throw ParseError("malformed denominator");
  Polynomial den = parse_polynomial(rest.substr(1, *den_end - 2));
  if (den.is_zero()) throw ParseError("zero denominator");
  return RationalFunction(parse_polynomial(num_text), std::move(den));
}

}  // namespace lyapcert
