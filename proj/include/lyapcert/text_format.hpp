#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "lyapcert/polynomial.hpp"
#include "lyapcert/rational_function.hpp"

namespace lyapcert {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the polynomial text format, e.g. `1*x^4 + 1*y^4` or
/// `-3/2*x^2*y + 7`. Whitespace-insensitive; terms are products of rational
/// coefficients and powers of x and y. Any other identifier is rejected.
Polynomial parse_polynomial(std::string_view text);

/// Accepts a bare polynomial or `(num) / (den)`.
RationalFunction parse_rational_function(std::string_view text);

}  // namespace lyapcert
