#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lyapcert/systems.hpp"
#include "lyapcert/text_format.hpp"

using namespace lyapcert;

namespace {

Polynomial P(const char* text) { return parse_polynomial(text); }

std::array<Rational, 2> at(const VectorField& f, long x, long y) {
  return f.evaluate(Rational(x), Rational(y));
}

}  // namespace

TEST_CASE("paper system matches the expanded field") {
  const auto sys = paper_system();
  // Expanded independently with a computer algebra system.
  const VectorField expanded{
      P("-2*x^7 - 6*x^5*y^2 + 2*x^4*y - 2*x^3*y^4 - 4*x^2*y^3 + 2*x*y^6 - 2*y^5"),
      P("2*x^6*y + 2*x^5 - 2*x^4*y^3 + 4*x^3*y^2 - 6*x^2*y^5 - 2*x*y^4 - 2*y^7")};
  CHECK(sys.full() == expanded);

  const auto [a, b] = paper_gradient_numerators();
  CHECK(Polynomial::y() * a + Polynomial::x() * b == P("8*x^3*y^3"));

  const auto full = sys.full();
  for (const auto& c : full.dx.terms()) CHECK(c.second.is_integer());
  for (const auto& c : full.dy.terms()) CHECK(c.second.is_integer());
}

TEST_CASE("paper system point values") {
  const auto sys = paper_system();
  CHECK(at(sys.full(), 0, 0) == std::array<Rational, 2>{0, 0});
  const auto [a, b] = paper_gradient_numerators();
  CHECK(a.evaluate(Rational(1), Rational(1)) == Rational(4));
  CHECK(b.evaluate(Rational(1), Rational(1)) == Rational(4));
  CHECK(at(sys.base, 1, 1) == std::array<Rational, 2>{-4, 4});
  CHECK(at(sys.correction, 1, 1) == std::array<Rational, 2>{-8, -8});
  CHECK(at(sys.full(), 1, 1) == std::array<Rational, 2>{-12, -4});
  CHECK(at(sys.base, 1, 0) == std::array<Rational, 2>{0, 2});
}

TEST_CASE("field degrees") {
  const auto paper = field_degree(paper_system());
  CHECK(paper.base == 5u);
  CHECK(paper.correction == 7u);
  CHECK(paper.full == 7u);

  const auto simple = field_degree(simple_system());
  CHECK(simple.base == 2u);
  CHECK_FALSE(simple.correction.has_value());
  CHECK(simple.full == 2u);

  const auto br = field_degree(bacciotti_rosier(Rational(1)).field);
  CHECK(br.base == 3u);
  CHECK(br.correction == 5u);
  CHECK(br.full == 5u);
}

TEST_CASE("simple system point values") {
  const auto f = simple_system().full();
  CHECK(at(f, 0, 0) == std::array<Rational, 2>{0, 0});
  CHECK(at(f, 1, 1) == std::array<Rational, 2>{0, -1});
  CHECK(at(f, 2, 0) == std::array<Rational, 2>{-2, 0});
  CHECK(simple_system().correction.dx.is_zero());
}

TEST_CASE("Bacciotti-Rosier candidates") {
  CHECK(bacciotti_rosier(Rational(1)).candidate == P("2*x^4 + 3*x^2*y^2 + y^4"));
  CHECK(bacciotti_rosier(Rational(0)).candidate == P("x^2 + y^2"));
  CHECK(bacciotti_rosier(Rational(1, 2)).candidate == P("x^2 + y^2").pow(2) * P("2*x^2 + y^2"));
  CHECK_THROWS_AS(bacciotti_rosier(Rational(-1)), std::invalid_argument);

  // lambda = 0 drops every lambda term.
  const auto zero = bacciotti_rosier(Rational(0)).field;
  CHECK(zero.base.dx == P("-4*x^2*y - 2*y^3"));
  CHECK(zero.base.dy == P("4*x^3 + 2*x*y^2"));

  // The two sign conventions differ only in the correction's y-component.
  const auto printed = bacciotti_rosier(Rational(1), BacciottiRosierSign::as_printed).field;
  const auto consistent = bacciotti_rosier(Rational(1)).field;
  CHECK(printed.base == consistent.base);
  CHECK(printed.correction.dx == consistent.correction.dx);
  CHECK(printed.correction.dy != consistent.correction.dy);
}

TEST_CASE("catalog lookup and serialization") {
  REQUIRE(find_system("paper") != nullptr);
  CHECK(find_system("unknown") == nullptr);
  for (const auto& entry : system_catalog()) {
    CHECK_FALSE(entry.field.name.empty());
    const auto f = entry.field.full();
    CHECK(parse_polynomial(f.dx.to_string()) == f.dx);
    CHECK(parse_polynomial(f.dy.to_string()) == f.dy);
    if (entry.known_certificate) {
      CHECK(parse_rational_function(entry.known_certificate->to_string()) == *entry.known_certificate);
    }
  }
}
