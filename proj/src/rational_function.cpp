#include "lyapcert/rational_function.hpp"

#include <stdexcept>
#include <utility>

namespace lyapcert {

Polynomial lie_derivative(const Polynomial& v, const VectorField& field) {
  const auto [vx, vy] = gradient(v);
  return vx * field.dx + vy * field.dy;
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("rational function with zero denominator");
}

Rational RationalFunction::evaluate(const Rational& x, const Rational& y) const {
  const Rational d = den_.evaluate(x, y);
  if (d.is_zero()) throw std::domain_error("denominator vanishes at evaluation point");
  return num_.evaluate(x, y) / d;
}

double RationalFunction::evaluate(double x, double y) const {
  const double d = den_.evaluate(x, y);
  if (d == 0.0) return 0.0;
  return num_.evaluate(x, y) / d;
}

RationalFunction operator+(const RationalFunction& lhs, const RationalFunction& rhs) {
  if (lhs.den_ == rhs.den_) return {lhs.num_ + rhs.num_, lhs.den_};
  return {lhs.num_ * rhs.den_ + rhs.num_ * lhs.den_, lhs.den_ * rhs.den_};
}

RationalFunction operator-(const RationalFunction& lhs, const RationalFunction& rhs) {
  return lhs + RationalFunction(-rhs.num_, rhs.den_);
}

std::string RationalFunction::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

std::array<RationalFunction, 2> gradient(const RationalFunction& w) {
  if (w.is_polynomial()) {
    auto [gx, gy] = gradient(w.num());
    return {RationalFunction(std::move(gx)), RationalFunction(std::move(gy))};
  }
  const auto [nx, ny] = gradient(w.num());
  const auto [dx, dy] = gradient(w.den());
  const Polynomial den_sq = w.den() * w.den();
  return {RationalFunction(nx * w.den() - w.num() * dx, den_sq),
          RationalFunction(ny * w.den() - w.num() * dy, den_sq)};
}

RationalFunction lie_derivative(const RationalFunction& w, const VectorField& field) {
  const auto [gx, gy] = gradient(w);
  return {gx.num() * field.dx + gy.num() * field.dy, gx.den()};
}

}  // namespace lyapcert
