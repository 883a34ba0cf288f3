#pragma once

#include <array>

#include "lyapcert/polynomial.hpp"

namespace lyapcert {

/// Planar polynomial vector field (dx/dt, dy/dt).
struct VectorField {
  Polynomial dx;
  Polynomial dy;

  std::optional<unsigned> degree() const {
    const auto a = dx.degree();
    const auto b = dy.degree();
    if (!a) return b;
    if (!b) return a;
    return std::max(*a, *b);
  }

  template <class Ring>
  std::array<Ring, 2> evaluate(const Ring& x, const Ring& y) const {
    return {dx.evaluate(x, y), dy.evaluate(x, y)};
  }

  std::array<double, 2> evaluate(double x, double y) const {
    return {dx.evaluate(x, y), dy.evaluate(x, y)};
  }

  VectorField& operator+=(const VectorField& rhs) {
    dx += rhs.dx;
    dy += rhs.dy;
    return *this;
  }
  friend VectorField operator+(VectorField lhs, const VectorField& rhs) { return lhs += rhs; }
  friend bool operator==(const VectorField&, const VectorField&) = default;
};

/// <grad v, field>, exact.
Polynomial lie_derivative(const Polynomial& v, const VectorField& field);

}  // namespace lyapcert
