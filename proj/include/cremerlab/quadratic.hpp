#pragma once

// The quadratic family P(z) = lambda z + z^2 with lambda = e^{2 pi i alpha}.
//
// The fixed point at the origin has multiplier lambda; the second fixed
// point is 1 - lambda; the critical point is -lambda / 2 and is its own
// image under the involution exchanging the two preimages of a point.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "cremerlab/angle.hpp"
#include "cremerlab/continued_fraction.hpp"

namespace cremerlab {

// For |lambda| = 1 and |z| >= 3, |P(z)| >= |z|(|z| - 1) >= 2|z|: radius 3 is
// a sound escape threshold for the whole family.
inline constexpr double default_escape_radius = 3.0;

struct quadratic_map {
  double alpha = 0.0;  // rotation parameter in [0, 1)
  std::complex<double> lambda{1.0, 0.0};
  double precision = 1e-12;

  static quadratic_map from_alpha(double a) {
    double frac = a - std::floor(a);
    quadratic_map m;
    m.alpha = frac;
    m.lambda = std::polar(1.0, 2.0 * std::numbers::pi * frac);
    return m;
  }

  static quadratic_map from_angle(const angle& a) { return from_alpha(a.to_double()); }

  static quadratic_map from_cf(const continued_fraction& cf) {
    return from_alpha(cf_value(cf));
  }

  std::complex<double> evaluate(std::complex<double> z) const { return lambda * z + z * z; }
  std::complex<double> derivative(std::complex<double> z) const { return lambda + 2.0 * z; }
  std::complex<double> involution(std::complex<double> z) const { return -lambda - z; }
  std::complex<double> critical_point() const { return -0.5 * lambda; }
  std::array<std::complex<double>, 2> fixed_points() const {
    return {std::complex<double>{0.0, 0.0}, 1.0 - lambda};
  }

  // P^n(z) and the derivative of P^n at z, by forward accumulation.
  std::pair<std::complex<double>, std::complex<double>> iterate_with_derivative(
      std::complex<double> z, unsigned n) const {
    std::complex<double> d{1.0, 0.0};
    for (unsigned i = 0; i < n; ++i) {
      d = derivative(z) * d;
      z = evaluate(z);
    }
    return {z, d};
  }
};

}  // namespace cremerlab
