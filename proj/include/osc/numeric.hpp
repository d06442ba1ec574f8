#ifndef OSC_NUMERIC_HPP_
#define OSC_NUMERIC_HPP_

// Removable-singularity helpers shared by the exponential map, the closed-form
// geodesics and the transcendental boundary equation. Everything is written in
// half-angle form so that only x - sin(x) needs a series.

#include <cmath>
#include <numbers>

namespace osc::numeric {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// sin(x)/x
inline double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// (x - sin x)/x^3, -> 1/6 at 0
inline double x_minus_sin_over_cube(double x) {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return 1.0 / 6.0 -
           x2 * (1.0 / 120.0 -
                 x2 * (1.0 / 5040.0 - x2 * (1.0 / 362880.0 - x2 / 39916800.0)));
  }
  return (x - std::sin(x)) / (x * x * x);
}

// (x/2) cot(x/2), -> 1 at 0. Poles at x = 2 pi k, k != 0.
inline double half_cot(double x) {
  const double h = 0.5 * x;
  return std::cos(h) / sinc(h);
}

// x^2 / (2 (1 - cos x)) = 1 / sinc^2(x/2), -> 1 at 0.
inline double nu2_over_two_one_minus_cos(double x) {
  const double s = sinc(0.5 * x);
  return 1.0 / (s * s);
}

// (x - sin x)/(1 - cos x) = 2 x c3(x) / sinc^2(x/2), odd, -> 0 at 0.
inline double x_minus_sin_over_one_minus_cos(double x) {
  return 2.0 * x * x_minus_sin_over_cube(x) * nu2_over_two_one_minus_cos(x);
}

// (sin h - h cos h)/h^3, -> 1/3 at 0
inline double sin_minus_x_cos_over_cube(double h) {
  if (std::abs(h) < 1e-2) {
    const double h2 = h * h;
    return 1.0 / 3.0 - h2 * (1.0 / 30.0 - h2 * (1.0 / 840.0 - h2 * (1.0 / 45360.0 - h2 / 3991680.0)));
  }
  return (std::sin(h) - h * std::cos(h)) / (h * h * h);
}

// d/dx of (sin x - x)/(1 - cos x), even, -> -1/3 at 0.
inline double derivative_of_boundary_term(double x) {
  const double h = 0.5 * x;
  const double s = sinc(h);
  return -sin_minus_x_cos_over_cube(h) / (s * s * s);
}

// Distance from x to the nearest nonzero multiple of 2 pi, and that multiple.
struct PoleDistance {
  long k;
  double distance;
};

inline PoleDistance nearest_nonzero_pole(double x) {
  long k = std::lround(x / two_pi);
  if (k == 0) k = x >= 0.0 ? 1 : -1;
  return {k, std::abs(x - two_pi * static_cast<double>(k))};
}

}  // namespace osc::numeric

#endif  // OSC_NUMERIC_HPP_
