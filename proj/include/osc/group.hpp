#ifndef OSC_GROUP_HPP_
#define OSC_GROUP_HPP_

// Oscillator group arithmetic in the coordinates
//
//   g(e, alpha, q, p) = exp(i e E) exp(i alpha H) exp(i (p Q + q P)),
//
// with algebra elements X = xe E + xp Q + xq P + xalpha H. Whenever a vector
// layout is needed the order is (e, q, p, alpha); see to_vector().

#include <Eigen/Core>
#include <cmath>
#include <complex>

#include "osc/error.hpp"
#include "osc/numeric.hpp"

namespace osc {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// Index of each coordinate in a Vec4.
enum Coord : int { kE = 0, kQ = 1, kP = 2, kAlpha = 3 };

/// Group element. alpha is not wrapped; the abstract group is R^4.
struct GroupElement {
  double e = 0.0;
  double alpha = 0.0;
  double q = 0.0;
  double p = 0.0;

  static GroupElement identity() { return {}; }

  double radius_squared() const { return q * q + p * p; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Lie algebra element; xq multiplies P and xp multiplies Q.
struct AlgebraElement {
  double xe = 0.0;
  double xq = 0.0;
  double xp = 0.0;
  double xalpha = 0.0;

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

  AlgebraElement scaled(double s) const { return {s * xe, s * xq, s * xp, s * xalpha}; }
};

inline Vec4 to_vector(const GroupElement& g) { return {g.e, g.q, g.p, g.alpha}; }
inline Vec4 to_vector(const AlgebraElement& x) { return {x.xe, x.xq, x.xp, x.xalpha}; }
inline GroupElement group_from_vector(const Vec4& v) { return {v[kE], v[kAlpha], v[kQ], v[kP]}; }
inline AlgebraElement algebra_from_vector(const Vec4& v) {
  return {v[kE], v[kQ], v[kP], v[kAlpha]};
}

/// Absolute tolerance for the excluded set alpha = 2 pi k of the logarithm.
inline constexpr double kExcludedSetTolerance = 1e-9;

/// Group law g * h; h is the right factor.
inline GroupElement compose(const GroupElement& g, const GroupElement& h) {
  const double c = std::cos(h.alpha);
  const double s = std::sin(h.alpha);
  const double q_rot = g.q * c - g.p * s;
  const double p_rot = g.p * c + g.q * s;
  return {
      .e = g.e + h.e + 0.5 * h.p * q_rot - 0.5 * h.q * p_rot,
      .alpha = g.alpha + h.alpha,
      .q = h.q + q_rot,
      .p = h.p + p_rot,
  };
}

inline GroupElement inverse(const GroupElement& g) {
  const double c = std::cos(g.alpha);
  const double s = std::sin(g.alpha);
  return {
      .e = -g.e,
      .alpha = -g.alpha,
      .q = -(g.q * c + g.p * s),
      .p = -(g.p * c - g.q * s),
  };
}

/// exp(iX), closed form of the flow dg/dt = i X g at t = 1.
inline GroupElement exp(const AlgebraElement& x) {
  const double theta = x.xalpha;
  const std::complex<double> w(x.xq, x.xp);
  const double half_sinc = numeric::sinc(0.5 * theta);
  // (e^{i theta} - 1)/(i theta)
  const std::complex<double> kernel(numeric::sinc(theta), 0.5 * theta * half_sinc * half_sinc);
  const std::complex<double> z = w * kernel;
  return {
      .e = x.xe - 0.5 * std::norm(w) * theta * numeric::x_minus_sin_over_cube(theta),
      .alpha = theta,
      .q = z.real(),
      .p = z.imag(),
  };
}

/// True when g lies on a punctured hyperplane alpha = 2 pi k (k != 0) that the
/// exponential map misses.
inline bool in_excluded_set(const GroupElement& g, double tol = kExcludedSetTolerance) {
  if (g.radius_squared() == 0.0) return false;
  return numeric::nearest_nonzero_pole(g.alpha).distance < tol;
}

/// Principal logarithm; inverse of exp() for |xalpha| < 2 pi.
inline AlgebraElement log(const GroupElement& g) {
  if (g.radius_squared() == 0.0) return {g.e, 0.0, 0.0, g.alpha};
  if (in_excluded_set(g)) {
    throw Error(ErrorCode::not_in_exponential_image,
                "alpha is a nonzero multiple of 2*pi while q^2+p^2 != 0");
  }
  const double a = g.alpha;
  const double kappa = numeric::half_cot(a);
  return {
      .xe = g.e + 0.25 * g.radius_squared() * numeric::x_minus_sin_over_one_minus_cos(a),
      .xq = 0.5 * a * g.p + g.q * kappa,
      .xp = -0.5 * a * g.q + g.p * kappa,
      .xalpha = a,
  };
}

// ---------------------------------------------------------------------------
// Automorphisms

enum class AutomorphismFamily { first, second };

/// Algebra automorphism. The first family keeps H -> H + ..., the second sends
/// H -> -H + ... and flips the sign of the centre.
struct Automorphism {
  AutomorphismFamily family = AutomorphismFamily::first;
  double mu = 1.0;
  double nu = 0.0;
  double rho = 0.0;
  double sigma = 0.0;
  double tau = 0.0;

  double scale() const { return mu * mu + nu * nu; }
};

namespace detail {
inline void require_nondegenerate(const Automorphism& a) {
  if (a.scale() == 0.0) {
    throw Error(ErrorCode::degenerate_automorphism, "mu^2 + nu^2 must be nonzero");
  }
}
}  // namespace detail

/// Image of an algebra element under the automorphism, expressed in the
/// original basis (the linear coordinate map of the two families).
inline AlgebraElement transform_coefficients(const Automorphism& a, const AlgebraElement& x) {
  detail::require_nondegenerate(a);
  const double ep = x.xe, pp = x.xp, qp = x.xq, ap = x.xalpha;
  const double m = a.mu, n = a.nu, r = a.rho, s = a.sigma, t = a.tau;
  if (a.family == AutomorphismFamily::first) {
    return {
        .xe = a.scale() * ep + (n * s + m * r) * pp + (m * s - n * r) * qp + t * ap,
        .xq = n * pp + m * qp + s * ap,
        .xp = m * pp - n * qp + r * ap,
        .xalpha = ap,
    };
  }
  return {
      .xe = -a.scale() * ep - (n * s + m * r) * pp + (m * s - n * r) * qp + t * ap,
      .xq = n * pp - m * qp + s * ap,
      .xp = m * pp + n * qp + r * ap,
      .xalpha = -ap,
  };
}

/// Group automorphism induced by the algebra automorphism:
/// g(e, alpha, q, p) -> exp(phi(eE)) exp(phi(alpha H)) exp(phi(pQ + qP)).
/// For rho = sigma = 0 this is the linear coordinate map itself.
inline GroupElement apply_automorphism(const Automorphism& a, const GroupElement& g) {
  detail::require_nondegenerate(a);
  const GroupElement centre = exp(transform_coefficients(a, {g.e, 0.0, 0.0, 0.0}));
  const GroupElement rotation = exp(transform_coefficients(a, {0.0, 0.0, 0.0, g.alpha}));
  const GroupElement translation = exp(transform_coefficients(a, {0.0, g.q, g.p, 0.0}));
  return compose(compose(centre, rotation), translation);
}

}  // namespace osc

#endif  // OSC_GROUP_HPP_
