#ifndef OSC_METRIC_HPP_
#define OSC_METRIC_HPP_

// Right-invariant metrics invariant under Q -> P, P -> -Q, their Euler-Arnold
// flow and the closed-form geodesics leaving the identity.

#include <cmath>
#include <string>
#include <string_view>

#include "osc/error.hpp"
#include "osc/frames.hpp"
#include "osc/group.hpp"
#include "osc/numeric.hpp"

namespace osc {

/// eta = [[a,0,0,b],[0,1,0,0],[0,0,1,0],[b,0,0,d]] in (e,q,p,alpha) order.
class Metric {
 public:
  Metric(double a, double b, double d) : a_(a), b_(b), d_(d) {
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(d)) || !(a > 0.0) ||
        !(a * d - b * b > 0.0)) {
      throw Error(ErrorCode::invalid_metric,
                  "need a > 0 and a*d - b^2 > 0, got a=" + std::to_string(a) +
                      " b=" + std::to_string(b) + " d=" + std::to_string(d));
    }
  }

  double a() const { return a_; }
  double b() const { return b_; }
  double d() const { return d_; }
  double determinant() const { return a_ * d_ - b_ * b_; }

  Mat4 eta() const {
    Mat4 m = Mat4::Identity();
    m(kE, kE) = a_;
    m(kE, kAlpha) = b_;
    m(kAlpha, kE) = b_;
    m(kAlpha, kAlpha) = d_;
    return m;
  }

  Mat4 eta_inverse() const {
    Mat4 m = Mat4::Identity();
    const double det = determinant();
    m(kE, kE) = d_ / det;
    m(kE, kAlpha) = -b_ / det;
    m(kAlpha, kE) = -b_ / det;
    m(kAlpha, kAlpha) = a_ / det;
    return m;
  }

  /// eta(x, x)
  double norm_squared(const Vec4& x) const { return x.dot(eta() * x); }

  /// Smallest eigenvalue of the (e, alpha) block.
  double min_central_eigenvalue() const {
    const double mean = 0.5 * (a_ + d_);
    const double half_gap = std::hypot(0.5 * (a_ - d_), b_);
    return mean - half_gap;
  }

 private:
  double a_;
  double b_;
  double d_;
};

/// Sign of the Euler-Arnold equation dPi/dt = s * eta^-1 ad*_Pi (eta Pi).
///
/// `plus` is the closed form with Pi rotating at nu = aA + (b+1)B and
/// nu_tilde = aA + (b+2)B; the tabulated complexities use it. `minus` is the
/// Levi-Civita geodesic flow of the metric: nu_tilde = -(aA + bB). It agrees
/// with Christoffel integration and with the Lagrangian integrals of motion.
enum class EulerArnoldSign { plus, minus };

inline double sign_value(EulerArnoldSign s) { return s == EulerArnoldSign::plus ? 1.0 : -1.0; }

inline std::string_view to_string(EulerArnoldSign s) {
  return s == EulerArnoldSign::plus ? "plus" : "minus";
}

inline EulerArnoldSign parse_sign(std::string_view text) {
  if (text == "plus" || text == "+") return EulerArnoldSign::plus;
  if (text == "minus" || text == "-" || text == "levi-civita") return EulerArnoldSign::minus;
  throw Error(ErrorCode::invalid_argument, "unknown Euler-Arnold sign '" + std::string(text) + "'");
}

/// Integration constants of the Euler-Arnold solution: Pi^e = A, Pi^alpha = B,
/// (Pi^q, Pi^p) = (F, D) at t = 0.
struct GeodesicParams {
  double A = 0.0;
  double B = 0.0;
  double D = 0.0;
  double F = 0.0;

  Vec4 initial_velocity() const { return {A, F, D, B}; }
  static GeodesicParams from_initial_velocity(const Vec4& v) { return {v[kE], v[kAlpha], v[kP], v[kQ]}; }
};

/// Angular frequency of (Pi^q, Pi^p).
inline double nu(const Metric& m, const GeodesicParams& gp, EulerArnoldSign s = EulerArnoldSign::plus) {
  return sign_value(s) * (m.a() * gp.A + (m.b() + 1.0) * gp.B);
}

/// Angular frequency of (q, p) in the co-rotating frame, nu + B.
inline double nu_tilde(const Metric& m, const GeodesicParams& gp,
                       EulerArnoldSign s = EulerArnoldSign::plus) {
  return nu(m, gp, s) + gp.B;
}

/// Pi(t) in (e, q, p, alpha) order.
inline Vec4 euler_arnold_pi(const Metric& m, const GeodesicParams& gp, double t,
                            EulerArnoldSign s = EulerArnoldSign::plus) {
  const double w = nu(m, gp, s) * t;
  const double c = std::cos(w);
  const double sn = std::sin(w);
  return {gp.A, -gp.D * sn + gp.F * c, gp.D * c + gp.F * sn, gp.B};
}

/// Right-hand side of the Euler-Arnold equation for arbitrary structure
/// constants: dPi^i/dt = s * eta^{ij} eta_{kl} c^l_{jm} Pi^k Pi^m.
inline Vec4 euler_arnold_rhs(const Metric& m, const StructureConstants& c, const Vec4& pi,
                             EulerArnoldSign s = EulerArnoldSign::plus) {
  const Vec4 lowered = m.eta() * pi;
  Vec4 y = Vec4::Zero();  // y_j = eta_kl Pi^k c^l_jm Pi^m
  for (int l = 0; l < 4; ++l) y += lowered[l] * (c[l] * pi);
  return sign_value(s) * (m.eta_inverse() * y);
}

/// Point at parameter t of the geodesic leaving the identity.
inline GroupElement geodesic_point(const Metric& m, const GeodesicParams& gp, double t,
                                   EulerArnoldSign s = EulerArnoldSign::plus) {
  const double w = nu_tilde(m, gp, s);
  const double x = w * t;
  const double k = gp.D * gp.D + gp.F * gp.F;
  const double half = numeric::sinc(0.5 * x);
  // (cos x - 1)/w and sin(x)/w without the 1/w singularity
  const double cos_term = -0.5 * w * t * t * half * half;
  const double sin_term = t * numeric::sinc(x);
  return {
      .e = gp.A * t - 0.5 * k * w * t * t * t * numeric::x_minus_sin_over_cube(x),
      .alpha = gp.B * t,
      .q = gp.D * cos_term + gp.F * sin_term,
      .p = gp.D * sin_term - gp.F * cos_term,
  };
}

/// Constant speed sqrt(eta(Pi, Pi)); equals the length of the t in [0,1] arc.
inline double speed(const Metric& m, const GeodesicParams& gp) {
  const double central = m.a() * gp.A * gp.A + 2.0 * m.b() * gp.A * gp.B + m.d() * gp.B * gp.B;
  return std::sqrt(central + gp.D * gp.D + gp.F * gp.F);
}

/// Whether t -> exp(t x) is a geodesic: x is a stationary point of the
/// Euler-Arnold flow, q (a xe + (b+1) xalpha) = 0 = p (a xe + (b+1) xalpha).
inline bool exp_is_geodesic(const Metric& m, const AlgebraElement& x, double tol = 1e-12) {
  const double central = m.a() * x.xe + (m.b() + 1.0) * x.xalpha;
  return std::abs(x.xq * central) <= tol && std::abs(x.xp * central) <= tol;
}

/// Geodesic parameters whose Euler-Arnold data starts at x.
inline GeodesicParams params_from_algebra(const AlgebraElement& x) {
  return {x.xe, x.xalpha, x.xp, x.xq};
}

// ---------------------------------------------------------------------------
// Automorphisms preserving the form of eta: rotations in the q-p plane
// (cos theta, sin theta) combined with the central shift H -> H + tau E.

struct MetricPreservingMap {
  double theta = 0.0;
  double tau = 0.0;

  Automorphism automorphism() const {
    return {AutomorphismFamily::first, std::cos(theta), std::sin(theta), 0.0, 0.0, tau};
  }
};

/// Metric eta with eta(phi x, phi x) = eta_primed(x, x); eta_primed is the
/// metric the map pulls back to.
inline Metric pushforward_metric(const MetricPreservingMap& map, const Metric& primed) {
  const double t = map.tau;
  return {primed.a(), primed.b() - primed.a() * t,
          primed.d() + primed.a() * t * t - 2.0 * primed.b() * t};
}

inline GroupElement apply(const MetricPreservingMap& map, const GroupElement& g) {
  return apply_automorphism(map.automorphism(), g);
}

/// The map acting on Euler-Arnold initial data.
inline GeodesicParams apply(const MetricPreservingMap& map, const GeodesicParams& gp) {
  const AlgebraElement x = transform_coefficients(map.automorphism(), {gp.A, gp.F, gp.D, gp.B});
  return {x.xe, x.xalpha, x.xp, x.xq};
}

}  // namespace osc

#endif  // OSC_METRIC_HPP_
