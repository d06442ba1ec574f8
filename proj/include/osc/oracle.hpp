#ifndef OSC_ORACLE_HPP_
#define OSC_ORACLE_HPP_

// Numerical cross-checks of the closed-form geodesics: fixed-step RK4
// integration of the first-order reconstruction da/dt = mu_R(a) Pi(t) and of
// the second-order geodesic equation with Christoffel symbols built from the
// invariant frames, plus the integrals of motion of the geodesic Lagrangian.

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "osc/error.hpp"
#include "osc/frames.hpp"
#include "osc/group.hpp"
#include "osc/metric.hpp"
#include "osc/numeric.hpp"

namespace osc {

using Vec8 = Eigen::Matrix<double, 8, 1>;

/// Classical fourth-order Runge-Kutta step for y' = f(t, y).
template <class State, class Rhs>
State rk4_step(const State& y, double t, double h, Rhs&& f) {
  const State k1 = f(t, y);
  const State k2 = f(t + 0.5 * h, State(y + 0.5 * h * k1));
  const State k3 = f(t + 0.5 * h, State(y + 0.5 * h * k2));
  const State k4 = f(t + h, State(y + h * k3));
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Position and coordinate velocity (e, q, p, alpha order).
struct PhaseState {
  GroupElement coords;
  Vec4 velocity = Vec4::Zero();
};

using Trajectory = std::vector<PhaseState>;

enum class PiSource { closed_form, euler_arnold_ode };

namespace detail {
inline void require_steps(int steps) {
  if (steps < 1) throw Error(ErrorCode::invalid_argument, "steps must be >= 1");
}
inline Vec8 stack(const Vec4& x, const Vec4& v) {
  Vec8 y;
  y << x, v;
  return y;
}
}  // namespace detail

/// Integrates da/dt = mu_R(a) Pi(t) over [0, 1]; steps + 1 samples. Pi comes
/// from the closed form or from integrating the Euler-Arnold equation with
/// the commutator structure constants.
inline Trajectory integrate_geodesic(const Metric& m, const GeodesicParams& gp, int steps,
                                     EulerArnoldSign sign = EulerArnoldSign::plus,
                                     PiSource source = PiSource::closed_form) {
  detail::require_steps(steps);
  const double h = 1.0 / steps;
  const StructureConstants c = commutator_structure_constants();
  const auto rhs = [&](double t, const Vec8& y) {
    const GroupElement g = group_from_vector(y.head<4>());
    const Vec4 pi = source == PiSource::closed_form ? euler_arnold_pi(m, gp, t, sign) : Vec4(y.tail<4>());
    Vec8 dy;
    dy << mu_right(g) * pi,
        source == PiSource::closed_form ? Vec4::Zero() : euler_arnold_rhs(m, c, pi, sign);
    return dy;
  };
  Vec8 y = detail::stack(Vec4::Zero(), gp.initial_velocity());
  Trajectory out;
  out.reserve(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    const double t = i * h;
    const Vec4 pi = source == PiSource::closed_form ? euler_arnold_pi(m, gp, t, sign) : Vec4(y.tail<4>());
    const GroupElement g = group_from_vector(y.head<4>());
    out.push_back({g, mu_right(g) * pi});
    if (i < steps) y = rk4_step(y, t, h, rhs);
  }
  return out;
}

/// Closed-form geodesic sampled at t = i/steps with exact velocities.
inline Trajectory sample_geodesic(const Metric& m, const GeodesicParams& gp, int steps,
                                  EulerArnoldSign sign = EulerArnoldSign::plus) {
  detail::require_steps(steps);
  Trajectory out;
  out.reserve(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    const GroupElement g = geodesic_point(m, gp, t, sign);
    out.push_back({g, mu_right(g) * euler_arnold_pi(m, gp, t, sign)});
  }
  return out;
}

/// Christoffel symbols, gamma[i](j, k) = Gamma^i_jk, assembled from the right
/// frames and the structure constants:
///   Gamma^i_jk = 1/2 mu^i_l (d_k lambda^l_j + d_j lambda^l_k)
///              - 1/2 c^t_sr eta_tm eta^lr (lambda^m_j lambda^s_k + lambda^m_k lambda^s_j) mu^i_l.
using Christoffel = std::array<Mat4, 4>;

inline Christoffel christoffel(const Metric& m, const GroupElement& g,
                               const StructureConstants& c = commutator_structure_constants()) {
  const Mat4 lambda = lambda_right(g);
  const Mat4 mu = mu_right(g);
  const auto dlambda = lambda_right_gradient(g);
  const Mat4 eta = m.eta();
  const Mat4 eta_inv = m.eta_inverse();

  // S_l(j, k) = sum of both terms before contraction with mu^i_l
  std::array<Mat4, 4> s;
  for (int l = 0; l < 4; ++l) {
    Mat4 n = Mat4::Zero();  // n(m, s) = c^t_sr eta_tm eta^lr
    for (int t = 0; t < 4; ++t) n += eta.col(t) * (c[t] * eta_inv.row(l).transpose()).transpose();
    const Mat4 x = lambda.transpose() * n * lambda;
    Mat4 d;
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) d(j, k) = dlambda[k](l, j) + dlambda[j](l, k);
    s[l] = 0.5 * (d - x - x.transpose());
  }
  Christoffel gamma;
  for (int i = 0; i < 4; ++i) {
    gamma[i] = Mat4::Zero();
    for (int l = 0; l < 4; ++l) gamma[i] += mu(i, l) * s[l];
  }
  return gamma;
}

/// Integrates a'' + Gamma(a)(a', a') = 0 from the identity with a'(0) given in
/// (e, q, p, alpha) order; steps + 1 samples on [0, 1].
inline Trajectory integrate_christoffel(const Metric& m, const Vec4& start_velocity, int steps,
                                        const StructureConstants& c = commutator_structure_constants()) {
  detail::require_steps(steps);
  const double h = 1.0 / steps;
  const auto rhs = [&](double, const Vec8& y) {
    const Christoffel gamma = christoffel(m, group_from_vector(y.head<4>()), c);
    const Vec4 v = y.tail<4>();
    Vec4 acc;
    for (int i = 0; i < 4; ++i) acc[i] = -v.dot(gamma[i] * v);
    return detail::stack(v, acc);
  };
  Vec8 y = detail::stack(Vec4::Zero(), start_velocity);
  Trajectory out;
  out.reserve(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    out.push_back({group_from_vector(y.head<4>()), y.tail<4>()});
    if (i < steps) y = rk4_step(y, i * h, h, rhs);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Integrals of motion

struct ConservedSet {
  double energy = 0.0;
  double pe = 0.0;
  double palpha = 0.0;
  double J = 0.0;
  /// Noether charges of the right action, I = D^T eta Pi.
  Vec4 noether = Vec4::Zero();
};

/// Below this r^2 the energy is taken from the Lagrangian instead of the
/// polar form, whose J^2/r^2 term is 0/0 at the origin.
inline constexpr double kPolarEnergyCutoff = 1e-12;

inline double lagrangian(const Metric& m, const PhaseState& s) {
  const double q = s.coords.q, p = s.coords.p;
  const double de = s.velocity[kE], dq = s.velocity[kQ], dp = s.velocity[kP], da = s.velocity[kAlpha];
  const double w = q * dp - p * dq;
  return 0.5 * (m.a() * de * de + dq * dq + dp * dp + 0.25 * m.a() * w * w + 2.0 * m.b() * de * da +
                m.d() * da * da + w * (m.a() * de + m.b() * da));
}

inline ConservedSet conserved_quantities(const Metric& m, const PhaseState& s) {
  const double q = s.coords.q, p = s.coords.p;
  const double de = s.velocity[kE], dq = s.velocity[kQ], dp = s.velocity[kP], da = s.velocity[kAlpha];
  const double w = q * dp - p * dq;
  const double r2 = q * q + p * p;
  ConservedSet out;
  out.pe = m.a() * de + m.b() * da + 0.5 * m.a() * w;
  out.palpha = m.b() * de + m.d() * da + 0.5 * m.b() * w;
  out.J = p * dq - q * dp - 0.5 * out.pe * r2;
  const double det = m.determinant();
  const double central = ((m.d() * out.pe - m.b() * out.palpha) * out.pe +
                          (m.a() * out.palpha - m.b() * out.pe) * out.palpha) /
                         (2.0 * det);
  if (r2 < kPolarEnergyCutoff) {
    out.energy = lagrangian(m, s);
  } else {
    const double rdot = (q * dq + p * dp) / std::sqrt(r2);
    out.energy = 0.5 * rdot * rdot + out.J * out.J / (2.0 * r2) + out.pe * out.pe * r2 / 8.0 +
                 0.5 * out.J * out.pe + central;
  }
  const Vec4 pi = lambda_right(s.coords) * s.velocity;
  out.noether = adjoint(s.coords).transpose() * m.eta() * pi;
  return out;
}

/// Largest deviation of each integral from its initial value, divided by
/// max(1, |initial value|).
struct DriftReport {
  double energy = 0.0;
  double pe = 0.0;
  double palpha = 0.0;
  double J = 0.0;
  double noether = 0.0;

  double max() const { return std::max({energy, pe, palpha, J, noether}); }
};

inline DriftReport conserved_along(const Metric& m, const Trajectory& traj) {
  DriftReport r;
  if (traj.empty()) return r;
  const ConservedSet c0 = conserved_quantities(m, traj.front());
  const auto rel = [](double x, double x0) { return std::abs(x - x0) / std::max(1.0, std::abs(x0)); };
  for (const PhaseState& s : traj) {
    const ConservedSet c = conserved_quantities(m, s);
    r.energy = std::max(r.energy, rel(c.energy, c0.energy));
    r.pe = std::max(r.pe, rel(c.pe, c0.pe));
    r.palpha = std::max(r.palpha, rel(c.palpha, c0.palpha));
    r.J = std::max(r.J, rel(c.J, c0.J));
    for (int j = 0; j < 4; ++j) r.noether = std::max(r.noether, rel(c.noether[j], c0.noether[j]));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Hamiltonian form of the geodesics leaving the identity (J = 0).

/// A^2 p_e^2 = 8E - 4 (p_e (d p_e - b p_alpha) + p_alpha (a p_alpha - b p_e)) / (ad - b^2).
inline double amplitude_squared_times_pe2(const Metric& m, double pe, double palpha, double energy) {
  return 8.0 * energy - 4.0 * (pe * (m.d() * pe - m.b() * palpha) + palpha * (m.a() * palpha - m.b() * pe)) /
                            m.determinant();
}

inline GroupElement hamiltonian_solution(const Metric& m, double pe, double palpha, double energy,
                                         double gamma0, double sigma) {
  const double w2 = amplitude_squared_times_pe2(m, pe, palpha, energy);
  if (w2 < 0.0) {
    throw Error(ErrorCode::negative_amplitude_squared,
                "energy below the minimum for the given momenta");
  }
  // w = A p_e with the sign of p_e; the forms below have no 1/p_e.
  const double w = std::copysign(std::sqrt(w2), pe);
  const double x = pe * sigma;
  const double half = numeric::sinc(0.5 * x);
  const double sin_over = sigma * numeric::sinc(x);              // sin(x)/p_e
  const double one_minus_cos_over = 0.5 * pe * sigma * sigma * half * half;  // (1 - cos x)/p_e
  const double c0 = std::cos(gamma0), s0 = std::sin(gamma0);
  const double det = m.determinant();
  return {
      .e = 0.125 * w2 * pe * sigma * sigma * sigma * numeric::x_minus_sin_over_cube(x) +
           (m.d() * pe - m.b() * palpha) / det * sigma,
      .alpha = (m.a() * palpha - m.b() * pe) / det * sigma,
      .q = 0.5 * w * (c0 * sin_over + s0 * one_minus_cos_over),
      .p = 0.5 * w * (-c0 * one_minus_cos_over + s0 * sin_over),
  };
}

/// Euler-Arnold data of the same geodesic (Levi-Civita flow, nu_tilde = -p_e).
inline GeodesicParams hamiltonian_params(const Metric& m, double pe, double palpha, double energy,
                                         double gamma0) {
  const double w2 = amplitude_squared_times_pe2(m, pe, palpha, energy);
  if (w2 < 0.0) {
    throw Error(ErrorCode::negative_amplitude_squared,
                "energy below the minimum for the given momenta");
  }
  const double w = std::copysign(std::sqrt(w2), pe);
  const double B = (m.a() * palpha - m.b() * pe) / m.determinant();
  // F = -nu_tilde (A/2) cos gamma0 = (A p_e / 2) cos gamma0
  return {.A = (pe - m.b() * B) / m.a(),
          .B = B,
          .D = 0.5 * w * std::sin(gamma0),
          .F = 0.5 * w * std::cos(gamma0)};
}

}  // namespace osc

#endif  // OSC_ORACLE_HPP_
