#ifndef OSC_FRAMES_HPP_
#define OSC_FRAMES_HPP_

// Invariant frames of the oscillator group. mu_L / mu_R are the components of
// the left- and right-invariant vector fields (columns are algebra directions,
// rows are coordinates); lambda_* are their inverses, the Maurer-Cartan forms.

#include <array>
#include <cmath>

#include "osc/group.hpp"

namespace osc {

inline Mat4 mu_left(const GroupElement& g) {
  Mat4 m = Mat4::Identity();
  m(kE, kQ) = -0.5 * g.p;
  m(kE, kP) = 0.5 * g.q;
  m(kQ, kAlpha) = -g.p;
  m(kP, kAlpha) = g.q;
  return m;
}

inline Mat4 mu_right(const GroupElement& g) {
  const double c = std::cos(g.alpha);
  const double s = std::sin(g.alpha);
  Mat4 m = Mat4::Identity();
  m(kE, kQ) = 0.5 * (g.p * c - g.q * s);
  m(kE, kP) = -0.5 * (g.p * s + g.q * c);
  m(kQ, kQ) = c;
  m(kQ, kP) = -s;
  m(kP, kQ) = s;
  m(kP, kP) = c;
  return m;
}

inline Mat4 lambda_left(const GroupElement& g) {
  Mat4 m = Mat4::Identity();
  m(kE, kQ) = 0.5 * g.p;
  m(kE, kP) = -0.5 * g.q;
  m(kE, kAlpha) = 0.5 * g.radius_squared();
  m(kQ, kAlpha) = g.p;
  m(kP, kAlpha) = -g.q;
  return m;
}

inline Mat4 lambda_right(const GroupElement& g) {
  const double c = std::cos(g.alpha);
  const double s = std::sin(g.alpha);
  Mat4 m = Mat4::Identity();
  m(kE, kQ) = -0.5 * g.p;
  m(kE, kP) = 0.5 * g.q;
  m(kQ, kQ) = c;
  m(kQ, kP) = s;
  m(kP, kQ) = -s;
  m(kP, kP) = c;
  return m;
}

/// d(lambda_right)/d(a^k), k in (e, q, p, alpha) order.
inline std::array<Mat4, 4> lambda_right_gradient(const GroupElement& g) {
  std::array<Mat4, 4> d{Mat4::Zero(), Mat4::Zero(), Mat4::Zero(), Mat4::Zero()};
  d[kQ](kE, kP) = 0.5;
  d[kP](kE, kQ) = -0.5;
  const double c = std::cos(g.alpha);
  const double s = std::sin(g.alpha);
  d[kAlpha](kQ, kQ) = -s;
  d[kAlpha](kQ, kP) = c;
  d[kAlpha](kP, kQ) = -c;
  d[kAlpha](kP, kP) = -s;
  return d;
}

/// Adjoint action g X_i g^{-1} = D^j_i(g) X_j, i.e. D = lambda_R mu_L.
inline Mat4 adjoint(const GroupElement& g) { return lambda_right(g) * mu_left(g); }

/// Structure constants, c[k](i, j) = c^k_ij with [X_i, X_j] = i c^k_ij X_k.
using StructureConstants = std::array<Mat4, 4>;

/// Constants read off the commutators [Q,P] = iE, [Q,H] = iP, [P,H] = -iQ
/// (X_e = E, X_q = P, X_p = Q, X_alpha = H).
inline StructureConstants commutator_structure_constants() {
  StructureConstants c{Mat4::Zero(), Mat4::Zero(), Mat4::Zero(), Mat4::Zero()};
  c[kE](kP, kQ) = 1.0;
  c[kE](kQ, kP) = -1.0;
  c[kQ](kP, kAlpha) = 1.0;
  c[kQ](kAlpha, kP) = -1.0;
  c[kP](kQ, kAlpha) = -1.0;
  c[kP](kAlpha, kQ) = 1.0;
  return c;
}

inline StructureConstants negated(StructureConstants c) {
  for (auto& m : c) m = -m;
  return c;
}

}  // namespace osc

#endif  // OSC_FRAMES_HPP_
