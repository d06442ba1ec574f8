#ifndef OSC_BOUNDARY_HPP_
#define OSC_BOUNDARY_HPP_

// Geodesic boundary problem identity -> g. With r^2 = q^2 + p^2 > 0 every
// geodesic reaching g is labelled by a root nu_tilde of
//
//   f(nu_tilde; s Delta) = Gamma,   f(x; Delta) = Delta x + (sin x - x)/(1 - cos x),
//
// Delta = 4/(a r^2), Gamma = (e + (b + 1 + s) alpha/a) 4/r^2, s the Euler-Arnold
// sign. Targets with q = p = 0 are solved directly (solve_central).

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "osc/error.hpp"
#include "osc/group.hpp"
#include "osc/metric.hpp"
#include "osc/numeric.hpp"

namespace osc {

/// Targets with q^2 + p^2 at or below this are treated as lying on the centre.
inline constexpr double kDegenerateRadiusSquared = 1e-16;

struct SolverOptions {
  double root_tol = 1e-12;
  double pole_guard = 1e-8;
  double tie_tol = 1e-9;
  int initial_window = 3;
  int window_cap = 10000;
  int max_iterations = 200;
};

/// f(nu; Delta). Throws PoleAtRoot within kExcludedSetTolerance of 2 pi k, k != 0.
inline double f_of_nu(double nu, double delta) {
  if (numeric::nearest_nonzero_pole(nu).distance < kExcludedSetTolerance) {
    throw Error(ErrorCode::pole_at_root, "f is singular at nu = " + std::to_string(nu));
  }
  return delta * nu - numeric::x_minus_sin_over_one_minus_cos(nu);
}

inline double f_prime(double nu, double delta) {
  return delta + numeric::derivative_of_boundary_term(nu);
}

/// Large-k position of the maximum on (2 pi k, 2 pi (k+1)).
inline double branch_max_asymptotic(int k, double delta) {
  const double m = (2.0 * k + 1.0) * numeric::pi;
  return m - 4.0 * (1.0 - delta) / m;
}

/// Large-k value of that maximum. Expanding f about (2k+1) pi to second order
/// gives 2 (1 - Delta)^2 for the 1/m coefficient; the often quoted
/// 2 (1 - Delta)(2 - Delta) is off by 2 (1 - Delta)/m.
inline double branch_max_value_asymptotic(int k, double delta) {
  const double m = (2.0 * k + 1.0) * numeric::pi;
  return (delta - 0.5) * m + 2.0 * (1.0 - delta) * (1.0 - delta) / m;
}

struct BranchExtremum {
  double nu = 0.0;
  double f = 0.0;
};

namespace detail {

/// Bisection for a sign change of fn on [lo, hi]; nullopt if fn(lo), fn(hi)
/// share a strict sign.
inline std::optional<double> bisect(const std::function<double(double)>& fn, double lo, double hi,
                                    const SolverOptions& opt) {
  double flo = fn(lo);
  const double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) return std::nullopt;
  for (int it = 0; it < opt.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= opt.root_tol || mid <= lo || mid >= hi) return mid;
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  if (hi - lo <= 1e3 * opt.root_tol) return 0.5 * (lo + hi);
  throw Error(ErrorCode::no_convergence, "bisection did not converge on [" + std::to_string(lo) +
                                             ", " + std::to_string(hi) + "]");
}

/// Unique zero of the decreasing function f' on [lo, hi].
inline double critical_point(double delta, double lo, double hi, double seed,
                             const SolverOptions& opt) {
  const auto fp = [delta](double x) { return f_prime(x, delta); };
  if (seed > lo && seed < hi) {
    const double fs = fp(seed);
    if (fs == 0.0) return seed;
    if (fs > 0.0) {
      lo = seed;
    } else {
      hi = seed;
    }
  }
  const auto root = bisect(fp, lo, hi, opt);
  if (!root) {
    throw Error(ErrorCode::no_convergence,
                "no critical point of f on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return *root;
}

}  // namespace detail

/// Extremum of f on (2 pi k, 2 pi (k+1)) for k >= 1: the unique maximum of the
/// concave branch. For k = 0 the interior maximum on (0, 2 pi), which exists
/// only for Delta > 1/3; otherwise f is decreasing there and {0, 0} (the
/// inflection point) is returned.
inline BranchExtremum branch_max(int k, double delta, const SolverOptions& opt = {}) {
  if (k < 0) throw Error(ErrorCode::invalid_argument, "branch_max needs k >= 0");
  const double lo = numeric::two_pi * k + opt.pole_guard;
  const double hi = numeric::two_pi * (k + 1) - opt.pole_guard;
  if (k == 0) {
    if (delta <= 1.0 / 3.0) return {};
    const double nu = detail::critical_point(delta, 0.0, hi, numeric::pi, opt);
    return {nu, f_of_nu(nu, delta)};
  }
  const double nu = detail::critical_point(delta, lo, hi, branch_max_asymptotic(k, delta), opt);
  return {nu, f_of_nu(nu, delta)};
}

/// Roots of f(nu; delta) = gamma in (-2 pi, 2 pi), ascending.
inline std::vector<double> central_roots(double delta, double gamma, const SolverOptions& opt = {}) {
  const double edge = numeric::two_pi - opt.pole_guard;
  const auto fn = [&](double x) { return f_of_nu(x, delta) - gamma; };
  std::vector<double> cuts{-edge};
  if (delta > 1.0 / 3.0) {
    const double c = branch_max(0, delta, opt).nu;
    cuts.push_back(-c);
    cuts.push_back(c);
  }
  cuts.push_back(edge);
  if (fn(-edge) <= 0.0 || fn(edge) >= 0.0) {
    throw Error(ErrorCode::singular_root, "root inside the pole guard of (-2pi, 2pi)");
  }
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (auto r = detail::bisect(fn, cuts[i], cuts[i + 1], opt)) {
      if (roots.empty() || std::abs(*r - roots.back()) > opt.root_tol) roots.push_back(*r);
    }
  }
  return roots;
}

/// Roots of f(nu; delta) = gamma in (2 pi k, 2 pi (k+1)), k >= 1, ascending.
inline std::vector<double> side_roots(int k, double delta, double gamma, const SolverOptions& opt = {}) {
  const double lo = numeric::two_pi * k + opt.pole_guard;
  const double hi = numeric::two_pi * (k + 1) - opt.pole_guard;
  const BranchExtremum top = branch_max(k, delta, opt);
  if (top.f < gamma) return {};
  if (top.f == gamma) return {top.nu};
  const auto fn = [&](double x) { return f_of_nu(x, delta) - gamma; };
  if (fn(lo) >= 0.0 || fn(hi) >= 0.0) {
    throw Error(ErrorCode::singular_root,
                "root inside the pole guard of branch " + std::to_string(k));
  }
  std::vector<double> roots;
  for (const auto& [a, b] : {std::pair{lo, top.nu}, std::pair{top.nu, hi}}) {
    if (auto r = detail::bisect(fn, a, b, opt)) roots.push_back(*r);
  }
  return roots;
}

/// Branch containing nu: the k with nu in [2 pi k, 2 pi (k+1)).
inline int branch_index(double nu) { return static_cast<int>(std::floor(nu / numeric::two_pi)); }

// ---------------------------------------------------------------------------

class BoundaryProblem {
 public:
  BoundaryProblem(const Metric& metric, const GroupElement& target,
                  EulerArnoldSign sign = EulerArnoldSign::plus)
      : metric_(metric), target_(target), sign_(sign) {
    if (!(std::isfinite(target.e) && std::isfinite(target.alpha) && std::isfinite(target.q) &&
          std::isfinite(target.p))) {
      throw Error(ErrorCode::invalid_argument, "target coordinates must be finite");
    }
  }

  const Metric& metric() const { return metric_; }
  const GroupElement& target() const { return target_; }
  EulerArnoldSign sign() const { return sign_; }
  double radius_squared() const { return target_.radius_squared(); }
  bool degenerate() const { return radius_squared() <= kDegenerateRadiusSquared; }

  /// 4/(a r^2)
  double delta() const {
    require_nondegenerate();
    return 4.0 / (metric_.a() * radius_squared());
  }

  /// Delta as it enters f: s Delta.
  double effective_delta() const { return sign_value(sign_) * delta(); }

  double gamma() const {
    require_nondegenerate();
    const double s = sign_value(sign_);
    return (target_.e + (metric_.b() + 1.0 + s) * target_.alpha / metric_.a()) * 4.0 /
           radius_squared();
  }

 private:
  void require_nondegenerate() const {
    if (degenerate()) {
      throw Error(ErrorCode::invalid_argument, "Delta and Gamma need q^2 + p^2 > 0");
    }
  }

  Metric metric_;
  GroupElement target_;
  EulerArnoldSign sign_;
};

/// Roots with |nu| < 2 pi (window + 1): the central interval plus `window`
/// side intervals on each side. Sorted by (branch_index, nu).
inline std::vector<double> enumerate_roots(const BoundaryProblem& bp, int window,
                                           const SolverOptions& opt = {}) {
  if (window < 0) throw Error(ErrorCode::empty_window, "window must be >= 0");
  const double delta = bp.effective_delta();
  const double gamma = bp.gamma();
  std::vector<double> roots = central_roots(delta, gamma, opt);
  for (int k = 1; k <= window; ++k) {
    for (double r : side_roots(k, delta, gamma, opt)) roots.push_back(r);
    for (double r : side_roots(k, delta, -gamma, opt)) roots.push_back(-r);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Integration constants of the geodesic with root nu_tilde.
inline GeodesicParams solve_constants(const BoundaryProblem& bp, double nu_tilde) {
  const Metric& m = bp.metric();
  const GroupElement& g = bp.target();
  const double s = sign_value(bp.sign());
  GeodesicParams gp;
  gp.B = g.alpha;
  gp.A = (s * (nu_tilde - g.alpha) - (m.b() + 1.0) * g.alpha) / m.a();
  if (bp.degenerate()) return gp;
  if (numeric::nearest_nonzero_pole(nu_tilde).distance < kExcludedSetTolerance) {
    throw Error(ErrorCode::singular_root, "nu_tilde = " + std::to_string(nu_tilde) +
                                              " is a nonzero multiple of 2*pi");
  }
  const double kappa = numeric::half_cot(nu_tilde);
  gp.D = g.p * kappa - 0.5 * g.q * nu_tilde;
  gp.F = g.q * kappa + 0.5 * g.p * nu_tilde;
  return gp;
}

namespace detail {
/// (a eta(Pi, Pi) restricted to the (e, alpha) block) for the root nu_tilde.
inline double central_length_squared(const BoundaryProblem& bp, double nu_tilde) {
  const Metric& m = bp.metric();
  const double s = sign_value(bp.sign());
  const double alpha = bp.target().alpha;
  const double u = s * nu_tilde - (s + 1.0) * alpha;
  return (u * u + m.determinant() * alpha * alpha) / m.a();
}
}  // namespace detail

inline double length_at_root(const BoundaryProblem& bp, double nu_tilde) {
  if (!bp.degenerate() && numeric::nearest_nonzero_pole(nu_tilde).distance < kExcludedSetTolerance) {
    throw Error(ErrorCode::singular_root, "nu_tilde = " + std::to_string(nu_tilde) +
                                              " is a nonzero multiple of 2*pi");
  }
  const double planar = bp.degenerate()
                            ? 0.0
                            : bp.radius_squared() * numeric::nu2_over_two_one_minus_cos(nu_tilde);
  return std::sqrt(detail::central_length_squared(bp, nu_tilde) + planar);
}

/// Lower bound on length_at_root(bp, nu), from 1 - cos(nu) <= 2.
inline double lower_bound(const BoundaryProblem& bp, double nu) {
  return std::sqrt(detail::central_length_squared(bp, nu) + 0.25 * nu * nu * bp.radius_squared());
}

/// min of lower_bound over |nu| >= radius.
inline double tail_lower_bound(const BoundaryProblem& bp, double radius) {
  const Metric& m = bp.metric();
  const double s = sign_value(bp.sign());
  const double c = (s + 1.0) * bp.target().alpha;
  const double curvature = 1.0 / m.a() + 0.25 * bp.radius_squared();
  const double vertex = s * c / m.a() / curvature;
  if (std::abs(vertex) >= radius) return lower_bound(bp, vertex);
  return std::min(lower_bound(bp, radius), lower_bound(bp, -radius));
}

enum class CandidateKind { root, principal, looping };

inline std::string_view to_string(CandidateKind k) {
  switch (k) {
    case CandidateKind::root: return "root";
    case CandidateKind::principal: return "principal";
    case CandidateKind::looping: return "looping";
  }
  return "unknown";
}

struct GeodesicCandidate {
  double nu_tilde = 0.0;
  GeodesicParams params;
  double length = 0.0;
  int branch_index = 0;
  CandidateKind kind = CandidateKind::root;
};

struct ComplexityResult {
  double C = 0.0;
  GeodesicCandidate winner;
  std::vector<GeodesicCandidate> all;
  /// Lower bound on every length outside the scanned window.
  double certified_bound = 0.0;
  int window = 0;
};

inline GeodesicCandidate make_candidate(const BoundaryProblem& bp, double nu_tilde) {
  return {nu_tilde, solve_constants(bp, nu_tilde), length_at_root(bp, nu_tilde),
          branch_index(nu_tilde), CandidateKind::root};
}

/// Principal candidate for a target with q = p = 0, and the looping family
/// nu_tilde = 2 pi k for 1 <= |k| <= window whenever D^2 + F^2 = 2 nu_tilde (A - e) >= 0.
inline std::vector<GeodesicCandidate> solve_central(const BoundaryProblem& bp, int window = 0) {
  const Metric& m = bp.metric();
  const GroupElement& g = bp.target();
  const double s = sign_value(bp.sign());
  std::vector<GeodesicCandidate> out;
  const double principal = g.alpha + s * (m.a() * g.e + (m.b() + 1.0) * g.alpha);
  out.push_back({principal, solve_constants(bp, principal),
                 std::sqrt(detail::central_length_squared(bp, principal)), branch_index(principal),
                 CandidateKind::principal});
  for (int k = -window; k <= window; ++k) {
    if (k == 0) continue;
    const double nu = numeric::two_pi * k;
    GeodesicParams gp = solve_constants(bp, nu);
    const double amplitude_squared = 2.0 * nu * (gp.A - g.e);
    if (amplitude_squared < 0.0) continue;
    gp.D = std::sqrt(amplitude_squared);
    out.push_back({nu, gp, speed(m, gp), k, CandidateKind::looping});
  }
  return out;
}

namespace detail {
inline bool better(const GeodesicCandidate& x, const GeodesicCandidate& y, double tie_tol) {
  if (std::abs(x.length - y.length) > tie_tol) return x.length < y.length;
  if (std::abs(x.nu_tilde) != std::abs(y.nu_tilde)) return std::abs(x.nu_tilde) < std::abs(y.nu_tilde);
  return x.nu_tilde < y.nu_tilde;
}
}  // namespace detail

/// Minimal geodesic length from the identity to the target. The window of
/// scanned branches doubles until no geodesic outside it can be shorter.
inline ComplexityResult complexity(const BoundaryProblem& bp, const SolverOptions& opt = {}) {
  if (opt.initial_window < 0) throw Error(ErrorCode::empty_window, "initial window must be >= 0");
  ComplexityResult res;
  int window = std::min(opt.initial_window, opt.window_cap);
  int scanned = -1;  // side branches 1..scanned already enumerated
  double delta = 0.0, gamma = 0.0;
  if (!bp.degenerate()) {
    delta = bp.effective_delta();
    gamma = bp.gamma();
  }
  for (;;) {
    if (bp.degenerate()) {
      res.all = solve_central(bp, window);
    } else {
      if (scanned < 0) {
        for (double r : central_roots(delta, gamma, opt)) res.all.push_back(make_candidate(bp, r));
        scanned = 0;
      }
      for (int k = scanned + 1; k <= window; ++k) {
        for (double r : side_roots(k, delta, gamma, opt)) res.all.push_back(make_candidate(bp, r));
        for (double r : side_roots(k, delta, -gamma, opt)) res.all.push_back(make_candidate(bp, -r));
      }
      scanned = window;
    }
    const auto best = std::min_element(res.all.begin(), res.all.end(),
                                       [&](const auto& x, const auto& y) { return detail::better(x, y, opt.tie_tol); });
    res.winner = *best;
    res.C = best->length;
    res.window = window;
    res.certified_bound = tail_lower_bound(bp, numeric::two_pi * (window + 1));
    if (res.certified_bound > res.C) break;
    if (window >= opt.window_cap) {
      throw Error(ErrorCode::window_cap_exceeded,
                  "minimum not certified within |k| <= " + std::to_string(opt.window_cap) +
                      " (best " + std::to_string(res.C) + ", bound " +
                      std::to_string(res.certified_bound) + ")");
    }
    window = std::min(std::max(2 * window, 1), opt.window_cap);
  }
  std::sort(res.all.begin(), res.all.end(), [](const auto& x, const auto& y) {
    return x.branch_index != y.branch_index ? x.branch_index < y.branch_index : x.nu_tilde < y.nu_tilde;
  });
  return res;
}

inline ComplexityResult complexity(const Metric& m, const GroupElement& target,
                                   EulerArnoldSign sign = EulerArnoldSign::plus,
                                   const SolverOptions& opt = {}) {
  return complexity(BoundaryProblem(m, target, sign), opt);
}

/// Target whose complexity is attained at nu_tilde = (2k+1) pi under the plus
/// sign: alpha = (2k+1)(Delta+1)/Delta pi/2, q^2 + p^2 = 4/(a Delta), and e
/// chosen so that (2k+1) pi solves the boundary equation.
inline GroupElement minima_at_odd_pi(int k, const Metric& m, double delta) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "minima_at_odd_pi needs k >= 1");
  if (!(delta > 0.0)) throw Error(ErrorCode::invalid_argument, "minima_at_odd_pi needs Delta > 0");
  const double nu = (2.0 * k + 1.0) * numeric::pi;
  const double alpha = (2.0 * k + 1.0) * (delta + 1.0) / delta * numeric::pi / 2.0;
  const double r2 = 4.0 / (m.a() * delta);
  const double gamma = f_of_nu(nu, delta);
  return {.e = gamma * r2 / 4.0 - (m.b() + 2.0) * alpha / m.a(), .alpha = alpha, .q = std::sqrt(r2), .p = 0.0};
}

}  // namespace osc

#endif  // OSC_BOUNDARY_HPP_
