#ifndef OSC_REPRESENTATIONS_HPP_
#define OSC_REPRESENTATIONS_HPP_

// Unitaries of the irreducible representation with E = Omega, and
// HE - (Q^2 + P^2)/2 = h, as group elements modulo the representation kernel.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "osc/boundary.hpp"
#include "osc/error.hpp"
#include "osc/group.hpp"
#include "osc/metric.hpp"
#include "osc/numeric.hpp"

namespace osc {

/// h/Omega + 1/2 = k/l (mod 1).
struct Rationality {
  long k = 0;
  long l = 1;
};

struct RepresentationSpec {
  double omega = 1.0;
  double h = 0.0;
  std::optional<Rationality> rationality;

  RepresentationSpec(double omega_, double h_, std::optional<Rationality> r = std::nullopt)
      : omega(omega_), h(h_), rationality(r) {
    if (!(omega > 0.0) || !std::isfinite(omega) || !std::isfinite(h)) {
      throw Error(ErrorCode::invalid_argument, "need finite Omega > 0 and finite h");
    }
    if (rationality) {
      if (rationality->l < 1) throw Error(ErrorCode::invalid_argument, "rationality needs l >= 1");
      const double x = h / omega + 0.5 - static_cast<double>(rationality->k) / rationality->l;
      if (std::abs(x - std::round(x)) > 1e-12) {
        throw Error(ErrorCode::invalid_argument, "h/Omega + 1/2 != k/l mod 1");
      }
    }
  }
};

struct KernelInfo {
  double e_period = numeric::two_pi;
  std::optional<double> alpha_period;
};

inline KernelInfo kernel(const RepresentationSpec& spec) {
  KernelInfo info{numeric::two_pi / spec.omega, std::nullopt};
  if (spec.rationality) info.alpha_period = numeric::two_pi * static_cast<double>(spec.rationality->l);
  return info;
}

/// exp(2 pi i E/Omega)^k exp(2 pi i l H)^m.
inline GroupElement kernel_element(const KernelInfo& info, long k, long m = 0) {
  if (m != 0 && !info.alpha_period) {
    throw Error(ErrorCode::invalid_argument, "kernel has no alpha period");
  }
  return {static_cast<double>(k) * info.e_period,
          m == 0 ? 0.0 : static_cast<double>(m) * *info.alpha_period, 0.0, 0.0};
}

/// Energy levels h_n = n + 1/2 + h/Omega, n = 0..n_max.
inline std::vector<double> spectrum(const RepresentationSpec& spec, int n_max) {
  if (n_max < 0) throw Error(ErrorCode::invalid_argument, "n_max must be >= 0");
  std::vector<double> out;
  out.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) out.push_back(n + 0.5 + spec.h / spec.omega);
  return out;
}

// ---------------------------------------------------------------------------

/// exp(-i t Omega H)
struct OscillatorEvolution {
  double t = 0.0;
};

/// exp(i (p Q + q P))
struct Displacement {
  double q = 0.0;
  double p = 0.0;
};

/// exp(-i t (Omega H + lambda Q/Omega))
struct ShiftedOscillator {
  double t = 0.0;
  double lambda = 0.0;
};

/// exp(i X)
struct Generic {
  AlgebraElement x;
};

using NamedUnitary = std::variant<OscillatorEvolution, Displacement, ShiftedOscillator, Generic>;

namespace detail {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace detail

inline GroupElement to_group_element(const NamedUnitary& u, const RepresentationSpec& spec) {
  const double w = spec.omega;
  return std::visit(
      detail::overloaded{
          [&](const OscillatorEvolution& o) { return GroupElement{0.0, -w * o.t, 0.0, 0.0}; },
          [](const Displacement& d) { return GroupElement{0.0, 0.0, d.q, d.p}; },
          [&](const ShiftedOscillator& s) {
            const double wt = w * s.t;
            const double shift = s.lambda / (w * w);
            // the Q coefficient lands in the p slot, the P coefficient in the q slot
            return GroupElement{
                .e = 0.5 * shift * shift * (wt - std::sin(wt)),
                .alpha = -wt,
                .q = shift * (std::cos(wt) - 1.0),
                .p = -shift * std::sin(wt),
            };
          },
          [](const Generic& g) { return exp(g.x); },
      },
      u);
}

/// Algebra element X with U = exp(iX), when one is known in closed form.
inline std::optional<AlgebraElement> generator(const NamedUnitary& u, const RepresentationSpec& spec) {
  const double w = spec.omega;
  return std::visit(
      detail::overloaded{
          [&](const OscillatorEvolution& o) -> std::optional<AlgebraElement> {
            return AlgebraElement{0.0, 0.0, 0.0, -w * o.t};
          },
          [](const Displacement& d) -> std::optional<AlgebraElement> {
            return AlgebraElement{0.0, d.q, d.p, 0.0};
          },
          [&](const ShiftedOscillator& s) -> std::optional<AlgebraElement> {
            return AlgebraElement{0.0, 0.0, -s.lambda * s.t / w, -w * s.t};
          },
          [](const Generic& g) -> std::optional<AlgebraElement> { return g.x; },
      },
      u);
}

// ---------------------------------------------------------------------------

/// Lower bound on the length of any geodesic from the identity to g. Along a
/// geodesic B = alpha and |e - A| <= (D^2 + F^2)/(2 pi), and D^2 + F^2 >= r^2,
/// so l^2 >= min_A [a A^2 + 2 b A alpha + d alpha^2 + max(r^2, 2 pi |A - e|)].
inline double translate_lower_bound(const Metric& m, const GroupElement& g) {
  const double alpha = g.alpha;
  const auto central = [&](double A) { return m.a() * A * A + 2.0 * m.b() * A * alpha + m.d() * alpha * alpha; };
  const auto with_e = [&](double A) { return central(A) + numeric::two_pi * std::abs(A - g.e); };
  double best = with_e(g.e);
  const double above = -(numeric::pi + m.b() * alpha) / m.a();
  const double below = (numeric::pi - m.b() * alpha) / m.a();
  if (above > g.e) best = std::min(best, with_e(above));
  if (below < g.e) best = std::min(best, with_e(below));
  const double floor_r = m.determinant() / m.a() * alpha * alpha + g.radius_squared();
  return std::sqrt(std::max(best, floor_r));
}

struct Representative {
  GroupElement element;
  long e_shift = 0;
  long alpha_shift = 0;
  double lower_bound = 0.0;
};

/// Kernel translates of g whose length lower bound does not exceed
/// upper_bound, ordered by lower bound. g itself is always included.
inline std::vector<Representative> quotient_reduce(const GroupElement& g, const KernelInfo& k,
                                                   const Metric& m, double upper_bound) {
  const auto make = [&](long i, long j) {
    GroupElement x = g;
    x.e += static_cast<double>(i) * k.e_period;
    if (j != 0) x.alpha += static_cast<double>(j) * *k.alpha_period;
    return Representative{x, i, j, translate_lower_bound(m, x)};
  };
  std::vector<Representative> out{make(0, 0)};

  // min over e of the bound is sqrt(det/a) |alpha|
  long j_lo = 0, j_hi = 0;
  if (k.alpha_period) {
    const double reach = upper_bound * std::sqrt(m.a() / m.determinant());
    j_lo = static_cast<long>(std::floor((-reach - g.alpha) / *k.alpha_period));
    j_hi = static_cast<long>(std::ceil((reach - g.alpha) / *k.alpha_period));
  }
  for (long j = j_lo; j <= j_hi; ++j) {
    const double alpha = g.alpha + (j == 0 ? 0.0 : j * *k.alpha_period);
    const long centre = std::lround((-m.b() * alpha / m.a() - g.e) / k.e_period);
    for (int dir : {1, -1}) {
      for (long i = dir == 1 ? centre : centre - 1;; i += dir) {
        const Representative r = make(i, j);
        const bool past_minimum = dir == 1 ? i > centre + 1 : i < centre - 1;
        if (r.lower_bound > upper_bound) {
          if (past_minimum) break;
          continue;
        }
        if (i != 0 || j != 0) out.push_back(r);
      }
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return x.lower_bound < y.lower_bound; });
  return out;
}

struct UnitaryComplexity {
  double C = 0.0;
  Representative representative;
  ComplexityResult result;
  std::size_t representatives_considered = 0;
};

/// Complexity of g in the quotient by the kernel: the minimum over kernel
/// translates.
inline UnitaryComplexity quotient_complexity(const GroupElement& g, const KernelInfo& k, const Metric& m,
                                             EulerArnoldSign sign = EulerArnoldSign::plus,
                                             const SolverOptions& opt = {}) {
  UnitaryComplexity best;
  best.result = complexity(BoundaryProblem(m, g, sign), opt);
  best.C = best.result.C;
  best.representative = {g, 0, 0, translate_lower_bound(m, g)};
  const auto reps = quotient_reduce(g, k, m, best.C);
  best.representatives_considered = reps.size();
  for (const Representative& r : reps) {
    if (r.lower_bound >= best.C) break;
    if (r.e_shift == 0 && r.alpha_shift == 0) continue;
    ComplexityResult res = complexity(BoundaryProblem(m, r.element, sign), opt);
    if (res.C < best.C - opt.tie_tol) {
      best.C = res.C;
      best.representative = r;
      best.result = std::move(res);
    }
  }
  return best;
}

inline UnitaryComplexity unitary_complexity(const NamedUnitary& u, const RepresentationSpec& spec,
                                            const Metric& m, EulerArnoldSign sign = EulerArnoldSign::plus,
                                            const SolverOptions& opt = {}) {
  return quotient_complexity(to_group_element(u, spec), kernel(spec), m, sign, opt);
}

}  // namespace osc

#endif  // OSC_REPRESENTATIONS_HPP_
