#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "osc/osc.hpp"
#include "reference_cases.hpp"

namespace oscx {
namespace {

using nlohmann::json;

std::string fmt(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string full(double x) { return fmt(x, 17); }
std::string short_(double x) { return fmt(x, 6); }

struct Options {
  std::vector<double> metric{1.0, 0.0, 1.0};
  std::string sign = "plus";
  std::string format = "text";
  int window_cap = 10000;
  double root_tol = 1e-12;

  std::vector<double> target;
  bool shifted = false;
  double lam2_over_omega4 = 0.0;
  std::optional<double> omega_t;
  bool evolution = false;
  std::vector<double> displacement;
  std::vector<double> algebra;
  bool quotient = false;
  double omega = 1.0;
  double h = 0.0;
  std::vector<long> rational;

  double delta = 0.25;
  double nu_min = -20.0;
  double nu_max = 20.0;
  int samples = 2001;

  unsigned long long seed = 1;
  int trials = 100;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

osc::Metric metric_of(const Options& o) { return {o.metric[0], o.metric[1], o.metric[2]}; }

osc::SolverOptions solver_of(const Options& o) {
  osc::SolverOptions s;
  s.window_cap = o.window_cap;
  s.root_tol = o.root_tol;
  return s;
}

std::optional<osc::Rationality> rationality_of(const Options& o) {
  if (o.rational.empty()) return std::nullopt;
  return osc::Rationality{o.rational[0], o.rational[1]};
}

// Target described by exactly one of the target flags.
struct Target {
  osc::GroupElement element;
  std::string description;
};

Target target_of(const Options& o) {
  const int chosen = !o.target.empty() + o.shifted + o.evolution + !o.displacement.empty() + !o.algebra.empty();
  if (chosen != 1) {
    throw InputError(
        "give exactly one of --target, --shifted-oscillator, --oscillator-evolution, --displacement, --algebra");
  }
  const osc::RepresentationSpec spec(o.omega, o.h, rationality_of(o));
  if (!o.target.empty()) {
    return {{o.target[0], o.target[1], o.target[2], o.target[3]}, "g(e, alpha, q, p)"};
  }
  if (!o.displacement.empty()) {
    return {osc::to_group_element(osc::Displacement{o.displacement[0], o.displacement[1]}, spec),
            "displacement"};
  }
  if (!o.algebra.empty()) {
    const osc::AlgebraElement x{o.algebra[0], o.algebra[1], o.algebra[2], o.algebra[3]};
    return {osc::to_group_element(osc::Generic{x}, spec), "exp(iX)"};
  }
  if (!o.omega_t) throw InputError("--omega-t is required");
  const double t = *o.omega_t / o.omega;
  if (o.evolution) {
    return {osc::to_group_element(osc::OscillatorEvolution{t}, spec), "oscillator evolution"};
  }
  if (o.lam2_over_omega4 < 0.0) throw InputError("--lam2-over-omega4 must be >= 0");
  const double lambda = std::sqrt(o.lam2_over_omega4) * o.omega * o.omega;
  return {osc::to_group_element(osc::ShiftedOscillator{t, lambda}, spec), "shifted oscillator"};
}

// ---------------------------------------------------------------------------
// complexity

const std::vector<std::string> kCandidateColumns{"kind", "nu_tilde", "branch_index", "length", "A",
                                                 "B",    "D",        "F",            "winner", "bound",
                                                 "window"};

int cmd_complexity(const Options& o, std::ostream& out) {
  const osc::Metric m = metric_of(o);
  const osc::EulerArnoldSign sign = osc::parse_sign(o.sign);
  const Target target = target_of(o);
  const osc::SolverOptions sopt = solver_of(o);

  osc::UnitaryComplexity uc;
  if (o.quotient) {
    const osc::RepresentationSpec spec(o.omega, o.h, rationality_of(o));
    uc = osc::quotient_complexity(target.element, osc::kernel(spec), m, sign, sopt);
  } else {
    uc.result = osc::complexity(osc::BoundaryProblem(m, target.element, sign), sopt);
    uc.C = uc.result.C;
    uc.representative = {target.element, 0, 0, 0.0};
    uc.representatives_considered = 1;
  }
  const osc::ComplexityResult& r = uc.result;
  const osc::GroupElement& g = uc.representative.element;
  const auto is_winner = [&](const osc::GeodesicCandidate& c) {
    return c.nu_tilde == r.winner.nu_tilde && c.kind == r.winner.kind && c.length == r.winner.length;
  };

  if (o.format == "json") {
    json j;
    j["C"] = r.C;
    j["nu_tilde"] = r.winner.nu_tilde;
    j["branch_index"] = r.winner.branch_index;
    j["certified_bound"] = r.certified_bound;
    j["window"] = r.window;
    j["sign"] = o.sign;
    j["metric"] = {m.a(), m.b(), m.d()};
    j["target"] = {{"e", g.e}, {"alpha", g.alpha}, {"q", g.q}, {"p", g.p}};
    j["kernel_shift"] = {{"e", uc.representative.e_shift}, {"alpha", uc.representative.alpha_shift}};
    j["candidates"] = json::array();
    for (const auto& c : r.all) {
      j["candidates"].push_back({{"kind", osc::to_string(c.kind)},
                                 {"nu_tilde", c.nu_tilde},
                                 {"branch_index", c.branch_index},
                                 {"length", c.length},
                                 {"A", c.params.A},
                                 {"B", c.params.B},
                                 {"D", c.params.D},
                                 {"F", c.params.F},
                                 {"winner", is_winner(c)}});
    }
    out << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    for (std::size_t i = 0; i < kCandidateColumns.size(); ++i) out << (i ? "," : "") << kCandidateColumns[i];
    out << '\n';
    for (const auto& c : r.all) {
      out << osc::to_string(c.kind) << ',' << full(c.nu_tilde) << ',' << c.branch_index << ',' << full(c.length)
          << ',' << full(c.params.A) << ',' << full(c.params.B) << ',' << full(c.params.D) << ','
          << full(c.params.F) << ',' << (is_winner(c) ? 1 : 0) << ',' << full(r.certified_bound) << ','
          << r.window << '\n';
    }
  } else {
    out << "target: " << target.description << " -> g(" << short_(g.e) << ", " << short_(g.alpha) << ", "
        << short_(g.q) << ", " << short_(g.p) << ")\n";
    if (o.quotient) {
      out << "kernel shift: e " << uc.representative.e_shift << ", alpha " << uc.representative.alpha_shift
          << " (" << uc.representatives_considered << " representatives)\n";
    }
    out << "C = " << short_(r.C) << "\n";
    out << "winner: nu_tilde = " << short_(r.winner.nu_tilde) << ", branch " << r.winner.branch_index << ", "
        << osc::to_string(r.winner.kind) << "\n";
    out << "certified: every geodesic outside |nu_tilde| < " << short_(osc::numeric::two_pi * (r.window + 1))
        << " has length >= " << short_(r.certified_bound) << "\n";
    out << "candidates (" << r.all.size() << "):\n";
    char line[160];
    std::snprintf(line, sizeof line, "  %-9s %13s %7s %13s\n", "kind", "nu_tilde", "branch", "length");
    out << line;
    for (const auto& c : r.all) {
      std::snprintf(line, sizeof line, "  %-9s %13.6g %7d %13.6g%s\n", std::string(osc::to_string(c.kind)).c_str(),
                    c.nu_tilde, c.branch_index, c.length, is_winner(c) ? "  *" : "");
      out << line;
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// plot-f

int cmd_plot_f(const Options& o, std::ostream& out) {
  if (o.samples < 2) throw InputError("--samples must be >= 2");
  if (!(o.nu_max > o.nu_min)) throw InputError("need --nu-min < --nu-max");
  const double delta = o.delta;
  const osc::SolverOptions sopt = solver_of(o);
  struct Row {
    std::string kind;
    double nu, f;
  };
  std::vector<Row> rows;
  for (int i = 0; i < o.samples; ++i) {
    const double nu = o.nu_min + (o.nu_max - o.nu_min) * i / (o.samples - 1);
    if (osc::numeric::nearest_nonzero_pole(nu).distance < sopt.pole_guard) continue;
    rows.push_back({"sample", nu, osc::f_of_nu(nu, delta)});
  }
  const int k_max = static_cast<int>(std::ceil(std::max(std::abs(o.nu_min), std::abs(o.nu_max)) / osc::numeric::two_pi));
  std::vector<Row> markers;
  for (int k = 0; k <= k_max; ++k) {
    if (k == 0 && delta <= 1.0 / 3.0) continue;
    const osc::BranchExtremum top = osc::branch_max(k, delta, sopt);
    markers.push_back({"branch_max", top.nu, top.f});
    markers.push_back({"branch_min", -top.nu, -top.f});
  }
  std::sort(markers.begin(), markers.end(), [](const Row& x, const Row& y) { return x.nu < y.nu; });
  for (const Row& r : markers) {
    if (r.nu >= o.nu_min && r.nu <= o.nu_max) rows.push_back(r);
  }
  const double slope = delta - 0.5;
  if (o.format == "json") {
    json j;
    j["delta"] = delta;
    j["asymptote_slope"] = slope;
    j["rows"] = json::array();
    for (const Row& r : rows) j["rows"].push_back({{"kind", r.kind}, {"nu", r.nu}, {"f", r.f}, {"asymptote", slope * r.nu}});
    out << j.dump(2) << '\n';
  } else {
    out << "kind,nu,f,asymptote\n";
    for (const Row& r : rows) out << r.kind << ',' << full(r.nu) << ',' << full(r.f) << ',' << full(slope * r.nu) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// reports shared by reproduce and verify

struct Check {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  // "abs": |computed - expected| <= tol, "le": computed <= expected + tol,
  // "gt": computed > expected, "info": reported only
  std::string relation;
  bool pass = false;
};

Check check_abs(std::string name, double computed, double expected, double tol) {
  return {std::move(name), computed, expected, tol, "abs", std::abs(computed - expected) <= tol};
}

Check check_le(std::string name, double computed, double expected, double tol) {
  return {std::move(name), computed, expected, tol, "le", computed <= expected + tol};
}

int print_report(const std::vector<Check>& checks, const std::string& format, std::ostream& out) {
  const bool all = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  if (format == "json") {
    json j;
    j["pass"] = all;
    j["checks"] = json::array();
    for (const Check& c : checks) {
      j["checks"].push_back({{"name", c.name}, {"computed", c.computed}, {"expected", c.expected},
                             {"tolerance", c.tolerance}, {"relation", c.relation}, {"pass", c.pass}});
    }
    out << j.dump(2) << '\n';
  } else if (format == "csv") {
    out << "name,computed,expected,tolerance,relation,pass\n";
    for (const Check& c : checks) {
      out << c.name << ',' << full(c.computed) << ',' << full(c.expected) << ',' << full(c.tolerance) << ','
          << c.relation << ',' << (c.pass ? 1 : 0) << '\n';
    }
  } else {
    char line[256];
    for (const Check& c : checks) {
      const char* status = c.relation == "info" ? "INFO" : c.pass ? "PASS" : "FAIL";
      if (c.relation == "info") {
        std::snprintf(line, sizeof line, "%-4s %-46s %14.6g\n", status, c.name.c_str(), c.computed);
      } else if (c.relation == "gt") {
        std::snprintf(line, sizeof line, "%-4s %-46s %14.6g > %.6g\n", status, c.name.c_str(), c.computed, c.expected);
      } else if (c.relation == "le") {
        std::snprintf(line, sizeof line, "%-4s %-46s %14.6g <= %.6g\n", status, c.name.c_str(), c.computed,
                      c.expected + c.tolerance);
      } else {
        std::snprintf(line, sizeof line, "%-4s %-46s %14.6g vs %-12.6g (tol %.1g)\n", status, c.name.c_str(),
                      c.computed, c.expected, c.tolerance);
      }
      out << line;
    }
    out << (all ? "all checks passed" : "some checks FAILED") << '\n';
  }
  return all ? kOk : kFailure;
}

// ---------------------------------------------------------------------------
// reproduce

std::vector<Check> reproduction_checks(osc::EulerArnoldSign sign) {
  std::vector<Check> checks;
  const osc::Metric m(1.0, -1.0, 2.0);
  const osc::RepresentationSpec spec(1.0, 0.0);
  for (const auto& c : reference::shifted_cases()) {
    const std::string tag = "l2=" + fmt(c.lam2_over_omega4, 3) + " wt=" + fmt(c.omega_t, 3) + " ";
    const osc::GroupElement g =
        osc::to_group_element(osc::ShiftedOscillator{c.omega_t, std::sqrt(c.lam2_over_omega4)}, spec);
    const osc::BoundaryProblem bp(m, g, sign);
    checks.push_back(check_abs(tag + "Delta", bp.delta(), c.delta, reference::kDeltaTol));
    const osc::ComplexityResult r = osc::complexity(bp);
    for (const auto& root : c.roots) {
      const auto near = std::min_element(r.all.begin(), r.all.end(), [&](const auto& x, const auto& y) {
        return std::abs(x.nu_tilde - root.nu_tilde) < std::abs(y.nu_tilde - root.nu_tilde);
      });
      checks.push_back(check_abs(tag + "root " + fmt(root.nu_tilde, 6), near->nu_tilde, root.nu_tilde,
                                 reference::kPrintedTol));
      checks.push_back(check_abs(tag + "length at " + fmt(root.nu_tilde, 6), near->length, root.length,
                                 reference::kPrintedTol));
    }
    if (c.C_is_upper_bound) {
      checks.push_back(check_le(tag + "C", r.C, c.C, reference::kPrintedTol));
    } else {
      checks.push_back(check_abs(tag + "C", r.C, c.C, reference::kPrintedTol));
    }
    checks.push_back({tag + "certified bound > C", r.certified_bound, r.C, 0.0, "gt", r.certified_bound > r.C});
  }

  // h = 0: alpha has period 4 pi in the quotient
  const osc::Metric m0(1.0, 0.0, 2.0);
  const osc::RepresentationSpec h0(1.0, 0.0, osc::Rationality{1, 2});
  for (double wt : {1.0, 5.0, 3.0 * osc::numeric::pi, 13.0, 7.5 * osc::numeric::pi, 40.0}) {
    const double s = std::fmod(wt, 4.0 * osc::numeric::pi);
    const double expected = std::sqrt(m0.d()) * (s < osc::numeric::two_pi ? s : 4.0 * osc::numeric::pi - s);
    const double got = osc::unitary_complexity(osc::OscillatorEvolution{wt}, h0, m0, sign).C;
    checks.push_back(check_abs("sawtooth wt=" + fmt(wt, 6), got, expected, 1e-8));
  }
  for (const auto& [q, p] : {std::pair{3.0, 4.0}, std::pair{1.0, 0.0}, std::pair{-0.3, 0.7}}) {
    const double got = osc::unitary_complexity(osc::Displacement{q, p}, spec, m, sign).C;
    checks.push_back(check_abs("displacement (" + fmt(q, 3) + "," + fmt(p, 3) + ")", got, std::hypot(q, p), 1e-9));
  }
  return checks;
}

int cmd_reproduce(const Options& o, std::ostream& out) {
  return print_report(reproduction_checks(osc::parse_sign(o.sign)), o.format, out);
}

// ---------------------------------------------------------------------------
// verify

double distance(const osc::GroupElement& x, const osc::GroupElement& y) {
  return (osc::to_vector(x) - osc::to_vector(y)).lpNorm<Eigen::Infinity>();
}

double distance(const osc::GeodesicParams& x, const osc::GeodesicParams& y) {
  return std::max({std::abs(x.A - y.A), std::abs(x.B - y.B), std::abs(x.D - y.D), std::abs(x.F - y.F)});
}

std::vector<Check> verification_checks(unsigned long long seed, int trials) {
  using namespace osc;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::uniform_real_distribution<double> pos(0.5, 2.0);
  const auto random_metric = [&] {
    for (;;) {
      const double a = pos(rng), b = u(rng), d = pos(rng) + b * b / a;
      if (a * d - b * b > 0.2) return Metric(a, b, d);
    }
  };
  const auto random_element = [&] { return GroupElement{u(rng), 2.0 * u(rng), u(rng), u(rng)}; };
  const auto random_params = [&](const Metric& m, EulerArnoldSign s) {
    for (;;) {
      const GeodesicParams gp{u(rng), u(rng), u(rng), u(rng)};
      const double nt = nu_tilde(m, gp, s);
      if (numeric::nearest_nonzero_pole(nt).distance > 0.05 && gp.D * gp.D + gp.F * gp.F > 1e-4) return gp;
    }
  };
  constexpr int kSteps = 2000;
  double group_err = 0, log_err = 0, rk4_err = 0, ode_err = 0, round_trip = 0, length_err = 0;
  double christoffel_err = 0, drift = 0, published_vs_christoffel = 0;
  for (int i = 0; i < trials; ++i) {
    const GroupElement g = random_element(), h = random_element(), k = random_element();
    group_err = std::max(group_err, distance(compose(compose(g, h), k), compose(g, compose(h, k))));
    group_err = std::max(group_err, distance(compose(g, inverse(g)), GroupElement::identity()));
    const AlgebraElement x{u(rng), u(rng), u(rng), 4.0 * u(rng)};
    log_err = std::max(log_err, (to_vector(log(exp(x))) - to_vector(x)).lpNorm<Eigen::Infinity>());
    log_err = std::max(log_err, distance(exp(log(g)), g));

    const Metric m = random_metric();
    for (EulerArnoldSign s : {EulerArnoldSign::plus, EulerArnoldSign::minus}) {
      const GeodesicParams gp = random_params(m, s);
      const GroupElement end = geodesic_point(m, gp, 1.0, s);
      rk4_err = std::max(rk4_err, distance(integrate_geodesic(m, gp, kSteps, s).back().coords, end));
      ode_err = std::max(
          ode_err, distance(integrate_geodesic(m, gp, kSteps, s, PiSource::euler_arnold_ode).back().coords, end));
      const BoundaryProblem bp(m, end, s);
      const double nt = nu_tilde(m, gp, s);
      const auto roots = enumerate_roots(bp, std::abs(branch_index(nt)) + 1);
      const auto near = std::min_element(roots.begin(), roots.end(), [&](double a, double b) {
        return std::abs(a - nt) < std::abs(b - nt);
      });
      round_trip = std::max(round_trip, distance(solve_constants(bp, *near), gp));
      length_err = std::max(length_err, std::abs(length_at_root(bp, *near) - speed(m, gp)));
      const GroupElement chris = integrate_christoffel(m, gp.initial_velocity(), kSteps).back().coords;
      if (s == EulerArnoldSign::minus) {
        christoffel_err = std::max(christoffel_err, distance(chris, end));
        drift = std::max(drift, conserved_along(m, sample_geodesic(m, gp, 200, s)).max());
      } else {
        published_vs_christoffel = std::max(published_vs_christoffel, distance(chris, end));
      }
    }
  }
  return {
      check_le("group axioms", group_err, 0.0, 1e-12),
      check_le("exp/log round trip", log_err, 0.0, 1e-10),
      check_le("closed form vs RK4 reconstruction", rk4_err, 0.0, 1e-8),
      check_le("closed form vs Euler-Arnold ODE", ode_err, 0.0, 1e-8),
      check_le("boundary round trip (A,B,D,F)", round_trip, 0.0, 1e-8),
      check_le("boundary round trip length", length_err, 0.0, 1e-9),
      check_le("Levi-Civita flow vs Christoffel", christoffel_err, 0.0, 1e-7),
      check_le("Levi-Civita flow integrals of motion", drift, 0.0, 1e-9),
      {"published sign vs Christoffel (info)", published_vs_christoffel, 0.0, 0.0, "info", true},
  };
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.trials < 1) throw InputError("--trials must be >= 1");
  return print_report(verification_checks(o.seed, o.trials), o.format, out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geodesic complexity on the oscillator group", "oscx"};
  app.require_subcommand(1);
  // -h would clash with the Casimir option --h
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_config("--config", "", "Flat key=value file with option defaults");
  Options o;

  app.add_option("--metric", o.metric, "Metric a,b,d")->delimiter(',')->expected(3);
  app.add_option("--sign", o.sign, "Euler-Arnold sign: plus (published) or minus (Levi-Civita)")
      ->check(CLI::IsMember({"plus", "minus"}));
  app.add_option("--format", o.format, "Output format")
      ->envname("OSCX_FORMAT")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--window-cap", o.window_cap, "Largest branch index scanned")->check(CLI::PositiveNumber);
  app.add_option("--root-tol", o.root_tol, "Bisection tolerance in nu_tilde")->check(CLI::PositiveNumber);

  app.add_option("--target", o.target, "Target g(e,alpha,q,p)")->delimiter(',')->expected(4);
  app.add_flag("--shifted-oscillator", o.shifted, "Target exp(-it(Omega H + lambda Q/Omega))");
  app.add_option("--lam2-over-omega4", o.lam2_over_omega4, "lambda^2/Omega^4");
  app.add_option("--omega-t", o.omega_t, "Omega t");
  app.add_flag("--oscillator-evolution", o.evolution, "Target exp(-it Omega H)");
  app.add_option("--displacement", o.displacement, "Target exp(i(pQ+qP)) given q,p")->delimiter(',')->expected(2);
  app.add_option("--algebra", o.algebra, "Target exp(iX) given xe,xq,xp,xalpha")->delimiter(',')->expected(4);
  app.add_flag("--quotient", o.quotient, "Minimize over translates by the representation kernel");
  app.add_option("--omega", o.omega, "Casimir Omega > 0")->check(CLI::PositiveNumber);
  app.add_option("--h", o.h, "Casimir h");
  app.add_option("--rational", o.rational, "k,l with h/Omega + 1/2 = k/l mod 1")->delimiter(',')->expected(2);

  app.add_option("--delta", o.delta, "Delta for plot-f");
  app.add_option("--nu-min", o.nu_min, "Lower end of the nu range");
  app.add_option("--nu-max", o.nu_max, "Upper end of the nu range");
  app.add_option("--samples", o.samples, "Number of samples");

  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--trials", o.trials, "Number of random trials");

  auto* complexity = app.add_subcommand("complexity", "Minimal geodesic length to a target")->fallthrough();
  auto* plot = app.add_subcommand("plot-f", "CSV samples of f(nu; Delta) with branch extrema")->fallthrough();
  auto* reproduce = app.add_subcommand("reproduce", "Recompute the published shifted-oscillator table")->fallthrough();
  auto* verify = app.add_subcommand("verify", "Randomized oracle cross-checks")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*complexity) return cmd_complexity(o, out);
    if (*plot) return cmd_plot_f(o, out);
    if (*reproduce) return cmd_reproduce(o, out);
    if (*verify) return cmd_verify(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const osc::Error& e) {
    err << "error: " << e.what() << '\n';
    const bool input = e.code() == osc::ErrorCode::invalid_metric || e.code() == osc::ErrorCode::invalid_argument ||
                       e.code() == osc::ErrorCode::degenerate_automorphism;
    return input ? kInvalidInput : kFailure;
  }
  return kInvalidInput;
}

}  // namespace oscx
