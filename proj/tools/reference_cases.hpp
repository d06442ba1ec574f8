#ifndef OSCX_REFERENCE_CASES_HPP_
#define OSCX_REFERENCE_CASES_HPP_

// Published shifted-oscillator results for a = 1, b = -1, d = 2 (Omega = 1).

#include <vector>

namespace oscx::reference {

struct Root {
  double nu_tilde;
  double length;
};

struct ShiftedCase {
  double lam2_over_omega4;
  double omega_t;
  double delta;
  std::vector<Root> roots;  // listed roots, compared to 1e-3
  double C;
  bool C_is_upper_bound;    // only "best found <= C" is claimed
};

inline const std::vector<ShiftedCase>& shifted_cases() {
  static const std::vector<ShiftedCase> cases{
      {50.0, 1.0, 0.0870, {{-1.0, 7.2111}}, 7.2111, false},
      {10.0, 1.0, 0.4351, {{-1.0, 3.464}, {-2.116, 3.817}, {2.905, 6.688}}, 3.464, false},
      {10.0, 10.0, 0.1088, {{-10.0, 34.641}, {-8.162, 34.359}, {-4.621, 26.391}}, 26.391, false},
      {50.0, 10.0, 0.0218, {{-10.0, 72.111}, {-8.112, 71.148}, {-4.698, 48.325}}, 48.325, false},
      {50.0, 50.0, 1.1418, {{-50.0, 360.555}}, 161.500, true},
      {10.0, 50.0, 5.7087, {}, 117.579, true},
  };
  return cases;
}

inline constexpr double kDeltaTol = 1e-4;
inline constexpr double kPrintedTol = 1e-3;

}  // namespace oscx::reference

#endif  // OSCX_REFERENCE_CASES_HPP_
