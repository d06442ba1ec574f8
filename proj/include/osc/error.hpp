#ifndef OSC_ERROR_HPP_
#define OSC_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace osc {

enum class ErrorCode {
  invalid_metric,
  invalid_argument,
  not_in_exponential_image,
  degenerate_automorphism,
  pole_at_root,
  no_convergence,
  empty_window,
  singular_root,
  window_cap_exceeded,
  negative_amplitude_squared,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_metric: return "InvalidMetric";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::not_in_exponential_image: return "NotInExponentialImage";
    case ErrorCode::degenerate_automorphism: return "DegenerateAutomorphism";
    case ErrorCode::pole_at_root: return "PoleAtRoot";
    case ErrorCode::no_convergence: return "NoConvergence";
    case ErrorCode::empty_window: return "EmptyWindow";
    case ErrorCode::singular_root: return "SingularRoot";
    case ErrorCode::window_cap_exceeded: return "WindowCapExceeded";
    case ErrorCode::negative_amplitude_squared: return "NegativeAmplitudeSquared";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace osc

#endif  // OSC_ERROR_HPP_
