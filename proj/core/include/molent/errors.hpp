#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace molent {

enum class ErrorCode {
  invalid_argument,
  field_pole,
  zero_scattering_length,
  confinement_resonance,
  divergent_coupling,
  grid_resolution,
  grid_domain,
  boundary_leak,
  not_converged,
  no_bound_state,
  time_mismatch,
  degenerate_correlation,
  normalization,
  unknown_mode,
  config,
  io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// harness can report it as structured data instead of parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace molent
