#include "molent/errors.hpp"

namespace molent {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::field_pole: return "field_pole";
    case ErrorCode::zero_scattering_length: return "zero_scattering_length";
    case ErrorCode::confinement_resonance: return "confinement_resonance";
    case ErrorCode::divergent_coupling: return "divergent_coupling";
    case ErrorCode::grid_resolution: return "grid_resolution";
    case ErrorCode::grid_domain: return "grid_domain";
    case ErrorCode::boundary_leak: return "boundary_leak";
    case ErrorCode::not_converged: return "not_converged";
    case ErrorCode::no_bound_state: return "no_bound_state";
    case ErrorCode::time_mismatch: return "time_mismatch";
    case ErrorCode::degenerate_correlation: return "degenerate_correlation";
    case ErrorCode::normalization: return "normalization";
    case ErrorCode::unknown_mode: return "unknown_mode";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace molent
