#include "molent/scattering_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "molent/errors.hpp"
#include "molent/units.hpp"

namespace molent {
namespace {

template <typename... Args>
std::string concat(const Args&... args) {
  std::ostringstream os;
  os.precision(12);
  (os << ... << args);
  return os.str();
}

}  // namespace

void FeshbachParams::validate() const {
  if (!(background_length != 0.0) || !std::isfinite(background_length))
    throw Error(ErrorCode::invalid_argument, "background scattering length must be nonzero");
  if (!(resonance_width != 0.0) || !std::isfinite(resonance_width))
    throw Error(ErrorCode::invalid_argument, "resonance width must be nonzero");
  if (!std::isfinite(resonance_field))
    throw Error(ErrorCode::invalid_argument, "resonance position must be finite");
  if (!(omega_perp > 0.0) || !std::isfinite(omega_perp))
    throw Error(ErrorCode::invalid_argument, "transverse frequency must be positive");
  if (!(atom_mass > 0.0) || !std::isfinite(atom_mass))
    throw Error(ErrorCode::invalid_argument, "atom mass must be positive");
}

FeshbachParams FeshbachParams::potassium40() {
  FeshbachParams p;
  p.background_length = 9.2 * units::nanometer;
  p.resonance_field = 202.1;
  p.resonance_width = 7.8;
  p.omega_perp = 2.0 * units::pi * 69.0 * units::kilohertz;
  p.atom_mass = atomic_mass(Species::potassium40);
  return p;
}

double SweepSchedule::field_at(double t) const {
  return start_field + std::min(rate * std::max(t, 0.0), span);
}

void SweepSchedule::validate(const FeshbachParams& params) const {
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw Error(ErrorCode::invalid_argument, concat("sweep rate must be positive, got ", rate, " G/s"));
  if (!(span > 0.0) || !std::isfinite(span))
    throw Error(ErrorCode::invalid_argument, concat("sweep span must be positive, got ", span, " G"));
  if (!(hold_until > 0.0))
    throw Error(ErrorCode::invalid_argument, "hold time must be positive");
  // One part in 1e12 of slack so that span / rate == hold_until survives rounding.
  if (ramp_duration() > hold_until * (1.0 + 1e-12))
    throw Error(ErrorCode::invalid_argument,
                concat("ramp of ", span, " G at ", rate * units::millisecond, " G/ms lasts ",
                       ramp_duration() / units::millisecond, " ms, longer than the hold time ",
                       hold_until / units::millisecond, " ms"));
  if (!(start_field > params.resonance_field))
    throw Error(ErrorCode::field_pole,
                concat("sweep starting at ", start_field, " G does not stay above the resonance at ",
                       params.resonance_field, " G"));
}

SweepSchedule SweepSchedule::standard_ramp(double rate, double hold_until) {
  return SweepSchedule{208.6, 10.0, rate, hold_until};
}

double scattering_length(const FeshbachParams& params, double field, double pole_epsilon) {
  const double detuning = field - params.resonance_field;
  if (!(std::abs(detuning) >= pole_epsilon))
    throw Error(ErrorCode::field_pole,
                concat("field ", field, " G is within ", pole_epsilon, " G of the resonance pole"));
  return params.background_length * (1.0 - params.resonance_width / detuning);
}

double transverse_length(const FeshbachParams& params) {
  params.validate();
  return std::sqrt(units::hbar / (params.reduced_mass() * params.omega_perp));
}

double a1d_from_a(double a, double a_perp, const ResonanceLimits& limits) {
  if (!(std::abs(a) >= limits.min_scattering_length))
    throw Error(ErrorCode::zero_scattering_length,
                concat("3D scattering length ", a, " m is too close to zero"));
  const double bracket = a_perp / a + zeta_one_half;
  if (!(std::abs(bracket) >= limits.cir_bracket_floor))
    throw Error(ErrorCode::confinement_resonance,
                concat("a = ", a, " m sits on the confinement-induced resonance"));
  return -0.5 * a_perp * bracket;
}

double g1d(double a1d, double mu, double min_abs_a1d) {
  if (a1d == 0.0 || std::abs(a1d) < min_abs_a1d)
    throw Error(ErrorCode::divergent_coupling,
                concat("|a_1D| = ", std::abs(a1d), " m is below the floor ", min_abs_a1d, " m"));
  return -units::hbar * units::hbar / (mu * a1d);
}

double coupling_from_scattering_length(double a, double a_perp, double mu,
                                       const ResonanceLimits& limits) {
  if (a == 0.0) return 0.0;
  const double shifted = a_perp + zeta_one_half * a;  // a * (a_perp / a + zeta)
  if (!(std::abs(shifted) >= limits.cir_bracket_floor * std::abs(a)))
    throw Error(ErrorCode::confinement_resonance,
                concat("a = ", a, " m sits on the confinement-induced resonance"));
  const double a1d = -0.5 * a_perp * shifted / a;
  if (std::abs(a1d) < limits.min_abs_a1d)
    throw Error(ErrorCode::divergent_coupling,
                concat("|a_1D| = ", std::abs(a1d), " m is below the floor ", limits.min_abs_a1d, " m"));
  return 2.0 * units::hbar * units::hbar * a / (mu * a_perp * shifted);
}

double coupling_at_time(const FeshbachParams& params, const SweepSchedule& sched, double t,
                        const ResonanceLimits& limits) {
  if (!(t >= 0.0) || t > sched.hold_until * (1.0 + 1e-12))
    throw Error(ErrorCode::invalid_argument,
                concat("time ", t, " s outside the schedule [0, ", sched.hold_until, "]"));
  const double a = scattering_length(params, sched.field_at(t), limits.pole_epsilon);
  return coupling_from_scattering_length(a, transverse_length(params), params.reduced_mass(), limits);
}

void check_sweep_regular(const FeshbachParams& params, const SweepSchedule& sched,
                         const ResonanceLimits& limits) {
  params.validate();
  sched.validate(params);
  const double a_perp = transverse_length(params);
  const double a_start = scattering_length(params, sched.start_field, limits.pole_epsilon);
  const double a_end = scattering_length(params, sched.end_field(), limits.pole_epsilon);
  const double cir_root = -a_perp / zeta_one_half;
  if (std::min(a_start, a_end) <= cir_root && cir_root <= std::max(a_start, a_end))
    throw Error(ErrorCode::confinement_resonance,
                concat("sweep ", sched.start_field, " -> ", sched.end_field(),
                       " G crosses the confinement-induced resonance at a = ", cir_root, " m"));
  const double mu = params.reduced_mass();
  coupling_from_scattering_length(a_start, a_perp, mu, limits);
  coupling_from_scattering_length(a_end, a_perp, mu, limits);
}

}  // namespace molent
