#pragma once

// Magnetic field -> 3D scattering length -> effective 1D scattering length ->
// 1D contact coupling, plus the field ramp that drives it.

namespace molent {

/// Riemann zeta at 1/2, stored rather than computed.
inline constexpr double zeta_one_half = -1.4603545088;

struct FeshbachParams {
  double background_length = 0.0;  // a_bg [m]
  double resonance_field = 0.0;    // B0 [G]
  double resonance_width = 0.0;    // Delta B [G]
  double omega_perp = 0.0;         // transverse trap [rad/s]
  double atom_mass = 0.0;          // single atom [kg]

  double reduced_mass() const { return 0.5 * atom_mass; }

  /// Throws Error(invalid_argument) when an invariant does not hold.
  void validate() const;

  /// 40K near the 202.1 G resonance in a 2pi x 69 kHz guide.
  static FeshbachParams potassium40();
};

/// B(t) = start_field + min(rate * t, span), held constant after the ramp.
struct SweepSchedule {
  double start_field = 0.0;  // [G]
  double span = 0.0;         // [G]
  double rate = 0.0;         // [G/s]
  double hold_until = 0.0;   // [s]

  double ramp_duration() const { return span / rate; }
  double end_field() const { return start_field + span; }
  double field_at(double t) const;

  /// Checks rate/span/hold consistency and that the sweep stays above B0.
  void validate(const FeshbachParams& params) const;

  /// 10 G up from 208.6 G at the given rate [G/s], held until `hold_until`.
  static SweepSchedule standard_ramp(double rate, double hold_until);
};

/// Thresholds that turn near-singular points of the model into errors.
struct ResonanceLimits {
  double pole_epsilon = 1e-6;             // |B - B0| [G]
  double min_scattering_length = 1e-18;   // |a| [m], only for a1d_from_a
  double cir_bracket_floor = 1e-6;        // |a_perp/a + zeta(1/2)|
  double min_abs_a1d = 0.0;               // |a_1D| [m]
};

/// a(B) = a_bg (1 - Delta B / (B - B0)).
double scattering_length(const FeshbachParams& params, double field,
                         double pole_epsilon = ResonanceLimits{}.pole_epsilon);

/// a_perp = sqrt(hbar / (mu omega_perp)) with mu = m / 2.
double transverse_length(const FeshbachParams& params);

/// a_1D = -(a_perp / 2) (a_perp / a + zeta(1/2)).
double a1d_from_a(double a, double a_perp, const ResonanceLimits& limits = {});

/// g_1D = -hbar^2 / (mu a_1D).
double g1d(double a1d, double mu, double min_abs_a1d = 0.0);

/// Same chain as g1d(a1d_from_a(a, a_perp), mu) but written so that a = 0
/// gives g = 0 instead of passing through an infinite a_1D.
double coupling_from_scattering_length(double a, double a_perp, double mu,
                                       const ResonanceLimits& limits = {});

double coupling_at_time(const FeshbachParams& params, const SweepSchedule& sched, double t,
                        const ResonanceLimits& limits = {});

/// Rejects schedules whose field range contains the 3D pole, the
/// confinement-induced resonance, or a point where |a_1D| < min_abs_a1d.
/// a(B) is monotone above B0, so the endpoints and the CIR root suffice.
void check_sweep_regular(const FeshbachParams& params, const SweepSchedule& sched,
                         const ResonanceLimits& limits = {});

}  // namespace molent
