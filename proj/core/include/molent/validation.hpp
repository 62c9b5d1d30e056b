#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "molent/config.hpp"
#include "molent/propagator.hpp"

namespace molent {

/// One oracle comparison. Every check is phrased as an error or deficit, so
/// it passes when measured <= tolerance.
struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

CheckResult make_check(std::string name, double measured, double tolerance, std::string detail = {});

/// Runs every analytic check against `cfg` (grid, schedule, propagator).
/// Reproductions of published constants always use the 40K parameter set.
std::vector<CheckResult> run_validation(const RunConfig& cfg);

bool all_passed(const std::vector<CheckResult>& checks);

/// Header name,measured,tolerance,status,detail.
void write_validation_report(std::ostream& os, const std::vector<CheckResult>& checks);

struct ConvergenceStudy {
  double window_start = 0.0;  // [s]
  double window_length = 0.0;
  double dt = 0.0;
  double coarse_error = 0.0;  // ||psi_dt - psi_ref||, reference at dt / 8
  double fine_error = 0.0;    // ||psi_dt/2 - psi_ref||
  double ratio() const { return coarse_error / fine_error; }
};

/// Evolves the configured sweep at the production step up to window_start,
/// then compares steps dt and dt/2 against dt/8 over the window.
ConvergenceStudy dt_convergence(const RunConfig& cfg, Scheme scheme, double window_start, double window_length,
                                double dt);

/// Start of a window of the given length centred on the time the coupling
/// crosses zero (a = 0), clamped to [0, t_final - length].
double zero_crossing_window_start(const RunConfig& cfg, double window_length);

/// L2 distance between Crank-Nicolson and Strang final states for the
/// configured sweep run to t_final with step dt.
double scheme_disagreement(const RunConfig& cfg, double t_final, double dt);

}  // namespace molent
