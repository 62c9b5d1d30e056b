#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "molent/grid.hpp"

namespace molent {

/// Free minimum-uncertainty Gaussian for the pair's center of mass.
struct CmPacket {
  double initial_width = 0.0;  // Delta X_0 [m]
  double total_mass = 0.0;     // 2 m [kg]
  double time = 0.0;           // [s]

  /// hbar / (4 m Delta X_0) with m the single-atom mass.
  double velocity_spread() const;
  /// sqrt(Delta X_0^2 + (t Delta V_0)^2).
  double width() const;
};

/// |phi(X, t)|^2.
double cm_density(const CmPacket& packet, double X);

/// Two-atom detection probabilities by side: pp = both at x > 0, nn = both
/// at x < 0, pn = atom 1 right and atom 2 left, np the reverse.
struct QuadrantProbabilities {
  double same_pp = 0.0;
  double same_nn = 0.0;
  double opposite_pn = 0.0;
  double opposite_np = 0.0;

  double total() const { return same_pp + same_nn + opposite_pn + opposite_np; }
};

/// Integrates |psi(x1 - x2)|^2 |phi((x1 + x2)/2)|^2 over each quadrant after
/// the X integral has been done in closed form:
///   pp = nn = sum_x |psi(x)|^2 erfc(|x| / (2 sqrt2 W)) / 2
///   pn = sum_{x>0} |psi(x)|^2 erf(x / (2 sqrt2 W)),  np likewise for x<0.
/// The sums carry the x = 0 sample at half weight per side plus the leading
/// endpoint correction for the kink of the kernels there.
/// The packet time must match psi.time() within `time_tolerance` seconds.
QuadrantProbabilities quadrant_probabilities(const WaveFunction& psi, const CmPacket& packet,
                                             double time_tolerance = 1e-9);

struct PathFidelity {
  double kappa = 0.0;
  double fidelity = 0.0;
};

/// kappa = pp / pn, F = 1 / (1 + kappa). Throws Error(degenerate_correlation)
/// when pn < 1e-12.
PathFidelity fidelity_from_quadrants(const QuadrantProbabilities& q);

struct FidelityRecord {
  double b_dot = 0.0;    // [G/s]
  double r_ratio = 0.0;  // Delta X_0 / a_1D(0)
  double kappa = 0.0;
  double fidelity = 0.0;
  std::string error;  // empty on success
};

/// Header b_dot_G_per_ms,r_ratio,kappa,fidelity,error.
void write_fidelity_csv(std::ostream& os, const std::vector<FidelityRecord>& rows);

}  // namespace molent
