#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "molent/grid.hpp"
#include "molent/scattering_model.hpp"

namespace molent {

enum class Scheme { crank_nicolson, strang_split };

std::string_view to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

struct PropagatorConfig {
  double dt = 1e-6;  // [s]; the run uses t_final / ceil(t_final / dt)
  Scheme scheme = Scheme::crank_nicolson;
  std::size_t check_interval = 100;  // steps between norm / leak samples
  double leak_tolerance = 5e-3;
  double leak_radius_fraction = 0.9;  // leak is the mass beyond this fraction of half_width
  std::vector<double> snapshot_times;  // absolute times [s]

  void validate() const;
};

struct EvolutionRecord {
  std::vector<double> times;
  std::vector<double> norms;
  std::vector<double> boundary_leak;
  std::vector<WaveFunction> snapshots;
  std::size_t steps = 0;
  double step = 0.0;  // actual time step [s]
};

struct Propagation {
  WaveFunction state;
  EvolutionRecord record;
};

/// g_1D as a function of absolute time.
using CouplingSchedule = std::function<double(double)>;

/// Discrete H psi: three-point Laplacian with zero (Dirichlet) boundaries and
/// the contact term g / dx on the center sample.
WaveFunction hamiltonian_apply(const WaveFunction& psi, double g, double mu);

/// Re<psi|H|psi> / <psi|psi>.
double energy_expectation(const WaveFunction& psi, double g, double mu);

/// ||H psi - <H> psi||^2 / ||psi||^2.
double energy_variance(const WaveFunction& psi, double g, double mu);

/// Evolves psi0 from psi0.time() to t_final. The coupling is sampled at the
/// midpoint of every step. Throws Error(boundary_leak) when the mass beyond
/// leak_radius_fraction * half_width exceeds the tolerance at a check.
Propagation propagate(const WaveFunction& psi0, const CouplingSchedule& coupling, double mu,
                      const PropagatorConfig& cfg, double t_final);

/// Evolution through a field sweep. The a_1D floor is raised to at least
/// ten grid spacings; the initial state must be normalized.
Propagation propagate(const WaveFunction& psi0, const FeshbachParams& params, const SweepSchedule& sched,
                      const PropagatorConfig& cfg, double t_final, ResonanceLimits limits = {});

/// Imaginary-time relaxation onto the discrete ground state of the contact
/// well. Converged when energy_variance / <H>^2 < tolerance.
WaveFunction ground_state_refine(const WaveFunction& psi0, double g, double mu, double tolerance = 1e-20,
                                 std::size_t max_iterations = 100);

}  // namespace molent
