#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "molent/atom_optics.hpp"
#include "molent/config.hpp"
#include "molent/pair_correlations.hpp"
#include "molent/propagator.hpp"

namespace molent {

/// Starting state of the sweep: the delta-well bound state at the start
/// field, relaxed onto the lattice ground state when refine_ground_state is set.
WaveFunction initial_state(const RunConfig& cfg);

/// Single dissociation at cfg.b_dot_g_per_ms, no I/O.
Propagation simulate_dissociation(const RunConfig& cfg);
/// Same evolution with an explicit rate and no snapshots.
Propagation simulate_dissociation(const RunConfig& cfg, double rate_g_per_ms);

/// Writes manifest.txt and snapshots/{pos,mom}_t<ms>.csv under out_dir. All
/// physics runs before the first file is opened, so a failing configuration
/// leaves nothing behind.
Propagation run_dissociation(const RunConfig& cfg, const std::filesystem::path& out_dir);

struct FidelitySurface {
  std::vector<FidelityRecord> rows;  // sorted by (b_dot, r_ratio)
  std::size_t propagation_count = 0;
};

/// One propagation per sweep rate, every R evaluated against its final state.
/// Rates are spread over `workers` threads; the result does not depend on it.
FidelitySurface compute_fidelity_surface(const RunConfig& cfg, std::size_t workers = 1);

/// Fidelity of a final state for one R = dX0 / a_1D(0).
FidelityRecord evaluate_cell(const RunConfig& cfg, const WaveFunction& final_state, double b_dot_g_per_ms,
                             double r_ratio);

/// Writes fidelity_surface.csv and manifest.txt.
FidelitySurface run_fidelity_surface(const RunConfig& cfg, const std::filesystem::path& out_dir,
                                     std::size_t workers = 1);

struct FringeRow {
  double phi = 0.0;
  optics::Coincidences c;
  double visibility = 0.0;
};

struct FringeScan {
  std::vector<FringeRow> entangled;  // |Phi->_path
  std::vector<FringeRow> dephased;   // incoherent |a1a2>, |b1b2> mixture
};

/// phi_k = 2 pi k / phi_count, k < phi_count. Requires phi_count >= 2.
FringeScan compute_fringe_scan(std::size_t phi_count);

/// Writes fringes.csv and fringes_dephased.csv.
FringeScan run_fringe_scan(std::size_t phi_count, const std::filesystem::path& out_dir);

void write_fringe_csv(std::ostream& os, const std::vector<FringeRow>& rows);

}  // namespace molent
