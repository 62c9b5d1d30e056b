#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "molent/grid.hpp"
#include "molent/propagator.hpp"
#include "molent/scattering_model.hpp"

namespace molent {

/// Run configuration. Fields hold values in the units named by their config
/// keys (nm, um, ms, G, kHz, ...) so that a manifest written from a config
/// parses back to the identical config; the accessors convert to SI.
struct RunConfig {
  // Feshbach model
  std::string species = "K40";
  std::optional<double> atom_mass_amu;  // overrides the species table
  double a_bg_nm = 9.2;
  double b0_gauss = 202.1;
  double delta_b_gauss = 7.8;
  double omega_perp_khz = 69.0;  // omega_perp / 2 pi
  double pole_epsilon_gauss = 1e-6;
  double cir_bracket_floor = 1e-6;

  // Field sweep
  double b_start_gauss = 208.6;
  double b_span_gauss = 10.0;
  double b_dot_g_per_ms = 2.0;  // rate used by `simulate`
  std::vector<double> scan_b_dot_g_per_ms = {1.0, 2.0, 4.0, 8.0, 16.0};
  std::optional<double> hold_until_ms;  // defaults to t_final_ms

  // Grid and propagation
  double half_width_um = 120.0;
  std::size_t n_points = 8193;
  double dt_us = 1.0;
  Scheme scheme = Scheme::crank_nicolson;
  std::size_t check_interval_steps = 100;
  double leak_tolerance = 5e-3;
  double leak_radius_fraction = 0.9;
  bool refine_ground_state = false;
  double t_final_ms = 13.0;
  std::vector<double> snapshot_times_ms = {0.0, 13.0};

  // Center-of-mass packet widths: either R = dX0 / a_1D(0) or dX0 directly.
  std::vector<double> r_ratios;
  std::vector<double> delta_x0_um;

  std::string output_dir = "out";

  double atom_mass() const;  // kg
  FeshbachParams feshbach() const;
  SweepSchedule schedule(double rate_g_per_ms) const;
  double hold_until() const;  // s
  double t_final() const;     // s
  Grid1D grid() const;
  PropagatorConfig propagator() const;
  ResonanceLimits limits() const;

  /// a_1D at the start of the sweep [m].
  double initial_a1d() const;
  /// R values to scan: explicit r_ratios, else delta_x0 / a_1D(0), else 16
  /// log-spaced points on [0.05, 5].
  std::vector<double> resolved_r_ratios() const;

  /// Checks cross-field consistency (R vs dX0 exclusivity, positivity, ...).
  void validate() const;
};

/// Flat `key = value` text; '#' starts a comment; lists are comma separated.
/// Unknown or repeated keys are errors.
RunConfig parse_config(std::istream& in, std::string_view source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Every resolved setting as `key = value` lines (parseable by parse_config),
/// followed by derived quantities as comments.
std::string to_manifest(const RunConfig& cfg);

}  // namespace molent
