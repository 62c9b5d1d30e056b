#include "molent/runners.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "molent/errors.hpp"
#include "molent/number_format.hpp"
#include "molent/units.hpp"

namespace molent {
namespace {

namespace fs = std::filesystem;

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create directory " + dir.string() + ": " + ec.message());
}

// Renders into memory first so that a half-written file never appears.
template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ostringstream buffer;
  writer(buffer);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot open " + path.string() + " for writing");
  const std::string text = buffer.str();
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw Error(ErrorCode::io, "failed writing " + path.string());
}

std::string describe(const std::exception& e) { return e.what(); }

}  // namespace

WaveFunction initial_state(const RunConfig& cfg) {
  const Grid1D grid = cfg.grid();
  const double a1d = cfg.initial_a1d();
  WaveFunction psi = init_bound_state(grid, a1d);
  if (cfg.refine_ground_state) {
    const FeshbachParams p = cfg.feshbach();
    psi = ground_state_refine(psi, g1d(a1d, p.reduced_mass()), p.reduced_mass());
  }
  return psi;
}

namespace {

Propagation sweep(const RunConfig& cfg, double rate_g_per_ms, const PropagatorConfig& pc) {
  cfg.validate();
  const FeshbachParams params = cfg.feshbach();
  const SweepSchedule sched = cfg.schedule(rate_g_per_ms);
  sched.validate(params);
  check_sweep_regular(params, sched, cfg.limits());
  return propagate(initial_state(cfg), params, sched, pc, cfg.t_final(), cfg.limits());
}

}  // namespace

Propagation simulate_dissociation(const RunConfig& cfg) { return sweep(cfg, cfg.b_dot_g_per_ms, cfg.propagator()); }

Propagation simulate_dissociation(const RunConfig& cfg, double rate_g_per_ms) {
  PropagatorConfig pc = cfg.propagator();
  pc.snapshot_times.clear();
  return sweep(cfg, rate_g_per_ms, pc);
}

Propagation run_dissociation(const RunConfig& cfg, const fs::path& out_dir) {
  Propagation result = simulate_dissociation(cfg);

  std::vector<double> names_ms = cfg.snapshot_times_ms;
  std::sort(names_ms.begin(), names_ms.end());

  ensure_directory(out_dir / "snapshots");
  write_file(out_dir / "manifest.txt", [&](std::ostream& os) { os << to_manifest(cfg); });
  for (std::size_t i = 0; i < result.record.snapshots.size(); ++i) {
    const WaveFunction& snap = result.record.snapshots[i];
    const std::string stem = "_t" + format_double(names_ms[i]) + ".csv";
    write_file(out_dir / "snapshots" / ("pos" + stem), [&](std::ostream& os) { write_position_csv(os, snap); });
    write_file(out_dir / "snapshots" / ("mom" + stem),
               [&](std::ostream& os) { write_momentum_csv(os, momentum_distribution(snap)); });
  }
  return result;
}

FidelityRecord evaluate_cell(const RunConfig& cfg, const WaveFunction& final_state, double b_dot_g_per_ms,
                             double r_ratio) {
  FidelityRecord row;
  row.b_dot = units::gauss_per_ms(b_dot_g_per_ms);
  row.r_ratio = r_ratio;
  try {
    const CmPacket packet{r_ratio * cfg.initial_a1d(), 2.0 * cfg.atom_mass(), final_state.time()};
    const PathFidelity f = fidelity_from_quadrants(quadrant_probabilities(final_state, packet));
    row.kappa = f.kappa;
    row.fidelity = f.fidelity;
  } catch (const std::exception& e) {
    row.kappa = std::nan("");
    row.fidelity = std::nan("");
    row.error = describe(e);
  }
  return row;
}

FidelitySurface compute_fidelity_surface(const RunConfig& cfg, std::size_t workers) {
  cfg.validate();
  const std::vector<double> rates = cfg.scan_b_dot_g_per_ms;
  const std::vector<double> ratios = cfg.resolved_r_ratios();
  if (rates.empty() || ratios.empty())
    throw Error(ErrorCode::config, "fidelity surface needs at least one sweep rate and one R value");

  std::vector<std::vector<FidelityRecord>> per_rate(rates.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> propagations{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < rates.size(); i = next++) {
      auto& rows = per_rate[i];
      try {
        const Propagation run = simulate_dissociation(cfg, rates[i]);
        ++propagations;
        for (double r : ratios) rows.push_back(evaluate_cell(cfg, run.state, rates[i], r));
      } catch (const std::exception& e) {
        ++propagations;
        for (double r : ratios) {
          FidelityRecord row;
          row.b_dot = units::gauss_per_ms(rates[i]);
          row.r_ratio = r;
          row.kappa = std::nan("");
          row.fidelity = std::nan("");
          row.error = describe(e);
          rows.push_back(row);
        }
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(workers, 1, rates.size());
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  FidelitySurface surface;
  surface.propagation_count = propagations.load();
  for (auto& rows : per_rate) surface.rows.insert(surface.rows.end(), rows.begin(), rows.end());
  std::stable_sort(surface.rows.begin(), surface.rows.end(), [](const FidelityRecord& a, const FidelityRecord& b) {
    return a.b_dot != b.b_dot ? a.b_dot < b.b_dot : a.r_ratio < b.r_ratio;
  });
  return surface;
}

FidelitySurface run_fidelity_surface(const RunConfig& cfg, const fs::path& out_dir, std::size_t workers) {
  FidelitySurface surface = compute_fidelity_surface(cfg, workers);
  ensure_directory(out_dir);
  write_file(out_dir / "manifest.txt", [&](std::ostream& os) { os << to_manifest(cfg); });
  write_file(out_dir / "fidelity_surface.csv", [&](std::ostream& os) { write_fidelity_csv(os, surface.rows); });
  return surface;
}

FringeScan compute_fringe_scan(std::size_t phi_count) {
  if (phi_count < 2) throw Error(ErrorCode::invalid_argument, "fringe scan needs at least two phase values");
  const double s = 1.0 / std::sqrt(2.0);
  const optics::TwoParticleState bell = optics::molecule_bs(s, -s);
  const optics::MixedState mixture = optics::MixedState::incoherent_pairs(s, -s);
  const double v_bell = optics::fringe_visibility(bell);
  const double v_mix = optics::fringe_visibility(mixture);

  FringeScan scan;
  for (std::size_t k = 0; k < phi_count; ++k) {
    const double phi = 2.0 * units::pi * static_cast<double>(k) / static_cast<double>(phi_count);
    scan.entangled.push_back({phi, optics::fringe_point(bell, phi), v_bell});
    scan.dephased.push_back({phi, optics::fringe_point(mixture, phi), v_mix});
  }
  return scan;
}

void write_fringe_csv(std::ostream& os, const std::vector<FringeRow>& rows) {
  os << "phi_rad,c_a1a2,c_b1b2,c_a1b2,c_b1a2,visibility\n";
  std::string line;
  for (const auto& r : rows) {
    line.clear();
    for (double v : {r.phi, r.c.a1a2, r.c.b1b2, r.c.a1b2, r.c.b1a2}) {
      append_double(line, v);
      line += ',';
    }
    append_double(line, r.visibility);
    line += '\n';
    os << line;
  }
}

FringeScan run_fringe_scan(std::size_t phi_count, const fs::path& out_dir) {
  FringeScan scan = compute_fringe_scan(phi_count);
  ensure_directory(out_dir);
  write_file(out_dir / "fringes.csv", [&](std::ostream& os) { write_fringe_csv(os, scan.entangled); });
  write_file(out_dir / "fringes_dephased.csv", [&](std::ostream& os) { write_fringe_csv(os, scan.dephased); });
  return scan;
}

}  // namespace molent
