#include "molent/validation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "molent/atom_optics.hpp"
#include "molent/errors.hpp"
#include "molent/number_format.hpp"
#include "molent/pair_correlations.hpp"
#include "molent/runners.hpp"
#include "molent/units.hpp"

namespace molent {
namespace {

double relative_error(double value, double expected) { return std::abs(value - expected) / std::abs(expected); }

std::string fmt(double v) { return format_double(v); }

// Linear interpolation of the momentum density at k.
double density_at(const MomentumDistribution& d, double k) {
  const auto it = std::upper_bound(d.k.begin(), d.k.end(), k);
  if (it == d.k.begin() || it == d.k.end()) return 0.0;
  const std::size_t i = static_cast<std::size_t>(it - d.k.begin()) - 1;
  const double w = (k - d.k[i]) / (d.k[i + 1] - d.k[i]);
  return (1.0 - w) * d.density[i] + w * d.density[i + 1];
}

double momentum_sum(const MomentumDistribution& d) {
  double s = 0.0;
  for (double v : d.density) s += v;
  return s * d.dk;
}

double peak_density(const WaveFunction& psi) {
  double peak = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) peak = std::max(peak, std::norm(psi[j]));
  return peak;
}

void scattering_checks(std::vector<CheckResult>& out) {
  const FeshbachParams k40 = FeshbachParams::potassium40();
  const double a_perp = transverse_length(k40);
  const double a0 = scattering_length(k40, 208.6);
  const double a1d0 = a1d_from_a(a0, a_perp);
  out.push_back(make_check("scattering_length_208.6G", relative_error(a0, -1.84 * units::nanometer), 5e-3,
                           "a = " + fmt(a0 / units::nanometer) + " nm vs -1.84 nm"));
  out.push_back(make_check("a1d_208.6G", relative_error(a1d0, 2.04 * units::micrometer), 1.5e-2,
                           "a_1D = " + fmt(a1d0 / units::micrometer) + " um vs 2.04 um"));
  out.push_back(make_check("transverse_length", relative_error(a_perp, 85.0 * units::nanometer), 1e-2,
                           "a_perp = " + fmt(a_perp / units::nanometer) + " nm vs 85 nm"));
  const double b_zero = k40.resonance_field + k40.resonance_width;
  const double g_zero = coupling_from_scattering_length(scattering_length(k40, b_zero), a_perp, k40.reduced_mass());
  const double g_start = g1d(a1d0, k40.reduced_mass());
  out.push_back(make_check("coupling_zero_crossing", std::abs(g_zero / g_start), 1e-12,
                           "|g_1D(B0 + dB) / g_1D(208.6 G)|"));
}

void grid_checks(const RunConfig& cfg, std::vector<CheckResult>& out) {
  const Grid1D grid = cfg.grid();
  const FeshbachParams p = cfg.feshbach();
  const double mu = p.reduced_mass();
  const double a = cfg.initial_a1d();
  const double g0 = g1d(a, mu);
  const double dx = grid.spacing();

  out.push_back(make_check("bound_state_resolution", dx / a, 0.02, "spacing / a_1D"));

  const WaveFunction psi = bound_state_profile(grid, a).normalized();
  const double e_exact = -units::hbar * units::hbar / (2.0 * mu * a * a);
  const double e = energy_expectation(psi, g0, mu);
  out.push_back(make_check("bound_state_energy", relative_error(e, e_exact), 1e-2,
                           "<H> / E_exact = " + fmt(e / e_exact)));
  out.push_back(make_check("bound_state_parity", parity_defect(psi), 1e-14));
  const double tail = density_outside(psi, 5.0 * a);
  out.push_back(make_check("bound_state_tail_5a", relative_error(tail, std::exp(-10.0)), 0.1,
                           "mass beyond 5 a_1D = " + fmt(tail)));

  const MomentumDistribution md = momentum_distribution(psi);
  double worst = 0.0;
  for (double ka : {0.0, 1.0, 2.0}) {
    const double expected = (2.0 * a / units::pi) / std::pow(1.0 + ka * ka, 2);
    worst = std::max(worst, relative_error(density_at(md, ka / a), expected));
  }
  out.push_back(make_check("bound_state_momentum", worst, 1e-2, "k a_1D in {0, 1, 2}"));
  out.push_back(make_check("parseval_bound_state", std::abs(momentum_sum(md) - norm(psi)), 1e-8));
  const WaveFunction boosted = gaussian_packet(grid, 3.0 * units::micrometer, -10.0 * units::micrometer, 2.0 / a);
  out.push_back(make_check("parseval_moving_gaussian",
                           std::abs(momentum_sum(momentum_distribution(boosted)) - norm(boosted)), 1e-8));

  // Even sine modes vanish at the center, so the contact term drops out.
  const std::size_t n = grid.size();
  const double scale = 4.0 * units::hbar * units::hbar / (2.0 * mu * dx * dx);
  double sine_worst = 0.0;
  for (std::size_t m : {std::size_t{2}, std::size_t{64}, (n + 1) / 2 - ((n + 1) / 2) % 2}) {
    const double theta = units::pi * static_cast<double>(m) / static_cast<double>(n + 1);
    WaveFunction mode(grid);
    // Reduce m (j + 1) modulo 2 (n + 1) in integers so the phase is exact.
    for (std::size_t j = 0; j < n; ++j)
      mode[j] = std::sin(units::pi * static_cast<double>((m * (j + 1)) % (2 * (n + 1))) / static_cast<double>(n + 1));
    const double lambda = 2.0 * units::hbar * units::hbar / (2.0 * mu * dx * dx) * (1.0 - std::cos(theta));
    const WaveFunction h = hamiltonian_apply(mode, g0, mu);
    for (std::size_t j = 0; j < n; ++j) sine_worst = std::max(sine_worst, std::abs(h[j] - lambda * mode[j]) / scale);
  }
  out.push_back(make_check("laplacian_sine_modes", sine_worst, 1e-13, "max |H u - lambda u| / (4K); unit-amplitude modes"));

  const WaveFunction ground = ground_state_refine(psi, g0, mu);
  out.push_back(make_check("ground_state_refine_overlap", 1.0 - std::abs(overlap(ground, psi)), 1e-3,
                           "1 - |<refined|profile>|"));
}

void propagation_checks(const RunConfig& cfg, std::vector<CheckResult>& out) {
  const Grid1D grid = cfg.grid();
  const FeshbachParams p = cfg.feshbach();
  const double mu = p.reduced_mass();
  const double a = cfg.initial_a1d();
  const double g0 = g1d(a, mu);
  PropagatorConfig pc = cfg.propagator();
  pc.snapshot_times.clear();

  const double hold = 5.0 * units::millisecond;
  const WaveFunction bound = init_bound_state(grid, a);
  const Propagation frozen = propagate(bound, [g0](double) { return g0; }, mu, pc, hold);
  out.push_back(make_check("stationary_bound_state_5ms", 1.0 - std::abs(overlap(bound, frozen.state)), 1e-3,
                           "1 - |<psi(0)|psi(5 ms)>| at frozen field"));

  const double sigma0 = 2.0 * units::micrometer;
  const Propagation free = propagate(gaussian_packet(grid, sigma0), [](double) { return 0.0; }, mu, pc, hold);
  const double spread = units::hbar * hold / (2.0 * mu * sigma0 * sigma0);
  const double sigma_exact = sigma0 * std::sqrt(1.0 + spread * spread);
  const double sigma = std::sqrt(mean_square_position(free.state));
  out.push_back(make_check("free_gaussian_width_5ms", relative_error(sigma, sigma_exact), 1e-3,
                           "sigma = " + fmt(sigma / units::micrometer) + " um vs " +
                               fmt(sigma_exact / units::micrometer) + " um"));
}

void dissociation_checks(const RunConfig& cfg, std::vector<CheckResult>& out) {
  RunConfig run_cfg = cfg;
  run_cfg.snapshot_times_ms.clear();
  const Propagation run = simulate_dissociation(run_cfg);
  const WaveFunction& psi = run.state;
  const double a = cfg.initial_a1d();

  double drift = 0.0;
  for (double n : run.record.norms) drift = std::max(drift, std::abs(n - 1.0));
  out.push_back(make_check("norm_drift", drift, 1e-8, fmt(static_cast<double>(run.record.steps)) + " steps"));

  out.push_back(make_check("dissociated_fraction", 1.0 - density_outside(psi, 2.0 * a), 0.1,
                           "1 - P(|x| > 2 a_1D(0))"));
  out.push_back(make_check("central_density", std::norm(psi[psi.grid().center()]) / peak_density(psi), 0.1,
                           "|psi(0)|^2 / peak"));
  const MomentumDistribution md = momentum_distribution(psi);
  const double k_peak = *std::max_element(md.density.begin(), md.density.end());
  out.push_back(make_check("momentum_bimodal", md.density[md.density.size() / 2] / k_peak, 0.5,
                           "density(k = 0) / peak"));

  double best = 0.0;
  double best_r = 0.0;
  for (double r : cfg.resolved_r_ratios()) {
    const FidelityRecord cell = evaluate_cell(cfg, psi, cfg.b_dot_g_per_ms, r);
    if (cell.error.empty() && cell.fidelity > best) {
      best = cell.fidelity;
      best_r = r;
    }
  }
  out.push_back(make_check("max_fidelity_in_band", best - std::clamp(best, 0.95, 0.995), 0.0,
                           "max F = " + fmt(best) + " at R = " + fmt(best_r) + "; band [0.95; 0.995]"));

  const CmPacket packet{best_r * a, 2.0 * cfg.atom_mass(), psi.time()};
  const QuadrantProbabilities q = quadrant_probabilities(psi, packet);
  out.push_back(make_check("quadrant_total", std::abs(q.total() - norm(psi)), 1e-12));
  const PathFidelity f = fidelity_from_quadrants(q);
  out.push_back(make_check("fidelity_vs_opposite", std::abs(f.fidelity - 2.0 * q.opposite_pn) + parity_defect(psi),
                           1e-6, "|F - 2 P_pn| for a parity-symmetric state"));
}

void quadrant_limit_checks(const RunConfig& cfg, std::vector<CheckResult>& out) {
  const double a = cfg.initial_a1d();
  const WaveFunction psi = bound_state_profile(cfg.grid(), a).normalized();
  const double m2 = 2.0 * cfg.atom_mass();

  const PathFidelity point = fidelity_from_quadrants(quadrant_probabilities(psi, CmPacket{1e-6 * a, m2, 0.0}));
  out.push_back(make_check("quadrant_point_cm_limit", 1.0 - point.fidelity, 1e-4, "1 - F"));
  // A CM packet much wider than psi puts both atoms at the same place.
  const QuadrantProbabilities wide = quadrant_probabilities(psi, CmPacket{1e4 * a, m2, 0.0});
  out.push_back(make_check("quadrant_wide_cm_limit", std::abs(wide.same_pp - 0.5) + wide.opposite_pn, 1e-3,
                           "|P_pp - 1/2| + P_pn"));
  // Gaussian |psi|^2 of width s with a CM width s / 2 leaves x1 and x2
  // uncorrelated: every quadrant holds 1/4.
  const double s = 4.0 * units::micrometer;
  const QuadrantProbabilities flat =
      quadrant_probabilities(gaussian_packet(cfg.grid(), s), CmPacket{0.5 * s, m2, 0.0});
  out.push_back(make_check("quadrant_uncorrelated_gaussian",
                           std::max({std::abs(flat.same_pp - 0.25), std::abs(flat.same_nn - 0.25),
                                     std::abs(flat.opposite_pn - 0.25), std::abs(flat.opposite_np - 0.25)}),
                           1e-6, "CM width = relative width / 2"));

  const double w0 = 2.04 * units::micrometer;
  const CmPacket packet{w0, m2, 13.0 * units::millisecond};
  double mass = 0.0;
  const double w = packet.width();
  const double step = w / 200.0;
  for (int i = -4000; i <= 4000; ++i) mass += cm_density(packet, i * step) * step;
  out.push_back(make_check("cm_density_normalization", std::abs(mass - 1.0), 1e-10));
}

void optics_checks(std::vector<CheckResult>& out) {
  using namespace optics;
  const double s = 1.0 / std::sqrt(2.0);
  const TwoParticleState bell = molecule_bs(s, -s);
  const MixedState mixture = MixedState::incoherent_pairs(s, -s);
  double formula = 0.0;
  double sum = 0.0;
  double flat = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double phi = 2.0 * units::pi * k / 100.0;
    const Coincidences c = fringe_point(bell, phi);
    const double plus = (1.0 + std::cos(phi)) / 4.0;
    const double minus = (1.0 - std::cos(phi)) / 4.0;
    formula = std::max({formula, std::abs(c.a1a2 - plus), std::abs(c.b1b2 - plus), std::abs(c.a1b2 - minus),
                        std::abs(c.b1a2 - minus)});
    sum = std::max(sum, std::abs(c.total() - 1.0));
    const Coincidences d = fringe_point(mixture, phi);
    flat = std::max({flat, std::abs(d.a1a2 - 0.25), std::abs(d.b1b2 - 0.25), std::abs(d.a1b2 - 0.25),
                     std::abs(d.b1a2 - 0.25)});
  }
  out.push_back(make_check("fringe_formula", formula, 1e-12, "100 phases; (1 +- cos phi) / 4"));
  out.push_back(make_check("fringe_sum", sum, 1e-12));
  out.push_back(make_check("fringe_dephased_flat", flat, 1e-12));
  out.push_back(make_check("visibility_entangled", std::abs(fringe_visibility(bell) - 1.0), 1e-12));
  out.push_back(make_check("visibility_dephased", std::abs(fringe_visibility(mixture)), 1e-12));
  const SpinState singlet = SpinState::singlet();
  out.push_back(make_check("singlet_double_rf", 1.0 - overlap_magnitude(singlet, rf_pulse(singlet, PulseTarget::both)),
                           1e-12, "1 - |<S|R(x)R|S>|"));
}

void convergence_checks(const RunConfig& cfg, std::vector<CheckResult>& out) {
  const double window = 0.1 * units::millisecond;
  const ConvergenceStudy study =
      dt_convergence(cfg, cfg.scheme, zero_crossing_window_start(cfg, window), window, 20e-9);
  out.push_back(make_check("dt_convergence_ratio", std::abs(study.ratio() - 4.0), 0.5,
                           "ratio " + fmt(study.ratio()) + " for dt 20 ns -> 10 ns across the zero crossing"));
}

}  // namespace

CheckResult make_check(std::string name, double measured, double tolerance, std::string detail) {
  return CheckResult{std::move(name), measured, tolerance, measured <= tolerance, std::move(detail)};
}

std::vector<CheckResult> run_validation(const RunConfig& cfg) {
  cfg.validate();
  std::vector<CheckResult> out;
  auto guarded = [&](const char* group, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      out.push_back(CheckResult{group, std::nan(""), 0.0, false, e.what()});
    }
  };
  scattering_checks(out);
  guarded("grid_checks", [&] { grid_checks(cfg, out); });
  guarded("propagation_checks", [&] { propagation_checks(cfg, out); });
  guarded("dissociation_checks", [&] { dissociation_checks(cfg, out); });
  guarded("quadrant_limit_checks", [&] { quadrant_limit_checks(cfg, out); });
  optics_checks(out);
  guarded("convergence_checks", [&] { convergence_checks(cfg, out); });
  return out;
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void write_validation_report(std::ostream& os, const std::vector<CheckResult>& checks) {
  os << "name,measured,tolerance,status,detail\n";
  std::string line;
  for (const auto& c : checks) {
    line = c.name + ',';
    append_double(line, c.measured);
    line += ',';
    append_double(line, c.tolerance);
    line += c.passed ? ",pass," : ",FAIL,";
    for (char ch : c.detail) line += (ch == ',' || ch == '\n') ? ';' : ch;
    line += '\n';
    os << line;
  }
}

ConvergenceStudy dt_convergence(const RunConfig& cfg, Scheme scheme, double window_start, double window_length,
                                double dt) {
  cfg.validate();
  const FeshbachParams p = cfg.feshbach();
  const SweepSchedule sched = cfg.schedule(cfg.b_dot_g_per_ms);
  PropagatorConfig pc = cfg.propagator();
  pc.snapshot_times.clear();
  const WaveFunction start =
      window_start > 0.0 ? propagate(initial_state(cfg), p, sched, pc, window_start, cfg.limits()).state
                         : initial_state(cfg);
  pc.scheme = scheme;
  auto run = [&](double h) {
    pc.dt = h;
    return propagate(start, p, sched, pc, window_start + window_length, cfg.limits()).state;
  };
  const WaveFunction reference = run(dt / 8.0);
  ConvergenceStudy study;
  study.window_start = window_start;
  study.window_length = window_length;
  study.dt = dt;
  study.coarse_error = l2_distance(run(dt), reference);
  study.fine_error = l2_distance(run(dt / 2.0), reference);
  return study;
}

double zero_crossing_window_start(const RunConfig& cfg, double window_length) {
  const FeshbachParams p = cfg.feshbach();
  const SweepSchedule sched = cfg.schedule(cfg.b_dot_g_per_ms);
  const double crossing = (p.resonance_field + p.resonance_width - sched.start_field) / sched.rate;
  const double latest = std::max(0.0, cfg.t_final() - window_length);
  return std::clamp(crossing - 0.5 * window_length, 0.0, latest);
}

double scheme_disagreement(const RunConfig& cfg, double t_final, double dt) {
  cfg.validate();
  const FeshbachParams p = cfg.feshbach();
  const SweepSchedule sched = cfg.schedule(cfg.b_dot_g_per_ms);
  PropagatorConfig pc = cfg.propagator();
  pc.snapshot_times.clear();
  pc.dt = dt;
  const WaveFunction start = initial_state(cfg);
  pc.scheme = Scheme::crank_nicolson;
  const WaveFunction cn = propagate(start, p, sched, pc, t_final, cfg.limits()).state;
  pc.scheme = Scheme::strang_split;
  const WaveFunction split = propagate(start, p, sched, pc, t_final, cfg.limits()).state;
  return l2_distance(cn, split);
}

}  // namespace molent
