#include "molent/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "fft.hpp"
#include "molent/errors.hpp"
#include "molent/units.hpp"

namespace molent {
namespace {

constexpr complex I{0.0, 1.0};

double kinetic_scale(const Grid1D& grid, double mu) {
  const double dx = grid.spacing();
  return units::hbar * units::hbar / (2.0 * mu * dx * dx);
}

/// (1 + i a H) psi' = (1 - i a H) psi with a = h / (2 hbar). The forward sweep
/// of the Thomas algorithm above the center row does not see the contact term,
/// so those coefficients are computed once.
class CrankNicolsonStepper {
 public:
  CrankNicolsonStepper(const Grid1D& grid, double mu, double h)
      : n_(grid.size()),
        center_(grid.center()),
        dx_(grid.spacing()),
        alpha_(h / (2.0 * units::hbar)),
        kinetic_(kinetic_scale(grid, mu)),
        cprime_(n_),
        inv_denom_(n_),
        dprime_(n_) {
    off_ = -I * alpha_ * kinetic_;
    diag_free_ = 1.0 + I * alpha_ * 2.0 * kinetic_;
    rhs_diag_free_ = 1.0 - I * alpha_ * 2.0 * kinetic_;
    complex prev = 0.0;
    for (std::size_t j = 0; j < center_; ++j) {
      inv_denom_[j] = 1.0 / (diag_free_ - off_ * prev);
      cprime_[j] = off_ * inv_denom_[j];
      prev = cprime_[j];
    }
  }

  void step(std::span<complex> psi, double g) {
    const double v_center = g / dx_;
    const complex side = I * alpha_ * kinetic_;
    const std::size_t last = n_ - 1;

    auto rhs = [&](std::size_t j) {
      complex neighbours = 0.0;
      if (j > 0) neighbours += psi[j - 1];
      if (j < last) neighbours += psi[j + 1];
      complex d = rhs_diag_free_;
      if (j == center_) d -= I * alpha_ * v_center;
      return d * psi[j] + side * neighbours;
    };

    // Forward sweep. psi[j-1] is still the old value when row j is built
    // because dprime_ is a separate buffer.
    complex prev_d = 0.0;
    for (std::size_t j = 0; j < center_; ++j) {
      dprime_[j] = (rhs(j) - off_ * prev_d) * inv_denom_[j];
      prev_d = dprime_[j];
    }
    complex prev_c = center_ > 0 ? cprime_[center_ - 1] : complex{};
    const complex diag_center = diag_free_ + I * alpha_ * v_center;
    for (std::size_t j = center_; j < n_; ++j) {
      const complex diag = j == center_ ? diag_center : diag_free_;
      const complex inv = 1.0 / (diag - off_ * prev_c);
      cprime_[j] = off_ * inv;
      dprime_[j] = (rhs(j) - off_ * prev_d) * inv;
      prev_c = cprime_[j];
      prev_d = dprime_[j];
    }
    psi[last] = dprime_[last];
    for (std::size_t j = last; j-- > 0;) psi[j] = dprime_[j] - cprime_[j] * psi[j + 1];
  }

 private:
  std::size_t n_;
  std::size_t center_;
  double dx_;
  double alpha_;
  double kinetic_;
  complex off_;
  complex diag_free_;
  complex rhs_diag_free_;
  std::vector<complex> cprime_;
  std::vector<complex> inv_denom_;
  std::vector<complex> dprime_;
};

/// exp(-i T h/2) exp(-i V h) exp(-i T h/2) on the periodic N-point grid. The
/// kinetic symbol is that of the three-point Laplacian, 2K(1 - cos(k dx)), so
/// both schemes discretize the same spatial operator.
class StrangStepper {
 public:
  StrangStepper(const Grid1D& grid, double mu, double h)
      : n_(grid.size()), center_(grid.center()), dx_(grid.spacing()), h_(h), plan_(n_), half_kinetic_(n_) {
    const double kinetic = kinetic_scale(grid, mu);
    const double inv_n = 1.0 / static_cast<double>(n_);
    for (std::size_t m = 0; m < n_; ++m) {
      const double theta = 2.0 * units::pi * static_cast<double>(m) / static_cast<double>(n_);
      const double energy = 2.0 * kinetic * (1.0 - std::cos(theta));
      half_kinetic_[m] = std::polar(inv_n, -energy * h / (2.0 * units::hbar));
    }
  }

  void step(std::span<complex> psi, double g) {
    auto buf = plan_.data();
    std::copy(psi.begin(), psi.end(), buf.begin());
    kinetic_half();
    buf[center_] *= std::polar(1.0, -(g / dx_) * h_ / units::hbar);
    kinetic_half();
    std::copy(buf.begin(), buf.end(), psi.begin());
  }

 private:
  void kinetic_half() {
    auto buf = plan_.data();
    plan_.forward();
    for (std::size_t m = 0; m < n_; ++m) buf[m] *= half_kinetic_[m];
    plan_.backward();
  }

  std::size_t n_;
  std::size_t center_;
  double dx_;
  double h_;
  detail::FftPlan plan_;
  std::vector<complex> half_kinetic_;
};

/// Solves (H - shift) x = b for the real symmetric tridiagonal H.
void solve_shifted(const Grid1D& grid, double mu, double g, double shift, std::span<const complex> b,
                   std::span<complex> x) {
  const std::size_t n = grid.size();
  const double k = kinetic_scale(grid, mu);
  const double off = -k;
  std::vector<double> cprime(n);
  std::vector<complex> dprime(n);
  double prev_c = 0.0;
  complex prev_d = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double diag = 2.0 * k - shift;
    if (j == grid.center()) diag += g / grid.spacing();
    const double inv = 1.0 / (diag - off * prev_c);
    cprime[j] = off * inv;
    dprime[j] = (b[j] - off * prev_d) * inv;
    prev_c = cprime[j];
    prev_d = dprime[j];
  }
  x[n - 1] = dprime[n - 1];
  for (std::size_t j = n - 1; j-- > 0;) x[j] = dprime[j] - cprime[j] * x[j + 1];
}

}  // namespace

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::crank_nicolson: return "crank_nicolson";
    case Scheme::strang_split: return "strang_split";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  if (name == "crank_nicolson") return Scheme::crank_nicolson;
  if (name == "strang_split") return Scheme::strang_split;
  return std::nullopt;
}

void PropagatorConfig::validate() const {
  if (!(dt > 0.0)) throw Error(ErrorCode::invalid_argument, "time step must be positive");
  if (!(leak_tolerance > 0.0 && leak_tolerance < 1.0))
    throw Error(ErrorCode::invalid_argument, "leak tolerance must lie in (0, 1)");
  if (check_interval < 1) throw Error(ErrorCode::invalid_argument, "check interval must be at least one step");
  if (!(leak_radius_fraction > 0.0 && leak_radius_fraction <= 1.0))
    throw Error(ErrorCode::invalid_argument, "leak radius fraction must lie in (0, 1]");
}

WaveFunction hamiltonian_apply(const WaveFunction& psi, double g, double mu) {
  const auto& grid = psi.grid();
  const std::size_t n = psi.size();
  const double k = kinetic_scale(grid, mu);
  WaveFunction out(grid, psi.time());
  for (std::size_t j = 0; j < n; ++j) {
    const complex left = j > 0 ? psi[j - 1] : complex{};
    const complex right = j + 1 < n ? psi[j + 1] : complex{};
    out[j] = k * (2.0 * psi[j] - left - right);
  }
  out[grid.center()] += (g / grid.spacing()) * psi[grid.center()];
  return out;
}

double energy_expectation(const WaveFunction& psi, double g, double mu) {
  return overlap(psi, hamiltonian_apply(psi, g, mu)).real() / norm(psi);
}

double energy_variance(const WaveFunction& psi, double g, double mu) {
  const double n = norm(psi);
  const WaveFunction hpsi = hamiltonian_apply(psi, g, mu);
  const double e = overlap(psi, hpsi).real() / n;
  double sum = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) sum += std::norm(hpsi[j] - e * psi[j]);
  return sum * psi.grid().spacing() / n;
}

Propagation propagate(const WaveFunction& psi0, const CouplingSchedule& coupling, double mu,
                      const PropagatorConfig& cfg, double t_final) {
  cfg.validate();
  if (!(mu > 0.0)) throw Error(ErrorCode::invalid_argument, "reduced mass must be positive");
  const double t0 = psi0.time();
  if (!(t_final >= t0)) throw Error(ErrorCode::invalid_argument, "final time precedes the initial time");

  const double duration = t_final - t0;
  const auto steps = static_cast<std::size_t>(std::max(0.0, std::ceil(duration / cfg.dt - 1e-9)));
  const double h = steps > 0 ? duration / static_cast<double>(steps) : cfg.dt;

  std::vector<std::pair<std::size_t, double>> snapshot_steps;
  for (double ts : cfg.snapshot_times) {
    if (ts < t0 - 1e-12 * std::max(1.0, std::abs(t0)) || ts > t_final * (1.0 + 1e-12) + 1e-15)
      throw Error(ErrorCode::invalid_argument, "snapshot time outside the propagation window");
    const double index = steps > 0 ? std::round((ts - t0) / h) : 0.0;
    snapshot_steps.emplace_back(static_cast<std::size_t>(std::clamp(index, 0.0, static_cast<double>(steps))), ts);
  }
  std::sort(snapshot_steps.begin(), snapshot_steps.end());

  Propagation result{psi0, {}};
  WaveFunction& psi = result.state;
  EvolutionRecord& rec = result.record;
  rec.steps = steps;
  rec.step = h;
  const double leak_radius = cfg.leak_radius_fraction * psi.grid().half_width();

  auto next_snapshot = snapshot_steps.begin();
  auto observe = [&](std::size_t step_index, bool force_check) {
    const double t = t0 + static_cast<double>(step_index) * h;
    psi.set_time(t);
    while (next_snapshot != snapshot_steps.end() && next_snapshot->first == step_index) {
      rec.snapshots.push_back(psi);
      ++next_snapshot;
    }
    if (!force_check && step_index % cfg.check_interval != 0) return;
    const double leak = density_outside(psi, leak_radius);
    rec.times.push_back(t);
    rec.norms.push_back(norm(psi));
    rec.boundary_leak.push_back(leak);
    if (leak > cfg.leak_tolerance) {
      std::ostringstream os;
      os << "probability " << leak << " beyond |x| = " << leak_radius / units::micrometer << " um at t = "
         << t / units::millisecond << " ms exceeds the tolerance " << cfg.leak_tolerance
         << "; enlarge the grid or shorten the run";
      throw Error(ErrorCode::boundary_leak, os.str());
    }
  };

  observe(0, true);
  if (steps == 0) return result;

  auto run = [&](auto& stepper) {
    auto amps = psi.amplitudes();
    for (std::size_t s = 0; s < steps; ++s) {
      const double t_mid = t0 + (static_cast<double>(s) + 0.5) * h;
      stepper.step(amps, coupling(t_mid));
      observe(s + 1, s + 1 == steps);
    }
  };

  if (cfg.scheme == Scheme::crank_nicolson) {
    CrankNicolsonStepper stepper(psi.grid(), mu, h);
    run(stepper);
  } else {
    StrangStepper stepper(psi.grid(), mu, h);
    run(stepper);
  }
  psi.set_time(t_final);
  return result;
}

Propagation propagate(const WaveFunction& psi0, const FeshbachParams& params, const SweepSchedule& sched,
                      const PropagatorConfig& cfg, double t_final, ResonanceLimits limits) {
  limits.min_abs_a1d = std::max(limits.min_abs_a1d, 10.0 * psi0.grid().spacing());
  check_sweep_regular(params, sched, limits);
  if (t_final > sched.hold_until * (1.0 + 1e-12))
    throw Error(ErrorCode::invalid_argument, "final time lies beyond the end of the sweep schedule");
  if (psi0.time() < 0.0) throw Error(ErrorCode::invalid_argument, "initial time precedes the sweep");
  if (std::abs(norm(psi0) - 1.0) > 1e-6)
    throw Error(ErrorCode::normalization, "initial state must be normalized");
  const double a_perp = transverse_length(params);
  const double mu = params.reduced_mass();
  auto coupling = [&](double t) {
    const double a = scattering_length(params, sched.field_at(t), limits.pole_epsilon);
    return coupling_from_scattering_length(a, a_perp, mu, limits);
  };
  return propagate(psi0, coupling, mu, cfg, t_final);
}

WaveFunction ground_state_refine(const WaveFunction& psi0, double g, double mu, double tolerance,
                                 std::size_t max_iterations) {
  if (!(g < 0.0)) throw Error(ErrorCode::no_bound_state, "ground-state refinement needs an attractive coupling");
  const auto& grid = psi0.grid();
  // Lattice ground-state energy of the contact well on an unbounded grid.
  const double k = kinetic_scale(grid, mu);
  const double h = grid.spacing() * mu * std::abs(g) / (units::hbar * units::hbar);  // dx / a_1D
  const double e_lattice = -2.0 * k * (std::sqrt(1.0 + h * h) - 1.0);
  // Backward-Euler imaginary-time steps referenced to e_lattice with
  // hbar / tau = 0.1 |e_lattice|: (H - 1.1 e_lattice) psi' = psi.
  const double shift = 1.1 * e_lattice;

  WaveFunction psi = psi0.normalized();
  WaveFunction next(grid, psi0.time());
  for (std::size_t it = 0; it < max_iterations; ++it) {
    const double e = energy_expectation(psi, g, mu);
    if (energy_variance(psi, g, mu) / (e * e) < tolerance) return psi;
    solve_shifted(grid, mu, g, shift, psi.amplitudes(), next.amplitudes());
    next.normalize();
    std::swap(psi, next);
  }
  const double e = energy_expectation(psi, g, mu);
  const double residual = energy_variance(psi, g, mu) / (e * e);
  if (residual < tolerance) return psi;
  std::ostringstream os;
  os << "imaginary-time relaxation stalled at relative energy variance " << residual << " after "
     << max_iterations << " iterations";
  throw Error(ErrorCode::not_converged, os.str());
}

}  // namespace molent
