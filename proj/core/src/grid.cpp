#include "molent/grid.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "fft.hpp"
#include "molent/errors.hpp"
#include "molent/number_format.hpp"
#include "molent/units.hpp"

namespace molent {

Grid1D::Grid1D(double half_width, std::size_t n_points) : half_width_(half_width), n_points_(n_points) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw Error(ErrorCode::invalid_argument, "grid half width must be positive");
  if (n_points < 3 || n_points % 2 == 0)
    throw Error(ErrorCode::invalid_argument,
                "grid needs an odd number of points >= 3, got " + std::to_string(n_points));
  spacing_ = 2.0 * half_width / static_cast<double>(n_points - 1);
}

WaveFunction::WaveFunction(Grid1D grid, double time)
    : grid_(grid), amplitudes_(grid.size(), complex{}), time_(time) {}

WaveFunction::WaveFunction(Grid1D grid, std::vector<complex> amplitudes, double time)
    : grid_(grid), amplitudes_(std::move(amplitudes)), time_(time) {
  if (amplitudes_.size() != grid_.size())
    throw Error(ErrorCode::invalid_argument, "amplitude count does not match the grid");
}

void WaveFunction::normalize() {
  const double n = norm(*this);
  if (!(n > 0.0)) throw Error(ErrorCode::normalization, "cannot normalize a zero wavefunction");
  const double scale = 1.0 / std::sqrt(n);
  for (auto& v : amplitudes_) v *= scale;
}

WaveFunction WaveFunction::normalized() const {
  WaveFunction copy = *this;
  copy.normalize();
  return copy;
}

double norm(const WaveFunction& psi) {
  double sum = 0.0;
  for (const auto& v : psi.amplitudes()) sum += std::norm(v);
  return sum * psi.grid().spacing();
}

complex overlap(const WaveFunction& a, const WaveFunction& b) {
  if (!(a.grid() == b.grid())) throw Error(ErrorCode::invalid_argument, "overlap of states on different grids");
  complex sum{};
  for (std::size_t j = 0; j < a.size(); ++j) sum += std::conj(a[j]) * b[j];
  return sum * a.grid().spacing();
}

double l2_distance(const WaveFunction& a, const WaveFunction& b) {
  if (!(a.grid() == b.grid())) throw Error(ErrorCode::invalid_argument, "distance between states on different grids");
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += std::norm(a[j] - b[j]);
  return std::sqrt(sum * a.grid().spacing());
}

double mean_square_position(const WaveFunction& psi) {
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double p = std::norm(psi[j]);
    const double x = psi.grid().x(j);
    weighted += p * x * x;
    total += p;
  }
  return total > 0.0 ? weighted / total : 0.0;
}

double parity_defect(const WaveFunction& psi) {
  const std::size_t n = psi.size();
  double worst = 0.0;
  for (std::size_t j = 0; j < n / 2; ++j) worst = std::max(worst, std::abs(psi[j] - psi[n - 1 - j]));
  return worst;
}

WaveFunction bound_state_profile(const Grid1D& grid, double a1d) {
  if (!(a1d > 0.0))
    throw Error(ErrorCode::no_bound_state, "bound state needs a positive 1D scattering length");
  WaveFunction psi(grid);
  const double amplitude = 1.0 / std::sqrt(a1d);
  // Fill from the center outwards so both halves are bit-identical.
  const std::size_t c = grid.center();
  for (std::size_t d = 0; d <= c; ++d) {
    const double v = amplitude * std::exp(-static_cast<double>(d) * grid.spacing() / a1d);
    psi[c + d] = v;
    psi[c - d] = v;
  }
  return psi;
}

WaveFunction init_bound_state(const Grid1D& grid, double a1d) {
  if (!(a1d > 0.0))
    throw Error(ErrorCode::no_bound_state, "bound state needs a positive 1D scattering length");
  if (grid.spacing() > a1d / 50.0 * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "grid spacing " << grid.spacing() << " m is coarser than a_1D / 50 = " << a1d / 50.0 << " m";
    throw Error(ErrorCode::grid_resolution, os.str());
  }
  if (grid.half_width() < 10.0 * a1d * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "grid half width " << grid.half_width() << " m is below 10 a_1D = " << 10.0 * a1d << " m";
    throw Error(ErrorCode::grid_domain, os.str());
  }
  WaveFunction psi = bound_state_profile(grid, a1d);
  psi.normalize();
  return psi;
}

WaveFunction gaussian_packet(const Grid1D& grid, double sigma, double center, double k0) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::invalid_argument, "Gaussian width must be positive");
  WaveFunction psi(grid);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double u = grid.x(j) - center;
    psi[j] = std::exp(-u * u / (4.0 * sigma * sigma)) * std::polar(1.0, k0 * grid.x(j));
  }
  psi.normalize();
  return psi;
}

MomentumDistribution momentum_distribution(const WaveFunction& psi) {
  const std::size_t n = psi.size();
  const double dx = psi.grid().spacing();
  detail::FftPlan plan(n);
  auto buf = plan.data();
  std::copy(psi.amplitudes().begin(), psi.amplitudes().end(), buf.begin());
  plan.forward();

  MomentumDistribution out;
  out.dk = 2.0 * units::pi / (static_cast<double>(n) * dx);
  out.k.resize(n);
  out.density.resize(n);
  const double scale = dx * dx / (2.0 * units::pi);
  const std::size_t half = n / 2;  // n is odd: bins -half..half
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t src = (m + n - half) % n;
    const double signed_index = static_cast<double>(m) - static_cast<double>(half);
    out.k[m] = signed_index * out.dk;
    out.density[m] = std::norm(buf[src]) * scale;
  }
  return out;
}

double density_outside(const WaveFunction& psi, double radius) {
  const auto& grid = psi.grid();
  if (radius < 0.0 || radius > grid.half_width() * (1.0 + 1e-12))
    throw Error(ErrorCode::invalid_argument, "radius must lie in [0, half_width]");
  // Samples within a rounding slack of the radius count as outside.
  const double threshold = radius - 1e-9 * grid.spacing();
  double sum = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j)
    if (std::abs(grid.x(j)) >= threshold) sum += std::norm(psi[j]);
  return sum * grid.spacing();
}

void write_position_csv(std::ostream& os, const WaveFunction& psi) {
  const double amp_scale = std::sqrt(units::micrometer);
  std::string line;
  os << "x_um,re_psi,im_psi,density\n";
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const complex v = psi[j] * amp_scale;
    line.clear();
    append_double(line, psi.grid().x(j) / units::micrometer);
    line += ',';
    append_double(line, v.real());
    line += ',';
    append_double(line, v.imag());
    line += ',';
    append_double(line, std::norm(v));
    line += '\n';
    os << line;
  }
}

void write_momentum_csv(std::ostream& os, const MomentumDistribution& dist) {
  std::string line;
  os << "k_per_um,density\n";
  for (std::size_t m = 0; m < dist.k.size(); ++m) {
    line.clear();
    append_double(line, dist.k[m] * units::micrometer);
    line += ',';
    append_double(line, dist.density[m] / units::micrometer);
    line += '\n';
    os << line;
  }
}

}  // namespace molent
