#include "molent/pair_correlations.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "molent/errors.hpp"
#include "molent/number_format.hpp"
#include "molent/units.hpp"

namespace molent {

double CmPacket::velocity_spread() const {
  // m = total_mass / 2, so hbar / (4 m dX0) = hbar / (2 M dX0).
  return units::hbar / (2.0 * total_mass * initial_width);
}

double CmPacket::width() const {
  return std::hypot(initial_width, time * velocity_spread());
}

namespace {

// Exact integral of erf(s x) over x > 0 minus its rectangle sum with half
// weight at x = 0, in units of dx, as a function of h = s dx.
double kernel_endpoint_error(double h) {
  const double rs = 1.0 / std::sqrt(units::pi);
  if (h < 0.02) {
    const double h2 = h * h;
    return rs * h * (1.0 / 6.0 + h2 * (1.0 / 180.0 + h2 / 1260.0));
  }
  double tail = 0.5;
  for (int j = 1; j * h < 7.0; ++j) tail += std::erfc(j * h);
  return tail - rs / h;
}

}  // namespace

double cm_density(const CmPacket& packet, double X) {
  const double w = packet.width();
  return std::exp(-X * X / (2.0 * w * w)) / (std::sqrt(2.0 * units::pi) * w);
}

QuadrantProbabilities quadrant_probabilities(const WaveFunction& psi, const CmPacket& packet,
                                             double time_tolerance) {
  if (!(packet.initial_width > 0.0) || !(packet.total_mass > 0.0))
    throw Error(ErrorCode::invalid_argument, "center-of-mass packet needs positive width and mass");
  if (std::abs(psi.time() - packet.time) > time_tolerance) {
    std::ostringstream os;
    os << "wavefunction time " << psi.time() << " s differs from packet time " << packet.time << " s";
    throw Error(ErrorCode::time_mismatch, os.str());
  }
  const auto& grid = psi.grid();
  const double dx = grid.spacing();
  const double scale = 1.0 / (2.0 * std::sqrt(2.0) * packet.width());
  const std::size_t c = grid.center();

  // Walk outwards in pairs (x, -x). Both same-side quadrants integrate
  // |psi(x)|^2 erfc(|x| scale) / 2 over every x, so they share one sum.
  double same = 0.5 * std::norm(psi[c]);
  double pn = 0.0;
  double np = 0.0;
  for (std::size_t d = 1; d <= c; ++d) {
    const double u = static_cast<double>(d) * dx * scale;
    const double p_right = std::norm(psi[c + d]);
    const double p_left = std::norm(psi[c - d]);
    same += 0.5 * (p_right + p_left) * std::erfc(u);
    const double core = std::erf(u);
    pn += p_right * core;
    np += p_left * core;
  }
  // The kernels have a kink at x = 0. Treating |psi|^2 as locally constant
  // there, the rectangle rule misses |psi(0)|^2 dx e(s dx) on each side; the
  // same-side and opposite-side corrections cancel in the total.
  const double kink = std::norm(psi[c]) * dx * kernel_endpoint_error(dx * scale);
  QuadrantProbabilities q;
  q.same_pp = same * dx - kink;
  q.same_nn = same * dx - kink;
  q.opposite_pn = pn * dx + kink;
  q.opposite_np = np * dx + kink;
  return q;
}

PathFidelity fidelity_from_quadrants(const QuadrantProbabilities& q) {
  if (!(q.opposite_pn >= 1e-12)) {
    std::ostringstream os;
    os << "opposite-side probability " << q.opposite_pn << " leaves no anti-correlated signal";
    throw Error(ErrorCode::degenerate_correlation, os.str());
  }
  PathFidelity f;
  f.kappa = q.same_pp / q.opposite_pn;
  f.fidelity = 1.0 / (1.0 + f.kappa);
  return f;
}

void write_fidelity_csv(std::ostream& os, const std::vector<FidelityRecord>& rows) {
  os << "b_dot_G_per_ms,r_ratio,kappa,fidelity,error\n";
  std::string line;
  for (const auto& r : rows) {
    line.clear();
    append_double(line, r.b_dot * units::millisecond);
    line += ',';
    append_double(line, r.r_ratio);
    line += ',';
    append_double(line, r.kappa);
    line += ',';
    append_double(line, r.fidelity);
    line += ',';
    for (char ch : r.error) line += (ch == ',' || ch == '\n') ? ';' : ch;
    line += '\n';
    os << line;
  }
}

}  // namespace molent
