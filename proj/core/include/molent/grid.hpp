#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace molent {

using complex = std::complex<double>;

/// Uniform grid x_j = -half_width + j * spacing on [-half_width, half_width].
/// The point count is odd so that x = 0 is the center sample.
class Grid1D {
 public:
  Grid1D(double half_width, std::size_t n_points);

  double half_width() const { return half_width_; }
  std::size_t size() const { return n_points_; }
  double spacing() const { return spacing_; }
  std::size_t center() const { return n_points_ / 2; }
  double x(std::size_t j) const { return (static_cast<double>(j) - static_cast<double>(center())) * spacing_; }

  /// Weight of sample j in a one-sided (x >= 0) integral: the center point is
  /// shared half and half between the two sides.
  double positive_side_weight(std::size_t j) const {
    return j > center() ? 1.0 : (j == center() ? 0.5 : 0.0);
  }

  bool operator==(const Grid1D&) const = default;

 private:
  double half_width_;
  std::size_t n_points_;
  double spacing_;
};

/// Relative-motion wavefunction sampled on a Grid1D. Amplitudes are in
/// m^(-1/2); `time` is the evolution time the state belongs to.
class WaveFunction {
 public:
  explicit WaveFunction(Grid1D grid, double time = 0.0);
  WaveFunction(Grid1D grid, std::vector<complex> amplitudes, double time = 0.0);

  const Grid1D& grid() const { return grid_; }
  std::span<const complex> amplitudes() const { return amplitudes_; }
  std::span<complex> amplitudes() { return amplitudes_; }
  std::size_t size() const { return amplitudes_.size(); }
  const complex& operator[](std::size_t j) const { return amplitudes_[j]; }
  complex& operator[](std::size_t j) { return amplitudes_[j]; }

  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  /// In place. Not safe to call concurrently on the same instance.
  void normalize();
  WaveFunction normalized() const;

 private:
  Grid1D grid_;
  std::vector<complex> amplitudes_;
  double time_;
};

struct MomentumDistribution {
  std::vector<double> k;        // ascending [1/m]
  std::vector<double> density;  // |psi(k)|^2 [m]
  double dk = 0.0;
};

/// sum_j |psi_j|^2 dx.
double norm(const WaveFunction& psi);
/// <a|b> with the rectangle rule.
complex overlap(const WaveFunction& a, const WaveFunction& b);
double l2_distance(const WaveFunction& a, const WaveFunction& b);
/// <x^2> of the (not necessarily normalized) density divided by its norm.
double mean_square_position(const WaveFunction& psi);
/// max_j |psi_j - psi_(N-1-j)|.
double parity_defect(const WaveFunction& psi);

/// exp(-|x|/a_1d) / sqrt(a_1d) on the grid, without renormalization.
WaveFunction bound_state_profile(const Grid1D& grid, double a1d);

/// Normalized delta-well bound state. Requires a_1d > 0, spacing <= a_1d / 50
/// and half_width >= 10 a_1d.
WaveFunction init_bound_state(const Grid1D& grid, double a1d);

/// Gaussian packet exp(-x^2 / (4 sigma^2)) with position spread sigma,
/// normalized; optionally boosted by exp(i k0 x).
WaveFunction gaussian_packet(const Grid1D& grid, double sigma, double center = 0.0, double k0 = 0.0);

/// |psi(k)|^2 from an N-point DFT; k spacing 2 pi / (N dx), Parseval-exact.
MomentumDistribution momentum_distribution(const WaveFunction& psi);

/// Probability mass at |x| >= radius.
double density_outside(const WaveFunction& psi, double radius);

/// CSV with header x_um,re_psi,im_psi,density (amplitudes in um^-1/2).
void write_position_csv(std::ostream& os, const WaveFunction& psi);
/// CSV with header k_per_um,density (density in um).
void write_momentum_csv(std::ostream& os, const MomentumDistribution& dist);

}  // namespace molent
