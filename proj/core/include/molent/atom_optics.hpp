#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Exact two-particle state algebra for the path and spin verification
// protocols. Particles are distinguished by which guide (label) they sit in;
// no (anti)symmetrization is imposed on the label algebra.
namespace molent::optics {

using complex = std::complex<double>;

enum class Particle { first, second };

inline constexpr std::size_t max_basis_labels = 16;

/// Dense amplitude table over modes1 x modes2 (particle 1 mode, particle 2
/// mode). Labels are unique per particle and across particles.
class TwoParticleState {
 public:
  TwoParticleState(std::vector<std::string> modes1, std::vector<std::string> modes2);

  const std::vector<std::string>& modes(Particle p) const { return p == Particle::first ? modes1_ : modes2_; }
  bool has_mode(std::string_view label) const;
  /// Which particle's mode list contains `label`; throws Error(unknown_mode).
  Particle owner(std::string_view label) const;

  complex amplitude(std::string_view m1, std::string_view m2) const;
  void set_amplitude(std::string_view m1, std::string_view m2, complex value);

  complex at(std::size_t i1, std::size_t i2) const { return amp_[i1 * modes2_.size() + i2]; }
  complex& at(std::size_t i1, std::size_t i2) { return amp_[i1 * modes2_.size() + i2]; }

  double norm_squared() const;

  void rename_mode(Particle p, std::size_t index, std::string label);

 private:
  std::size_t index_of(Particle p, std::string_view label) const;

  std::vector<std::string> modes1_;
  std::vector<std::string> modes2_;
  std::vector<complex> amp_;  // row-major, modes1 x modes2
};

/// alpha |a1 a2> + beta |b1 b2>; requires |alpha|^2 + |beta|^2 = 1.
TwoParticleState molecule_bs(complex alpha, complex beta);

/// Multiplies every amplitude with a particle in `branch` by exp(i phi).
TwoParticleState phase_shift(const TwoParticleState& state, std::string_view branch, double phi);

/// 50-50 beam splitter on one particle's pair of input modes, renamed to the
/// output modes: |in_a> -> (i|out_a> + |out_b>)/sqrt2, |in_b> -> (|out_a> + i|out_b>)/sqrt2.
TwoParticleState atomic_bs(const TwoParticleState& state, const std::pair<std::string, std::string>& input,
                           const std::pair<std::string, std::string>& output);

/// Both particles through their beam splitters: (a1,b1)->(a1',b1'), (a2,b2)->(a2',b2').
TwoParticleState recombine(const TwoParticleState& state);

struct Coincidences {
  double a1a2 = 0.0;  // a1' with a2'
  double b1b2 = 0.0;
  double a1b2 = 0.0;
  double b1a2 = 0.0;

  double total() const { return a1a2 + b1b2 + a1b2 + b1a2; }
};

/// Joint detection probabilities; the state must live on {a1',b1'} x {a2',b2'}.
Coincidences coincidence_probabilities(const TwoParticleState& state);

/// Schmidt coefficients (descending) of the amplitude table.
std::vector<double> schmidt_coefficients(const TwoParticleState& state);
/// Von Neumann entropy of either reduced state, in bits.
double entanglement_entropy(const TwoParticleState& state);

/// Convex mixture of pure path states, used for the dephased comparison.
class MixedState {
 public:
  void add(double weight, TwoParticleState state);
  const std::vector<std::pair<double, TwoParticleState>>& components() const { return components_; }
  double total_weight() const;

  /// Incoherent |alpha|^2 |a1a2><a1a2| + |beta|^2 |b1b2><b1b2|.
  static MixedState incoherent_pairs(complex alpha, complex beta);

 private:
  std::vector<std::pair<double, TwoParticleState>> components_;
};

MixedState phase_shift(const MixedState& state, std::string_view branch, double phi);
MixedState recombine(const MixedState& state);
Coincidences coincidence_probabilities(const MixedState& state);

/// Phase phi on branch a1, then both beam splitters.
Coincidences fringe_point(const TwoParticleState& source, double phi);
Coincidences fringe_point(const MixedState& source, double phi);

/// Visibility |Z| / A of C_a1'a2'(phi) = A + Re(Z e^{i phi}), exact from three
/// equally spaced phases (the fringe has no higher harmonics).
double fringe_visibility(const TwoParticleState& source);
double fringe_visibility(const MixedState& source);

// --- internal (spin) degree of freedom ---------------------------------------

enum class Spin { up = 0, down = 1 };

/// Amplitudes over {up, down} x {up, down}, index 2 * s1 + s2.
class SpinState {
 public:
  SpinState() = default;
  explicit SpinState(std::array<complex, 4> amplitudes) : amp_(amplitudes) {}

  static SpinState singlet();
  static SpinState product(Spin s1, Spin s2);

  complex amplitude(Spin s1, Spin s2) const { return amp_[index(s1, s2)]; }
  void set_amplitude(Spin s1, Spin s2, complex v) { amp_[index(s1, s2)] = v; }
  const std::array<complex, 4>& amplitudes() const { return amp_; }
  double norm_squared() const;

  static std::size_t index(Spin s1, Spin s2) { return 2 * static_cast<std::size_t>(s1) + static_cast<std::size_t>(s2); }

 private:
  std::array<complex, 4> amp_{};
};

enum class PulseTarget { first, second, both };

/// pi/2 RF pulse: |up> -> (|up> + |down>)/sqrt2, |down> -> (|up> - |down>)/sqrt2.
SpinState rf_pulse(const SpinState& state, PulseTarget target);

/// |<a|b>|.
double overlap_magnitude(const SpinState& a, const SpinState& b);

/// Path state tensored with a spin state; component s holds the path
/// amplitudes multiplied by spin amplitude s.
class SpinPathState {
 public:
  explicit SpinPathState(std::array<TwoParticleState, 4> by_spin) : by_spin_(std::move(by_spin)) {}

  const TwoParticleState& component(Spin s1, Spin s2) const { return by_spin_[SpinState::index(s1, s2)]; }
  const std::array<TwoParticleState, 4>& components() const { return by_spin_; }
  double norm_squared() const;

  /// Number of nonzero amplitudes (|amp| > tol) in the full product basis.
  std::size_t nonzero_count(double tol = 1e-14) const;
  std::vector<double> nonzero_magnitudes(double tol = 1e-14) const;

  /// Probability of each joint spin outcome with the path traced out.
  std::array<double, 4> spin_probabilities() const;

 private:
  std::array<TwoParticleState, 4> by_spin_;
};

SpinPathState spin_path_product(const TwoParticleState& path, const SpinState& spin);
SpinPathState phase_shift(const SpinPathState& state, std::string_view branch, double phi);
SpinPathState recombine(const SpinPathState& state);
SpinPathState rf_pulse(const SpinPathState& state, PulseTarget target);

/// Path coincidences with the spin traced out.
Coincidences coincidence_probabilities(const SpinPathState& state);
/// Path coincidences conditioned on the joint spin outcome (s1, s2).
Coincidences conditional_coincidences(const SpinPathState& state, Spin s1, Spin s2);

}  // namespace molent::optics
