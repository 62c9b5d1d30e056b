#include "molent/atom_optics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "molent/errors.hpp"

namespace molent::optics {
namespace {

constexpr complex I{0.0, 1.0};
const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

/// Linear combination of tables that share a label layout.
TwoParticleState combine(const TwoParticleState& a, complex ca, const TwoParticleState& b, complex cb) {
  TwoParticleState out = a;
  const std::size_t n1 = a.modes(Particle::first).size();
  const std::size_t n2 = a.modes(Particle::second).size();
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) out.at(i, j) = ca * a.at(i, j) + cb * b.at(i, j);
  return out;
}

TwoParticleState scaled(const TwoParticleState& a, complex c) {
  TwoParticleState out = a;
  const std::size_t n1 = a.modes(Particle::first).size();
  const std::size_t n2 = a.modes(Particle::second).size();
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) out.at(i, j) *= c;
  return out;
}

}  // namespace

TwoParticleState::TwoParticleState(std::vector<std::string> modes1, std::vector<std::string> modes2)
    : modes1_(std::move(modes1)), modes2_(std::move(modes2)) {
  if (modes1_.empty() || modes2_.empty())
    throw Error(ErrorCode::invalid_argument, "each particle needs at least one mode");
  if (modes1_.size() * modes2_.size() > max_basis_labels)
    throw Error(ErrorCode::invalid_argument, "two-particle basis limited to 16 labels");
  std::set<std::string> seen;
  for (const auto& m : modes1_)
    if (!seen.insert(m).second) throw Error(ErrorCode::invalid_argument, "duplicate mode label " + m);
  for (const auto& m : modes2_)
    if (!seen.insert(m).second) throw Error(ErrorCode::invalid_argument, "duplicate mode label " + m);
  amp_.assign(modes1_.size() * modes2_.size(), complex{});
}

bool TwoParticleState::has_mode(std::string_view label) const {
  return std::find(modes1_.begin(), modes1_.end(), label) != modes1_.end() ||
         std::find(modes2_.begin(), modes2_.end(), label) != modes2_.end();
}

Particle TwoParticleState::owner(std::string_view label) const {
  if (std::find(modes1_.begin(), modes1_.end(), label) != modes1_.end()) return Particle::first;
  if (std::find(modes2_.begin(), modes2_.end(), label) != modes2_.end()) return Particle::second;
  throw Error(ErrorCode::unknown_mode, "no mode labelled '" + std::string(label) + "'");
}

std::size_t TwoParticleState::index_of(Particle p, std::string_view label) const {
  const auto& list = modes(p);
  const auto it = std::find(list.begin(), list.end(), label);
  if (it == list.end())
    throw Error(ErrorCode::unknown_mode, "particle has no mode labelled '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - list.begin());
}

complex TwoParticleState::amplitude(std::string_view m1, std::string_view m2) const {
  return at(index_of(Particle::first, m1), index_of(Particle::second, m2));
}

void TwoParticleState::set_amplitude(std::string_view m1, std::string_view m2, complex value) {
  at(index_of(Particle::first, m1), index_of(Particle::second, m2)) = value;
}

double TwoParticleState::norm_squared() const {
  double s = 0.0;
  for (const auto& v : amp_) s += std::norm(v);
  return s;
}

void TwoParticleState::rename_mode(Particle p, std::size_t index, std::string label) {
  auto& list = p == Particle::first ? modes1_ : modes2_;
  if (list.at(index) == label) return;
  if (has_mode(label)) throw Error(ErrorCode::invalid_argument, "mode label " + label + " already in use");
  list[index] = std::move(label);
}

TwoParticleState molecule_bs(complex alpha, complex beta) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12)
    throw Error(ErrorCode::normalization, "|alpha|^2 + |beta|^2 must equal 1");
  TwoParticleState s({"a1", "b1"}, {"a2", "b2"});
  s.set_amplitude("a1", "a2", alpha);
  s.set_amplitude("b1", "b2", beta);
  return s;
}

TwoParticleState phase_shift(const TwoParticleState& state, std::string_view branch, double phi) {
  const Particle p = state.owner(branch);
  const auto& list = state.modes(p);
  const auto k = static_cast<std::size_t>(std::find(list.begin(), list.end(), branch) - list.begin());
  const complex factor = std::polar(1.0, phi);
  TwoParticleState out = state;
  const std::size_t n1 = state.modes(Particle::first).size();
  const std::size_t n2 = state.modes(Particle::second).size();
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      if ((p == Particle::first ? i : j) == k) out.at(i, j) *= factor;
  return out;
}

TwoParticleState atomic_bs(const TwoParticleState& state, const std::pair<std::string, std::string>& input,
                           const std::pair<std::string, std::string>& output) {
  const Particle p = state.owner(input.first);
  if (state.owner(input.second) != p)
    throw Error(ErrorCode::invalid_argument, "beam-splitter inputs belong to different particles");
  if (input.first == input.second) throw Error(ErrorCode::invalid_argument, "beam-splitter inputs must differ");
  const auto& list = state.modes(p);
  const auto ka = static_cast<std::size_t>(std::find(list.begin(), list.end(), input.first) - list.begin());
  const auto kb = static_cast<std::size_t>(std::find(list.begin(), list.end(), input.second) - list.begin());

  TwoParticleState out = state;
  const std::size_t n1 = state.modes(Particle::first).size();
  const std::size_t n2 = state.modes(Particle::second).size();
  const std::size_t other = p == Particle::first ? n2 : n1;
  for (std::size_t o = 0; o < other; ++o) {
    auto ref = [&](TwoParticleState& s, std::size_t k) -> complex& {
      return p == Particle::first ? s.at(k, o) : s.at(o, k);
    };
    const complex in_a = p == Particle::first ? state.at(ka, o) : state.at(o, ka);
    const complex in_b = p == Particle::first ? state.at(kb, o) : state.at(o, kb);
    ref(out, ka) = (I * in_a + in_b) * inv_sqrt2;
    ref(out, kb) = (in_a + I * in_b) * inv_sqrt2;
  }
  // Rename through a temporary label so swapped output names do not collide.
  out.rename_mode(p, ka, "\x01bs-tmp-a");
  out.rename_mode(p, kb, "\x01bs-tmp-b");
  out.rename_mode(p, ka, output.first);
  out.rename_mode(p, kb, output.second);
  return out;
}

TwoParticleState recombine(const TwoParticleState& state) {
  return atomic_bs(atomic_bs(state, {"a1", "b1"}, {"a1'", "b1'"}), {"a2", "b2"}, {"a2'", "b2'"});
}

Coincidences coincidence_probabilities(const TwoParticleState& state) {
  for (const char* m : {"a1'", "b1'", "a2'", "b2'"})
    if (!state.has_mode(m))
      throw Error(ErrorCode::invalid_argument, "coincidences need the state on the primed output modes");
  if (state.modes(Particle::first).size() != 2 || state.modes(Particle::second).size() != 2)
    throw Error(ErrorCode::invalid_argument, "coincidences need exactly two output modes per particle");
  Coincidences c;
  c.a1a2 = std::norm(state.amplitude("a1'", "a2'"));
  c.b1b2 = std::norm(state.amplitude("b1'", "b2'"));
  c.a1b2 = std::norm(state.amplitude("a1'", "b2'"));
  c.b1a2 = std::norm(state.amplitude("b1'", "a2'"));
  return c;
}

std::vector<double> schmidt_coefficients(const TwoParticleState& state) {
  const auto n1 = static_cast<Eigen::Index>(state.modes(Particle::first).size());
  const auto n2 = static_cast<Eigen::Index>(state.modes(Particle::second).size());
  Eigen::MatrixXcd m(n1, n2);
  for (Eigen::Index i = 0; i < n1; ++i)
    for (Eigen::Index j = 0; j < n2; ++j)
      m(i, j) = state.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

double entanglement_entropy(const TwoParticleState& state) {
  double s = 0.0;
  for (double c : schmidt_coefficients(state)) {
    const double p = c * c;
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

void MixedState::add(double weight, TwoParticleState state) {
  if (!(weight >= 0.0)) throw Error(ErrorCode::invalid_argument, "mixture weights must be non-negative");
  components_.emplace_back(weight, std::move(state));
}

double MixedState::total_weight() const {
  double w = 0.0;
  for (const auto& [weight, _] : components_) w += weight;
  return w;
}

MixedState MixedState::incoherent_pairs(complex alpha, complex beta) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12)
    throw Error(ErrorCode::normalization, "|alpha|^2 + |beta|^2 must equal 1");
  MixedState m;
  m.add(std::norm(alpha), molecule_bs(1.0, 0.0));
  m.add(std::norm(beta), molecule_bs(0.0, 1.0));
  return m;
}

MixedState phase_shift(const MixedState& state, std::string_view branch, double phi) {
  MixedState out;
  for (const auto& [w, s] : state.components()) out.add(w, phase_shift(s, branch, phi));
  return out;
}

MixedState recombine(const MixedState& state) {
  MixedState out;
  for (const auto& [w, s] : state.components()) out.add(w, recombine(s));
  return out;
}

Coincidences coincidence_probabilities(const MixedState& state) {
  Coincidences total;
  for (const auto& [w, s] : state.components()) {
    const Coincidences c = coincidence_probabilities(s);
    total.a1a2 += w * c.a1a2;
    total.b1b2 += w * c.b1b2;
    total.a1b2 += w * c.a1b2;
    total.b1a2 += w * c.b1a2;
  }
  return total;
}

Coincidences fringe_point(const TwoParticleState& source, double phi) {
  return coincidence_probabilities(recombine(phase_shift(source, "a1", phi)));
}

Coincidences fringe_point(const MixedState& source, double phi) {
  return coincidence_probabilities(recombine(phase_shift(source, "a1", phi)));
}

namespace {

template <typename State>
double visibility_from_three_phases(const State& source) {
  constexpr double third = 2.0 * std::numbers::pi / 3.0;
  double mean = 0.0;
  complex harmonic{};
  for (int k = 0; k < 3; ++k) {
    const double phi = k * third;
    const double c = fringe_point(source, phi).a1a2;
    mean += c / 3.0;
    harmonic += (2.0 / 3.0) * c * std::polar(1.0, -phi);
  }
  return mean > 0.0 ? std::abs(harmonic) / mean : 0.0;
}

}  // namespace

double fringe_visibility(const TwoParticleState& source) { return visibility_from_three_phases(source); }
double fringe_visibility(const MixedState& source) { return visibility_from_three_phases(source); }

SpinState SpinState::singlet() {
  SpinState s;
  s.set_amplitude(Spin::up, Spin::down, inv_sqrt2);
  s.set_amplitude(Spin::down, Spin::up, -inv_sqrt2);
  return s;
}

SpinState SpinState::product(Spin s1, Spin s2) {
  SpinState s;
  s.set_amplitude(s1, s2, 1.0);
  return s;
}

double SpinState::norm_squared() const {
  double s = 0.0;
  for (const auto& v : amp_) s += std::norm(v);
  return s;
}

namespace {

// Columns are the images of |up> and |down>.
constexpr double hadamard[2][2] = {{1.0, 1.0}, {1.0, -1.0}};

}  // namespace

SpinState rf_pulse(const SpinState& state, PulseTarget target) {
  const bool on_first = target != PulseTarget::second;
  const bool on_second = target != PulseTarget::first;
  SpinState out;
  for (std::size_t o1 = 0; o1 < 2; ++o1)
    for (std::size_t o2 = 0; o2 < 2; ++o2) {
      complex v{};
      for (std::size_t i1 = 0; i1 < 2; ++i1)
        for (std::size_t i2 = 0; i2 < 2; ++i2) {
          const double f1 = on_first ? hadamard[o1][i1] * inv_sqrt2 : (o1 == i1 ? 1.0 : 0.0);
          const double f2 = on_second ? hadamard[o2][i2] * inv_sqrt2 : (o2 == i2 ? 1.0 : 0.0);
          if (f1 != 0.0 && f2 != 0.0) v += f1 * f2 * state.amplitudes()[2 * i1 + i2];
        }
      out.set_amplitude(static_cast<Spin>(o1), static_cast<Spin>(o2), v);
    }
  return out;
}

double overlap_magnitude(const SpinState& a, const SpinState& b) {
  complex s{};
  for (std::size_t k = 0; k < 4; ++k) s += std::conj(a.amplitudes()[k]) * b.amplitudes()[k];
  return std::abs(s);
}

double SpinPathState::norm_squared() const {
  double s = 0.0;
  for (const auto& c : by_spin_) s += c.norm_squared();
  return s;
}

std::size_t SpinPathState::nonzero_count(double tol) const { return nonzero_magnitudes(tol).size(); }

std::vector<double> SpinPathState::nonzero_magnitudes(double tol) const {
  std::vector<double> out;
  for (const auto& c : by_spin_) {
    const std::size_t n1 = c.modes(Particle::first).size();
    const std::size_t n2 = c.modes(Particle::second).size();
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j)
        if (std::abs(c.at(i, j)) > tol) out.push_back(std::abs(c.at(i, j)));
  }
  return out;
}

std::array<double, 4> SpinPathState::spin_probabilities() const {
  std::array<double, 4> p{};
  for (std::size_t k = 0; k < 4; ++k) p[k] = by_spin_[k].norm_squared();
  return p;
}

SpinPathState spin_path_product(const TwoParticleState& path, const SpinState& spin) {
  return SpinPathState({scaled(path, spin.amplitudes()[0]), scaled(path, spin.amplitudes()[1]),
                        scaled(path, spin.amplitudes()[2]), scaled(path, spin.amplitudes()[3])});
}

SpinPathState phase_shift(const SpinPathState& state, std::string_view branch, double phi) {
  const auto& c = state.components();
  return SpinPathState({phase_shift(c[0], branch, phi), phase_shift(c[1], branch, phi),
                        phase_shift(c[2], branch, phi), phase_shift(c[3], branch, phi)});
}

SpinPathState recombine(const SpinPathState& state) {
  const auto& c = state.components();
  return SpinPathState({recombine(c[0]), recombine(c[1]), recombine(c[2]), recombine(c[3])});
}

SpinPathState rf_pulse(const SpinPathState& state, PulseTarget target) {
  // The pulse acts on the spin index only; each output component is a
  // combination of input components with the same coefficients as rf_pulse.
  std::array<TwoParticleState, 4> out = state.components();
  for (std::size_t o = 0; o < 4; ++o) {
    std::array<complex, 4> coeffs{};
    for (std::size_t i = 0; i < 4; ++i) {
      std::array<complex, 4> basis{};
      basis[i] = 1.0;
      coeffs[i] = rf_pulse(SpinState(basis), target).amplitudes()[o];
    }
    TwoParticleState acc = scaled(state.components()[0], coeffs[0]);
    for (std::size_t i = 1; i < 4; ++i) acc = combine(acc, 1.0, state.components()[i], coeffs[i]);
    out[o] = acc;
  }
  return SpinPathState(out);
}

Coincidences coincidence_probabilities(const SpinPathState& state) {
  Coincidences total;
  for (const auto& comp : state.components()) {
    const Coincidences c = coincidence_probabilities(comp);
    total.a1a2 += c.a1a2;
    total.b1b2 += c.b1b2;
    total.a1b2 += c.a1b2;
    total.b1a2 += c.b1a2;
  }
  return total;
}

Coincidences conditional_coincidences(const SpinPathState& state, Spin s1, Spin s2) {
  const TwoParticleState& comp = state.component(s1, s2);
  const double p = comp.norm_squared();
  if (!(p > 0.0)) throw Error(ErrorCode::invalid_argument, "spin outcome has zero probability");
  Coincidences c = coincidence_probabilities(comp);
  c.a1a2 /= p;
  c.b1b2 /= p;
  c.a1b2 /= p;
  c.b1a2 /= p;
  return c;
}

}  // namespace molent::optics
