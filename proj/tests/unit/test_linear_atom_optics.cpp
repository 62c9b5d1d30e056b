#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "molent/atom_optics.hpp"
#include "molent/errors.hpp"
#include "oracles.hpp"

using namespace molent;
using namespace molent::optics;

namespace {

constexpr double pi = 3.14159265358979323846;
const double s = 1.0 / std::sqrt(2.0);

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::io;
}

double max_diff(const TwoParticleState& a, const TwoParticleState& b) {
  double worst = 0.0;
  for (const auto& m1 : a.modes(Particle::first))
    for (const auto& m2 : a.modes(Particle::second))
      worst = std::max(worst, std::abs(a.amplitude(m1, m2) - b.amplitude(m1, m2)));
  return worst;
}

}  // namespace

TEST(MoleculeBs, ProductAndBellStates) {
  const auto product = molecule_bs(1.0, 0.0);
  EXPECT_EQ(product.amplitude("a1", "a2"), complex(1.0));
  EXPECT_EQ(product.amplitude("b1", "b2"), complex(0.0));
  EXPECT_EQ(product.amplitude("a1", "b2"), complex(0.0));
  const auto pc = schmidt_coefficients(product);
  EXPECT_NEAR(pc[0], 1.0, 1e-15);
  EXPECT_NEAR(pc[1], 0.0, 1e-15);
  EXPECT_NEAR(entanglement_entropy(product), 0.0, 1e-15);

  const auto bell = molecule_bs(s, -s);
  const auto bc = schmidt_coefficients(bell);
  EXPECT_NEAR(bc[0], s, 1e-15);
  EXPECT_NEAR(bc[1], s, 1e-15);
  EXPECT_NEAR(entanglement_entropy(bell), 1.0, 1e-14);
}

TEST(MoleculeBs, UnequalWeightsEntropy) {
  const auto st = molecule_bs(std::sqrt(0.7), std::sqrt(0.3));
  EXPECT_NEAR(entanglement_entropy(st), -0.7 * std::log2(0.7) - 0.3 * std::log2(0.3), 1e-14);
}

TEST(MoleculeBs, RejectsUnnormalized) {
  EXPECT_EQ(code_of([] { molecule_bs(1.0, 1.0); }), ErrorCode::normalization);
  EXPECT_EQ(code_of([] { MixedState::incoherent_pairs(0.5, 0.5); }), ErrorCode::normalization);
}

TEST(PhaseShift, IdentityAtZeroAndTwoPi) {
  const auto bell = molecule_bs(s, -s);
  EXPECT_EQ(max_diff(phase_shift(bell, "a1", 0.0), bell), 0.0);
  EXPECT_LT(max_diff(phase_shift(bell, "a1", 2.0 * pi), bell), 1e-15);
  EXPECT_EQ(code_of([&] { phase_shift(bell, "c1", 1.0); }), ErrorCode::unknown_mode);
}

TEST(PhaseShift, ActsOnOneBranch) {
  const auto bell = molecule_bs(s, -s);
  const auto out = phase_shift(bell, "b2", pi / 2);
  EXPECT_NEAR(std::abs(out.amplitude("b1", "b2") - complex(0.0, -s)), 0.0, 1e-15);
  EXPECT_EQ(out.amplitude("a1", "a2"), complex(s));
}

TEST(AtomicBs, MatrixIsUnitary) {
  TwoParticleState st({"a1", "b1"}, {"a2", "b2"});
  st.set_amplitude("a1", "a2", 1.0);
  const auto from_a = atomic_bs(st, {"a1", "b1"}, {"a1'", "b1'"});
  TwoParticleState st_b({"a1", "b1"}, {"a2", "b2"});
  st_b.set_amplitude("b1", "a2", 1.0);
  const auto from_b = atomic_bs(st_b, {"a1", "b1"}, {"a1'", "b1'"});
  // columns of (1/sqrt2) [[i, 1], [1, i]]
  EXPECT_NEAR(std::abs(from_a.amplitude("a1'", "a2") - complex(0.0, s)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(from_a.amplitude("b1'", "a2") - complex(s, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(from_b.amplitude("a1'", "a2") - complex(s, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(from_b.amplitude("b1'", "a2") - complex(0.0, s)), 0.0, 1e-15);
  const complex inner = std::conj(from_a.amplitude("a1'", "a2")) * from_b.amplitude("a1'", "a2") +
                        std::conj(from_a.amplitude("b1'", "a2")) * from_b.amplitude("b1'", "a2");
  EXPECT_LT(std::abs(inner), 1e-15);
}

TEST(AtomicBs, TwiceSendsAToB) {
  // [[i,1],[1,i]]^2 / 2 = [[0, i], [i, 0]]: all population leaves a.
  TwoParticleState st({"a1", "b1"}, {"a2", "b2"});
  st.set_amplitude("a1", "a2", 1.0);
  const auto once = atomic_bs(st, {"a1", "b1"}, {"x", "y"});
  const auto twice = atomic_bs(once, {"x", "y"}, {"a1", "b1"});
  EXPECT_NEAR(std::norm(twice.amplitude("a1", "a2")), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(twice.amplitude("b1", "a2") - complex(0.0, 1.0)), 0.0, 1e-15);
}

TEST(AtomicBs, Errors) {
  const auto bell = molecule_bs(s, -s);
  EXPECT_EQ(code_of([&] { atomic_bs(bell, {"a1", "q1"}, {"a1'", "b1'"}); }), ErrorCode::unknown_mode);
  EXPECT_EQ(code_of([&] { atomic_bs(bell, {"a1", "a2"}, {"a1'", "b1'"}); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([&] { atomic_bs(bell, {"a1", "b1"}, {"a2", "x"}); }), ErrorCode::invalid_argument);
}

TEST(Recombine, MatchesHandExpansion) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double theta = 0.5 * pi * unit(rng);
    const complex alpha = std::polar(std::cos(theta), 2.0 * pi * unit(rng));
    const complex beta = std::polar(std::sin(theta), 2.0 * pi * unit(rng));
    const double phi = 2.0 * pi * unit(rng);
    const auto out = recombine(phase_shift(molecule_bs(alpha, beta), "a1", phi));
    const auto ref = oracle::outgoing_amplitudes(alpha, beta, phi);
    EXPECT_LT(std::abs(out.amplitude("a1'", "a2'") - ref[0]), 1e-15);
    EXPECT_LT(std::abs(out.amplitude("a1'", "b2'") - ref[1]), 1e-15);
    EXPECT_LT(std::abs(out.amplitude("b1'", "a2'") - ref[2]), 1e-15);
    EXPECT_LT(std::abs(out.amplitude("b1'", "b2'") - ref[3]), 1e-15);
    EXPECT_NEAR(out.norm_squared(), 1.0, 1e-12);
  }
}

TEST(Recombine, CommutesWithPhaseOnOtherParticle) {
  const auto bell = molecule_bs(s, -s);
  const auto lhs = atomic_bs(phase_shift(bell, "a2", 0.7), {"a1", "b1"}, {"a1'", "b1'"});
  const auto rhs = phase_shift(atomic_bs(bell, {"a1", "b1"}, {"a1'", "b1'"}), "a2", 0.7);
  EXPECT_LT(max_diff(lhs, rhs), 1e-15);
}

TEST(Coincidences, BellFringes) {
  const auto bell = molecule_bs(s, -s);
  for (int k = 0; k < 100; ++k) {
    const double phi = 2.0 * pi * k / 100.0;
    const auto c = fringe_point(bell, phi);
    EXPECT_NEAR(c.a1a2, (1.0 + std::cos(phi)) / 4.0, 1e-12);
    EXPECT_NEAR(c.b1b2, (1.0 + std::cos(phi)) / 4.0, 1e-12);
    EXPECT_NEAR(c.a1b2, (1.0 - std::cos(phi)) / 4.0, 1e-12);
    EXPECT_NEAR(c.b1a2, (1.0 - std::cos(phi)) / 4.0, 1e-12);
    EXPECT_NEAR(c.total(), 1.0, 1e-12);
    const auto shifted = fringe_point(bell, phi + 2.0 * pi);
    EXPECT_NEAR(shifted.a1a2, c.a1a2, 1e-12);
    EXPECT_NEAR(shifted.a1b2, c.a1b2, 1e-12);
  }
  const auto quarter = fringe_point(bell, pi / 2);
  for (double v : {quarter.a1a2, quarter.b1b2, quarter.a1b2, quarter.b1a2}) EXPECT_NEAR(v, 0.25, 1e-15);
  const auto zero = fringe_point(bell, 0.0);
  EXPECT_NEAR(zero.a1a2, 0.5, 1e-15);
  EXPECT_NEAR(zero.b1b2, 0.5, 1e-15);
  EXPECT_NEAR(zero.a1b2, 0.0, 1e-15);
  EXPECT_NEAR(zero.b1a2, 0.0, 1e-15);
}

TEST(Coincidences, SumIsOneForRandomPhases) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  const auto bell = molecule_bs(s, -s);
  for (int i = 0; i < 100; ++i) EXPECT_NEAR(fringe_point(bell, angle(rng)).total(), 1.0, 1e-12);
}

TEST(Coincidences, DephasedMixtureHasNoFringe) {
  const auto mix = MixedState::incoherent_pairs(s, -s);
  for (int k = 0; k < 100; ++k) {
    const auto c = fringe_point(mix, 2.0 * pi * k / 100.0);
    for (double v : {c.a1a2, c.b1b2, c.a1b2, c.b1a2}) EXPECT_NEAR(v, 0.25, 1e-12);
  }
  EXPECT_NEAR(fringe_visibility(mix), 0.0, 1e-12);
  EXPECT_NEAR(fringe_visibility(molecule_bs(s, -s)), 1.0, 1e-12);
  EXPECT_NEAR(fringe_visibility(molecule_bs(std::sqrt(0.7), std::sqrt(0.3))), 2.0 * std::sqrt(0.21), 1e-12);
}

TEST(Coincidences, NeedOutputModes) {
  EXPECT_EQ(code_of([] { coincidence_probabilities(molecule_bs(s, -s)); }), ErrorCode::invalid_argument);
}

TEST(Labels, Validation) {
  EXPECT_EQ(code_of([] { TwoParticleState({"a1", "a1"}, {"a2"}); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { TwoParticleState({"a1"}, {"a1"}); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { TwoParticleState({}, {"a2"}); }), ErrorCode::invalid_argument);
  std::vector<std::string> many;
  for (int i = 0; i < 17; ++i) many.push_back("m" + std::to_string(i));
  EXPECT_EQ(code_of([&] { TwoParticleState(many, {"x"}); }), ErrorCode::invalid_argument);
  const auto bell = molecule_bs(s, -s);
  EXPECT_EQ(bell.owner("b2"), Particle::second);
  EXPECT_EQ(code_of([&] { bell.amplitude("a2", "a1"); }), ErrorCode::unknown_mode);
}

TEST(Spin, RfPulseDefinitionAndInvolution) {
  const auto up_up = SpinState::product(Spin::up, Spin::up);
  const auto once = rf_pulse(up_up, PulseTarget::first);
  EXPECT_NEAR(std::abs(once.amplitude(Spin::up, Spin::up) - s), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(once.amplitude(Spin::down, Spin::up) - s), 0.0, 1e-15);
  EXPECT_EQ(once.amplitude(Spin::up, Spin::down), complex(0.0));
  const auto twice = rf_pulse(once, PulseTarget::first);
  EXPECT_NEAR(std::abs(twice.amplitude(Spin::up, Spin::up) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(twice.norm_squared(), 1.0, 1e-15);
}

TEST(Spin, SingletUnderPulseOnBoth) {
  const auto singlet = SpinState::singlet();
  EXPECT_EQ(singlet.amplitude(Spin::up, Spin::down), complex(s));
  EXPECT_EQ(singlet.amplitude(Spin::down, Spin::up), complex(-s));
  const auto pulsed = rf_pulse(singlet, PulseTarget::both);
  // hand result: -(|ud> - |du>)/sqrt2
  EXPECT_NEAR(std::abs(pulsed.amplitude(Spin::up, Spin::down) + s), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(pulsed.amplitude(Spin::down, Spin::up) - s), 0.0, 1e-15);
  EXPECT_NEAR(overlap_magnitude(pulsed, singlet), 1.0, 1e-12);
}

TEST(SpinPath, DoubleBellProduct) {
  const auto st = spin_path_product(molecule_bs(s, -s), SpinState::singlet());
  EXPECT_EQ(st.nonzero_count(), 4u);
  for (double m : st.nonzero_magnitudes()) EXPECT_NEAR(m, 0.5, 1e-15);
  EXPECT_NEAR(st.norm_squared(), 1.0, 1e-12);
}

TEST(SpinPath, TracingSpinGivesPathFringes) {
  const auto path = molecule_bs(s, -s);
  const auto st = spin_path_product(path, SpinState::singlet());
  for (double phi : {0.0, 0.4, 1.3, pi, 5.0}) {
    const auto traced = coincidence_probabilities(recombine(phase_shift(st, "a1", phi)));
    const auto direct = fringe_point(path, phi);
    EXPECT_NEAR(traced.a1a2, direct.a1a2, 1e-12);
    EXPECT_NEAR(traced.b1b2, direct.b1b2, 1e-12);
    EXPECT_NEAR(traced.a1b2, direct.a1b2, 1e-12);
    EXPECT_NEAR(traced.b1a2, direct.b1a2, 1e-12);
  }
}

TEST(SpinPath, ProductSpinCarriesNoPathCorrelation) {
  const auto path = molecule_bs(s, -s);
  const auto spin = rf_pulse(SpinState::product(Spin::up, Spin::down), PulseTarget::first);
  const auto st = recombine(phase_shift(spin_path_product(path, spin), "a1", 0.9));
  const auto uncond = coincidence_probabilities(st);
  for (Spin s1 : {Spin::up, Spin::down}) {
    const auto c = conditional_coincidences(st, s1, Spin::down);
    EXPECT_NEAR(c.a1a2, uncond.a1a2, 1e-12);
    EXPECT_NEAR(c.a1b2, uncond.a1b2, 1e-12);
  }
  const auto probs = st.spin_probabilities();
  EXPECT_NEAR(probs[SpinState::index(Spin::up, Spin::down)], 0.5, 1e-12);
  EXPECT_NEAR(probs[SpinState::index(Spin::up, Spin::up)], 0.0, 1e-12);
}

TEST(SpinPath, OperationsPreserveNorm) {
  auto st = spin_path_product(molecule_bs(std::sqrt(0.7), std::sqrt(0.3)), SpinState::singlet());
  st = phase_shift(st, "b2", 2.1);
  EXPECT_NEAR(st.norm_squared(), 1.0, 1e-12);
  st = recombine(st);
  EXPECT_NEAR(st.norm_squared(), 1.0, 1e-12);
  st = rf_pulse(st, PulseTarget::second);
  EXPECT_NEAR(st.norm_squared(), 1.0, 1e-12);
}
