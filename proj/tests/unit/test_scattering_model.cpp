#include <gtest/gtest.h>

#include <cmath>

#include "molent/errors.hpp"
#include "molent/scattering_model.hpp"
#include "molent/units.hpp"

using namespace molent;

namespace {

// Constants typed in independently of the library tables.
constexpr double hbar = 1.054571817e-34;
constexpr double amu = 1.66053906660e-27;
constexpr double mass_k40 = 39.96399848 * amu;
constexpr double nm = 1e-9;

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

SweepSchedule paper_schedule(double rate_g_per_ms = 2.0) {
  return SweepSchedule::standard_ramp(units::gauss_per_ms(rate_g_per_ms), 13e-3);
}

}  // namespace

TEST(ScatteringLength, StartOfSweepMatchesPublishedValue) {
  const auto p = FeshbachParams::potassium40();
  // 9.2 nm * (1 - 7.8 / 6.5) = -1.84 nm
  EXPECT_NEAR(scattering_length(p, 208.6), -1.84 * nm, 1e-12 * nm);
}

TEST(ScatteringLength, ZeroCrossingAtResonancePlusWidth) {
  const auto p = FeshbachParams::potassium40();
  EXPECT_NEAR(scattering_length(p, 209.9), 0.0, 1e-12 * nm);
}

TEST(ScatteringLength, EndOfSweep) {
  const auto p = FeshbachParams::potassium40();
  // 9.2 * (1 - 7.8 / 16.5) = 4.850909... nm
  const double hand = 9.2 * (16.5 - 7.8) / 16.5;
  EXPECT_NEAR(scattering_length(p, 218.6) / nm, hand, 1e-12);
  EXPECT_NEAR(scattering_length(p, 218.6) / nm, 4.849, 0.005);
}

TEST(ScatteringLength, PoleIsAnError) {
  const auto p = FeshbachParams::potassium40();
  EXPECT_EQ(code_of([&] { scattering_length(p, 202.1); }), ErrorCode::field_pole);
  EXPECT_EQ(code_of([&] { scattering_length(p, 202.1 + 1e-8); }), ErrorCode::field_pole);
  EXPECT_NO_THROW(scattering_length(p, 202.1 + 1e-3));
}

TEST(ScatteringLength, SignStructureAroundResonance) {
  const auto p = FeshbachParams::potassium40();
  for (int i = 1; i < 400; ++i) {
    const double b = p.resonance_field + 0.05 * i;
    const double a = scattering_length(p, b);
    if (b > p.resonance_field + p.resonance_width + 1e-9) {
      EXPECT_GT(a, 0.0) << b;
    } else if (b < p.resonance_field + p.resonance_width - 1e-9) {
      EXPECT_LT(a, 0.0) << b;
    }
  }
}

TEST(ScatteringLength, MonotoneAboveResonance) {
  const auto p = FeshbachParams::potassium40();
  double prev = scattering_length(p, p.resonance_field + 0.01);
  for (int i = 2; i < 2000; ++i) {
    const double a = scattering_length(p, p.resonance_field + 0.01 * i);
    EXPECT_GT(a, prev);
    prev = a;
  }
}

TEST(TransverseLength, PotassiumGuide) {
  const auto p = FeshbachParams::potassium40();
  const double omega = 2.0 * 3.141592653589793 * 69e3;
  const double hand = std::sqrt(hbar / (0.5 * mass_k40 * omega));
  EXPECT_NEAR(transverse_length(p), hand, 1e-12 * hand);
  EXPECT_NEAR(transverse_length(p) / (85.0 * nm), 1.0, 0.01);
}

TEST(TransverseLength, ScalesAsInverseRootFrequency) {
  auto p = FeshbachParams::potassium40();
  const double base = transverse_length(p);
  p.omega_perp *= 4.0;
  EXPECT_NEAR(transverse_length(p), 0.5 * base, 1e-15 * base);
}

TEST(TransverseLength, LithiumAtSameFrequency) {
  auto p = FeshbachParams::potassium40();
  const double k40 = transverse_length(p);
  p.atom_mass = atomic_mass(Species::lithium6);
  EXPECT_NEAR(transverse_length(p) / k40, std::sqrt(39.96399848 / 6.0151228874), 1e-12);
  EXPECT_NEAR(transverse_length(p) / (85.0 * nm * std::sqrt(39.964 / 6.015)), 1.0, 0.01);
}

TEST(TransverseLength, RejectsBadParameters) {
  auto p = FeshbachParams::potassium40();
  p.omega_perp = 0.0;
  EXPECT_EQ(code_of([&] { transverse_length(p); }), ErrorCode::invalid_argument);
}

TEST(A1d, PublishedStartValue) {
  const double a1d = a1d_from_a(-1.84 * nm, 85.0 * nm);
  // -(42.5 nm)(85 / -1.84 - 1.4603545088)
  const double hand = -42.5 * (85.0 / -1.84 - 1.4603545088) * nm;
  EXPECT_NEAR(a1d, hand, 1e-12 * hand);
  EXPECT_NEAR(a1d / 2.04e-6, 1.0, 0.015);
}

TEST(A1d, ConfinementInducedResonanceIsAnError) {
  const double a_perp = 85.0 * nm;
  EXPECT_EQ(code_of([&] { a1d_from_a(a_perp / 1.4603545088, a_perp); }), ErrorCode::confinement_resonance);
  EXPECT_NEAR(a_perp / 1.4603545088 / nm, 58.2, 0.05);
}

TEST(A1d, EqualLengths) {
  const double a1d = a1d_from_a(85.0 * nm, 85.0 * nm);
  EXPECT_NEAR(a1d / nm, 19.565, 0.005);
}

TEST(A1d, ZeroScatteringLengthIsAnError) {
  EXPECT_EQ(code_of([] { a1d_from_a(0.0, 85.0 * nm); }), ErrorCode::zero_scattering_length);
}

TEST(Coupling, SignAndMagnitude) {
  const double mu = 0.5 * mass_k40;
  const double g = g1d(2.04e-6, mu);
  EXPECT_LT(g, 0.0);
  EXPECT_NEAR(-g, hbar * hbar / (mu * 2.04e-6), 1e-12 * -g);

  const double a_end = 9.2 * (16.5 - 7.8) / 16.5 * nm;
  const double a1d_end = a1d_from_a(a_end, 85.0 * nm);
  EXPECT_NEAR(a1d_end / nm, -682.0, 1.0);
  EXPECT_GT(g1d(a1d_end, mu), 0.0);
}

TEST(Coupling, VanishesForLargeA1d) {
  const double mu = 0.5 * mass_k40;
  EXPECT_LT(std::abs(g1d(1e6, mu)) / std::abs(g1d(2e-6, mu)), 1e-11);
  EXPECT_LT(std::abs(g1d(-1e6, mu)) / std::abs(g1d(2e-6, mu)), 1e-11);
  EXPECT_EQ(code_of([&] { g1d(0.0, mu); }), ErrorCode::divergent_coupling);
  EXPECT_EQ(code_of([&] { g1d(1e-9, mu, 1e-8); }), ErrorCode::divergent_coupling);
}

TEST(Coupling, DirectFormAgreesWithChain) {
  const auto p = FeshbachParams::potassium40();
  const double a_perp = transverse_length(p);
  const double mu = p.reduced_mass();
  for (double b : {205.0, 208.6, 209.5, 210.3, 214.0, 218.6, 240.0}) {
    const double a = scattering_length(p, b);
    const double chained = g1d(a1d_from_a(a, a_perp), mu);
    EXPECT_NEAR(coupling_from_scattering_length(a, a_perp, mu), chained, 1e-12 * std::abs(chained)) << b;
  }
  EXPECT_EQ(coupling_from_scattering_length(0.0, a_perp, mu), 0.0);
}

TEST(CouplingAtTime, FollowsTheSweep) {
  const auto p = FeshbachParams::potassium40();
  const auto s = paper_schedule();
  const double mu = p.reduced_mass();
  const double a1d0 = a1d_from_a(-1.84 * nm, transverse_length(p));
  EXPECT_NEAR(coupling_at_time(p, s, 0.0), -hbar * hbar / (mu * a1d0), 1e-10 * hbar * hbar / (mu * a1d0));

  const double t_cross = 1.3 / s.rate;
  const double g0 = std::abs(coupling_at_time(p, s, 0.0));
  EXPECT_LT(std::abs(coupling_at_time(p, s, t_cross)) / g0, 1e-9);
  EXPECT_LT(coupling_at_time(p, s, 0.99 * t_cross), 0.0);
  EXPECT_GT(coupling_at_time(p, s, 1.01 * t_cross), 0.0);

  const double plateau = coupling_at_time(p, s, s.ramp_duration());
  EXPECT_GT(plateau, 0.0);
  EXPECT_EQ(coupling_at_time(p, s, 12e-3), plateau);
  EXPECT_EQ(coupling_at_time(p, s, 13e-3), plateau);
}

TEST(CouplingAtTime, RejectsTimesOutsideSchedule) {
  const auto p = FeshbachParams::potassium40();
  const auto s = paper_schedule();
  EXPECT_EQ(code_of([&] { coupling_at_time(p, s, -1e-6); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([&] { coupling_at_time(p, s, 14e-3); }), ErrorCode::invalid_argument);
}

TEST(Schedule, FieldProfile) {
  const auto s = paper_schedule();
  EXPECT_DOUBLE_EQ(s.field_at(0.0), 208.6);
  EXPECT_NEAR(s.field_at(2.5e-3), 213.6, 1e-12);
  EXPECT_DOUBLE_EQ(s.field_at(5e-3), 218.6);
  EXPECT_DOUBLE_EQ(s.field_at(13e-3), 218.6);
  EXPECT_DOUBLE_EQ(s.ramp_duration(), 5e-3);
}

TEST(Schedule, Validation) {
  const auto p = FeshbachParams::potassium40();
  EXPECT_NO_THROW(paper_schedule().validate(p));
  // 0.5 G/ms needs 20 ms for 10 G.
  EXPECT_EQ(code_of([&] { paper_schedule(0.5).validate(p); }), ErrorCode::invalid_argument);
  SweepSchedule below{201.0, 10.0, 2e3, 13e-3};
  EXPECT_EQ(code_of([&] { below.validate(p); }), ErrorCode::field_pole);
  SweepSchedule stopped{208.6, 10.0, 0.0, 13e-3};
  EXPECT_EQ(code_of([&] { stopped.validate(p); }), ErrorCode::invalid_argument);
}

TEST(Schedule, PaperSweepIsRegular) {
  EXPECT_NO_THROW(check_sweep_regular(FeshbachParams::potassium40(), paper_schedule()));
}

TEST(Schedule, SweepThroughConfinementResonanceRejected) {
  auto p = FeshbachParams::potassium40();
  p.background_length = 100.0 * nm;
  // a runs from 1.3 nm at 210 G to 72 nm at 230 G, past a_perp / 1.46 = 58.6 nm.
  const SweepSchedule s{210.0, 20.0, 2e3, 13e-3};
  EXPECT_EQ(code_of([&] { check_sweep_regular(p, s); }), ErrorCode::confinement_resonance);
}

TEST(Schedule, ZeroCrossingIsNotAnError) {
  // g passes through zero at 209.9 G; that is the whole point of the sweep.
  const auto p = FeshbachParams::potassium40();
  const SweepSchedule s{209.0, 2.0, 2e3, 13e-3};
  EXPECT_NO_THROW(check_sweep_regular(p, s));
}
