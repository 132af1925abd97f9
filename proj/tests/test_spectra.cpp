#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "qlna/spectra.hpp"
#include "qlna/validate.hpp"

using namespace qlna;

namespace {

std::set<int> mode2_targets(const StateCorrection& s) {
  std::set<int> out;
  for (const auto& [key, amp] : s.amplitudes) {
    if (key.j1 == s.base.j1 && std::abs(amp.amplitude) > 0.0) out.insert(key.j2);
  }
  return out;
}

std::set<int> mode1_targets(const StateCorrection& s) {
  std::set<int> out;
  for (const auto& [key, amp] : s.amplitudes) out.insert(key.j1);
  return out;
}

}  // namespace

TEST(LiteralEnergies, GroundStateIsHalfQuantum) {
  const AppendixAConstants c = derive_constants(table1());
  const ModeEnergies e = literal_energies(0, 0, c);
  EXPECT_EQ(e.E1, cplx(kHbar * c.modes.omega1 / 2));
  EXPECT_EQ(e.E2, cplx(kHbar * c.modes.omega2 / 2));
}

TEST(LiteralEnergies, NoTransconductanceMeansRealLevels) {
  CircuitParams p = table1();
  p.g_m = 0.0;
  const AppendixAConstants c = derive_constants(p);
  const ModeEnergies e = literal_energies(1, 0, c);
  EXPECT_NEAR(e.E1.real() / (1.5 * kHbar * c.modes.omega1), 1.0, 1e-15);
  EXPECT_EQ(e.E1.imag(), 0.0);
  EXPECT_THROW(literal_energies(-1, 0, c), Error);
}

TEST(LiteralEnergies, SourceVoltageMovesOnlyOscillatorTwo) {
  CircuitParams p = table1();
  double prev = 0.0;
  cplx e1_ref{};
  for (double v : {1e-4, 2e-4, 3e-4, 4e-4}) {
    p.V_rf = v;
    const ModeEnergies e = literal_energies(1, 1, derive_constants(p));
    if (v == 1e-4) e1_ref = e.E1;
    EXPECT_EQ(e.E1, e1_ref);
    EXPECT_GT(std::abs(e.E2), prev);
    prev = std::abs(e.E2);
  }
}

TEST(DiagonalEnergy, DecoupledLadderAndMargin) {
  const int dim = 12;
  const AppendixAConstants c = derive_constants(decoupled_limit(table1()));
  const Matrix h = build_h0(c, dim);
  const cplx e = diagonal_energy(h, 2, 5);
  EXPECT_NEAR(oracle::rel(e.real(), kHbar * (2.5 * c.modes.omega1 + 5.5 * c.modes.omega2)), 0.0, 1e-14);
  EXPECT_THROW(diagonal_energy(h, dim - 3, 0), Error);
  EXPECT_NO_THROW(diagonal_energy(h, dim - 4, dim - 4));
}

TEST(DiagonalEnergy, ChargeFluxSelfTermIsLevelIndependent) {
  // <j| Q phi |j> = -i hbar / 2 for every j, so the imaginary part of the
  // diagonal does not grow with the level.
  const int dim = 12;
  const AppendixAConstants c = derive_constants(checks::undriven(table1()));
  const Matrix h = build_h0(c, dim);
  const double im0 = diagonal_energy(h, 0, 0).imag();
  for (int j = 1; j <= dim - 4; ++j) EXPECT_NEAR(diagonal_energy(h, j, j).imag() / im0, 1.0, 1e-12);
  const H0Coefficients k = h0_coefficients(c);
  EXPECT_NEAR(im0 / (-kHbar / 2 * (k.q1_phi1 + k.q2_phi2)), 1.0, 1e-12);
}

TEST(FirstOrder, EnergyCorrectionVanishes) {
  const int dim = 12;
  const Matrix hp = build_hp(derive_constants(table1()), dim);
  for (int j1 = 0; j1 < dim; ++j1)
    for (int j2 = 0; j2 < dim; ++j2) EXPECT_EQ(first_order_energy(hp, j1, j2), cplx{});
  EXPECT_THROW(first_order_energy(hp, dim, 0), Error);
}

TEST(FirstOrder, AmplitudesAreMatrixElementsOverGaps) {
  const int dim = 12;
  const AppendixAConstants c = derive_constants(table1());
  const Matrix h0 = build_h0(c, dim), hp = build_hp(c, dim);
  const StateCorrection s = first_order_state(1, 2, hp, h0);
  EXPECT_EQ(s.amplitudes.count({1, 2}), 0u);
  double norm = 0.0;
  for (const auto& [key, amp] : s.amplitudes) {
    const int row = key.j1 * dim + key.j2, col = 1 * dim + 2;
    const cplx ref = hp(row, col) / (h0(row, row) - h0(col, col));
    EXPECT_NEAR(std::abs(amp.amplitude - ref) / std::abs(ref), 0.0, 1e-14);
    norm += std::norm(ref);
  }
  EXPECT_NEAR(s.norm_correction / norm, 1.0, 1e-12);
  EXPECT_THROW(first_order_state(dim - 3, 0, hp, h0), Error);
}

TEST(FirstOrder, ModeTwoTermMixesOddNeighbours) {
  const int dim = 16;
  const AppendixAConstants c = derive_constants(table1());
  const Matrix h0 = build_h0(c, dim), hp = build_hp(c, dim, kMode2OnlyHpTerms);
  const StateCorrection s0 = first_order_state(0, 0, hp, h0);
  const StateCorrection s3 = first_order_state(0, 3, hp, h0);
  EXPECT_EQ(mode2_targets(s0), (std::set<int>{1, 3}));
  EXPECT_EQ(mode2_targets(s3), (std::set<int>{0, 2, 4, 6}));
  EXPECT_EQ(mode1_targets(s3), (std::set<int>{0}));
  for (const auto& [key, amp] : s3.amplitudes) EXPECT_TRUE(amp.in_printed_subset);
}

// With g_m = 0 and no overlap capacitance the inverse is diagonal, the
// mode-2 cubic term carries C12^2 = 0 and only Q1^2 phi2 survives: each base
// state reaches j2 +- 1 only.
TEST(FirstOrder, ParameterLimitLeavesOnlyChargeOneTerm) {
  const int dim = 16;
  CircuitParams p = table1();
  p.g_m = 0.0;
  p.L_ov = 0.0;
  const AppendixAConstants c = derive_constants(p);
  ASSERT_EQ(c.inverse.C12, 0.0);
  const Matrix h0 = build_h0(c, dim), hp = build_hp(c, dim);
  EXPECT_EQ(mode2_targets(first_order_state(0, 0, hp, h0)), (std::set<int>{1}));
  EXPECT_EQ(mode2_targets(first_order_state(0, 3, hp, h0)), (std::set<int>{2, 4}));
  EXPECT_EQ(mode1_targets(first_order_state(0, 3, hp, h0)), (std::set<int>{0, 2}));
}

TEST(FirstOrder, FullFixtureReachesModeOneNeighbours) {
  const int dim = 16;
  const AppendixAConstants c = derive_constants(table1());
  const StateCorrection s = first_order_state(0, 0, build_hp(c, dim), build_h0(c, dim));
  EXPECT_TRUE(s.amplitudes.count({2, 1}));
  EXPECT_TRUE(s.amplitudes.count({1, 0}));
  EXPECT_FALSE(s.amplitudes.at({2, 1}).in_printed_subset);
}

TEST(FirstOrder, DegenerateLevelsRaise) {
  const int dim = 6;
  const Matrix h0 = 1e-24 * Matrix::Identity(dim * dim, dim * dim);
  Matrix hp = Matrix::Zero(dim * dim, dim * dim);
  hp(1, 0) = hp(0, 1) = 1e-26;
  EXPECT_THROW(first_order_state(0, 0, hp, h0), Error);
}

TEST(Exact, ZeroCouplingReturnsH0Spectrum) {
  const int dim = 8;
  const AppendixAConstants c = derive_constants(decoupled_limit(table1()));
  const Matrix h0 = build_h0(c, dim);
  const SpectrumReport r = exact_spectrum(h0, build_hp(c, dim), 0.0, c, {{0, 0}, {1, 2}});
  for (Eigen::Index k = 1; k < r.exact_eigenvalues.size(); ++k)
    EXPECT_LE(r.exact_eigenvalues(k - 1).real(), r.exact_eigenvalues(k).real());
  for (const LevelReport& l : r.levels) {
    EXPECT_NEAR(std::abs(l.exact - l.numeric) / std::abs(l.numeric), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(l.literal - l.numeric) / std::abs(l.numeric), 0.0, 1e-13);
    EXPECT_LE(std::abs(l.exact.imag()), 1e-12 * std::abs(l.exact));
  }
}

TEST(Exact, ShiftsAreQuadraticInCoupling) {
  for (cplx r : checks::richardson_ratios(derive_constants(checks::undriven(table1())), 12, checks::richardson_levels()))
    EXPECT_NEAR(std::abs(r - 4.0), 0.0, 0.5);
}

TEST(Exact, MatchingFollowsOverlapNotOrder) {
  Matrix h = Matrix::Zero(4, 4);
  h(0, 0) = 3.0;
  h(1, 1) = 1.0;
  h(2, 2) = 4.0;
  h(3, 3) = 2.0;
  const Eigensystem sys = diagonalize(h);
  EXPECT_EQ(match_level(sys, fock_state(0, 0, 2)), cplx(3.0));
  EXPECT_EQ(match_level(sys, fock_state(1, 1, 2)), cplx(2.0));
}
