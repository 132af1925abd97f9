#pragma once

// Invariant suite behind `qlna validate`. Each check yields one row with a
// measured figure, the limit it was held to and PASS/FAIL, or INFO for
// figures that are reported without a threshold.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qlna/appendix_a.hpp"
#include "qlna/fockspace.hpp"
#include "qlna/response.hpp"
#include "qlna/spectra.hpp"

namespace qlna::checks {

enum class Status { pass, fail, info };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::info: return "INFO";
  }
  return "?";
}

struct CheckRow {
  std::string name;
  Status status;
  double measured;
  double limit;  // NaN for INFO rows
  std::string note;
};

inline constexpr double kNoLimit = std::numeric_limits<double>::quiet_NaN();

inline CheckRow bounded(std::string name, double measured, double limit, std::string note = {}) {
  const Status s = measured <= limit ? Status::pass : Status::fail;
  return {std::move(name), s, measured, limit, std::move(note)};
}

inline double rel(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// ---------------------------------------------------------------------------
// Parameter-level checks

inline CheckRow unit_audit_check(const CircuitParams& p) {
  int bad = 0;
  std::string known;
  for (const auto& row : unit_audit(p)) {
    if (row.consistent) continue;
    if (row.known_mismatch) {
      known += (known.empty() ? "" : " ") + row.name;
    } else {
      ++bad;
    }
  }
  return {"unit_audit", bad == 0 ? Status::pass : Status::fail, double(bad), 0.0,
          known.empty() ? "" : "reported mismatch: " + known};
}

/// Random valid parameter set: every positive scale drawn within [1/2, 2]
/// of the reference value.
inline CircuitParams random_params(std::mt19937_64& rng, const CircuitParams& ref = table1()) {
  std::uniform_real_distribution<double> factor(0.5, 2.0);
  CircuitParams p = ref;
  for (double* f : {&p.W, &p.L_t, &p.t_SiO2, &p.L_ov, &p.T_c, &p.C_f, &p.C_in, &p.C_d, &p.L_g, &p.L_d, &p.g_m,
                    &p.g_m2, &p.g_m3, &p.V_rf, &p.R_s})
    *f *= factor(rng);
  p.gamma = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
  return p;
}

inline double inverse_identity_defect(const CapMatrix& m, const InverseCapMatrix& inv) {
  const double e00 = m.m00 * inv.C11 + m.m01 * inv.C21 - 1.0;
  const double e01 = m.m00 * inv.C12 + m.m01 * inv.C22;
  const double e10 = m.m01 * inv.C11 + m.m11 * inv.C21;
  const double e11 = m.m01 * inv.C12 + m.m11 * inv.C22 - 1.0;
  return std::max({std::abs(e00), std::abs(e01), std::abs(e10), std::abs(e11)});
}

inline CheckRow cap_inverse_check(const CircuitParams& p, int random_draws = 100) {
  double worst = 0.0;
  auto probe = [&](const CircuitParams& q) {
    const CapacitanceStage s = capacitance_stage(q, EvaluationMode::consistent);
    worst = std::max(worst, inverse_identity_defect(s.matrix, s.inverse));
  };
  probe(p);
  std::mt19937_64 rng(20240521);
  for (int k = 0; k < random_draws; ++k) probe(random_params(rng, p));
  return bounded("cap_matrix_inverse", worst, 1e-12, std::to_string(random_draws) + " random draws + fixture");
}

inline CheckRow symmetric_inverse_check(const CircuitParams& p) {
  double worst = 0.0;
  for (auto mode : {EvaluationMode::literal, EvaluationMode::consistent}) {
    const InverseCapMatrix& inv = capacitance_stage(p, mode).inverse;
    worst = std::max(worst, std::abs(inv.C12 - inv.C21));
  }
  return bounded("inverse_C12_equals_C21", worst, 0.0, "both modes");
}

inline CheckRow c11_delta_row(const CircuitParams& p) {
  return {"c11_literal_vs_exact", Status::info, capacitance_stage(p, EvaluationMode::consistent).c11_mode_delta,
          kNoLimit, "relative C11 difference between printed and exact inverse"};
}

inline CheckRow decoupling_check(const CircuitParams& p) {
  const AppendixAConstants c = derive_constants(decoupled_limit(p));
  const ReciprocalCaps& r = c.rc;
  const SteadyStateCoefficients& k = c.coeffs;
  double worst = std::max({std::abs(r.q1q2), std::abs(r.q1p2), std::abs(r.q2p1), std::abs(r.p1p2)});
  for (cplx v : {k.A1, k.A2, k.A3, k.B1, k.B2, k.B3, k.E1w, k.E2w}) worst = std::max(worst, std::abs(v));
  return bounded("decoupled_cross_terms_zero", worst, 0.0);
}

inline CheckRow continuity_check(const CircuitParams& p) {
  // Outputs grouped by unit. An output that cancels to zero at the fixture
  // is compared against its group's scale times the input step, below which
  // only rounding remains.
  auto outputs = [](const CircuitParams& q) {
    const AppendixAConstants c = derive_constants(q);
    const ReciprocalCaps& r = c.rc;
    const SteadyStateCoefficients& k = c.coeffs;
    return std::vector<std::vector<cplx>>{{r.q1, r.q2, r.q1q2, r.p1, r.p2, r.q1p1, r.q2p2, r.q1p2, r.p1p2, r.q2p1},
                                          {r.p1p2_nl, r.q1p2_nl, r.q2p2_nl},
                                          {k.A1, k.A2, k.A3, k.B1, k.B2, k.B3},
                                          {k.E1w, k.E2w}};
  };
  constexpr double kStep = 1e-9;
  const auto base = outputs(p);
  double worst = 0.0;
  for (double CircuitParams::*f : {&CircuitParams::W, &CircuitParams::L_t, &CircuitParams::t_SiO2,
                                   &CircuitParams::L_ov, &CircuitParams::C_in, &CircuitParams::C_d,
                                   &CircuitParams::L_g, &CircuitParams::L_d, &CircuitParams::g_m,
                                   &CircuitParams::g_m2, &CircuitParams::V_rf}) {
    CircuitParams q = p;
    q.*f *= 1.0 + kStep;
    const auto moved = outputs(q);
    for (std::size_t g = 0; g < base.size(); ++g) {
      double group = 0.0;
      for (cplx v : base[g]) group = std::max(group, std::abs(v));
      for (std::size_t k = 0; k < base[g].size(); ++k) {
        const double scale = std::max({std::abs(base[g][k]), std::abs(moved[g][k]), kStep * group});
        if (scale > 0.0) worst = std::max(worst, std::abs(base[g][k] - moved[g][k]) / scale);
      }
    }
  }
  return bounded("constants_continuity", worst, 1e-6, "inputs moved by 1e-9 relative");
}

// ---------------------------------------------------------------------------
// Operator-level checks

inline CheckRow commutator_check(const CircuitParams& p, int dim = 16) {
  const AppendixAConstants c = derive_constants(p);
  const OperatorSet ops = build_operator_set(c, dim);
  const int n = dim * dim;
  const Matrix ihbar = cplx{0.0, kHbar} * Matrix::Identity(n, n);
  double worst = 0.0;
  for (const auto& [phi, Q] : {std::pair{&ops.phi1, &ops.Q1}, std::pair{&ops.phi2, &ops.Q2}}) {
    const Matrix defect = (*phi) * (*Q) - (*Q) * (*phi) - ihbar;
    for (int j1 = 0; j1 <= dim - 2; ++j1)
      for (int j2 = 0; j2 <= dim - 2; ++j2)
        for (int i1 = 0; i1 <= dim - 2; ++i1)
          for (int i2 = 0; i2 <= dim - 2; ++i2)
            worst = std::max(worst, std::abs(defect(basis_index(i1, i2, dim), basis_index(j1, j2, dim))));
  }
  const double cross = max_abs(ops.phi1 * ops.Q2 - ops.Q2 * ops.phi1);
  const bool ok = worst <= 1e-12 * kHbar && cross == 0.0;
  return {"canonical_commutators", ok ? Status::pass : Status::fail, worst / kHbar, 1e-12,
          "relative to hbar; cross-mode commutator " + std::string(cross == 0.0 ? "exactly 0" : "nonzero")};
}

/// Largest relative gap between each analytic level hbar w1 (n+1/2) +
/// hbar w2 (m+1/2), n+m <= max_sum, and the nearest eigenvalue of H0.
inline double decoupled_spectrum_defect(const CircuitParams& p, int dim, int max_sum) {
  const AppendixAConstants c = derive_constants(decoupled_limit(p));
  const Eigensystem sys = diagonalize(build_h0(c, dim));
  double worst = 0.0;
  for (int n = 0; n <= max_sum; ++n) {
    for (int m = 0; n + m <= max_sum; ++m) {
      const double e = kHbar * (c.modes.omega1 * (n + 0.5) + c.modes.omega2 * (m + 0.5));
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index k = 0; k < sys.values.size(); ++k) best = std::min(best, std::abs(sys.values(k) - e) / e);
      worst = std::max(worst, best);
    }
  }
  return worst;
}

inline CheckRow decoupled_spectrum_check(const CircuitParams& p, int dim = 16) {
  return bounded("decoupled_spectrum", decoupled_spectrum_defect(p, dim, dim / 2), 1e-9,
                 "n+m <= " + std::to_string(dim / 2) + ", dim " + std::to_string(dim));
}

inline CheckRow hp_diagonal_check(const CircuitParams& p, int dim = 12) {
  const Matrix hp = build_hp(derive_constants(p), dim);
  const double scale = max_abs(hp);
  const double diag = hp.diagonal().cwiseAbs().maxCoeff();
  return bounded("hp_diagonal_zero", scale == 0.0 ? 0.0 : diag / scale, 1e-15, "relative to max |Hp|");
}

/// Counts nonzero Hp entries whose index shifts fall outside `allowed`.
inline int selection_rule_violations(const Matrix& hp, int dim,
                                     const std::function<bool(int, int)>& allowed) {
  int bad = 0;
  for (int i1 = 0; i1 < dim; ++i1)
    for (int i2 = 0; i2 < dim; ++i2)
      for (int j1 = 0; j1 < dim; ++j1)
        for (int j2 = 0; j2 < dim; ++j2)
          if (hp(basis_index(i1, i2, dim), basis_index(j1, j2, dim)) != cplx{} && !allowed(i1 - j1, i2 - j2)) ++bad;
  return bad;
}

inline bool stated_selection_rule(int d1, int d2) {
  const int a1 = std::abs(d1), a2 = std::abs(d2);
  return (a1 == 0 || a1 == 2) && (a2 == 1 || a2 == 3);
}

/// Full rule once the charge-charge and charge-flux cross terms are counted:
/// each cubic term flips total parity and moves each mode by at most 3.
inline bool parity_selection_rule(int d1, int d2) {
  const int a1 = std::abs(d1), a2 = std::abs(d2);
  return stated_selection_rule(d1, d2) || (a1 == 1 && (a2 == 0 || a2 == 2));
}

inline CheckRow selection_rule_check(const CircuitParams& p, int dim = 12) {
  const Matrix hp = build_hp(derive_constants(p), dim);
  const int bad = selection_rule_violations(hp, dim, stated_selection_rule);
  return {"hp_selection_rule", bad == 0 ? Status::pass : Status::fail, double(bad), 0.0,
          "entries outside dj1 in {0,+-2}, dj2 in {+-1,+-3}; cross terms with C12 move mode 1 by one"};
}

inline CheckRow parity_rule_check(const CircuitParams& p, int dim = 12) {
  const Matrix hp = build_hp(derive_constants(p), dim);
  const int bad = selection_rule_violations(hp, dim, parity_selection_rule);
  return {"hp_parity_rule", bad == 0 ? Status::pass : Status::fail, double(bad), 0.0,
          "also allows dj1 = +-1 with dj2 in {0,+-2}"};
}

/// Drive, bias and thermal sources off; g_m and the capacitances unchanged.
inline CircuitParams undriven(CircuitParams p) {
  p.V_rf = 0.0;
  p.T_c = 0.0;
  p.I_s0 = 0.0;
  p.I_d0 = 0.0;
  return p;
}

/// (E(4s) - E(2s)) / (E(2s) - E(s)) for each level, lambda = s |H0| / |Hp|.
inline std::vector<cplx> richardson_ratios(const AppendixAConstants& c, int dim, const std::vector<FockKey>& levels,
                                           double s = 1e-4) {
  const Matrix h0 = build_h0(c, dim);
  const Matrix hp = build_hp(c, dim);
  const double unit = max_abs(h0) / max_abs(hp);
  std::vector<std::vector<cplx>> e;
  for (double f : {1.0, 2.0, 4.0}) {
    const Eigensystem sys = diagonalize(h0 + (f * s * unit) * hp);
    std::vector<cplx> row;
    for (const FockKey& k : levels) row.push_back(match_level(sys, fock_state(k.j1, k.j2, dim)));
    e.push_back(row);
  }
  std::vector<cplx> out;
  for (std::size_t k = 0; k < levels.size(); ++k) out.push_back((e[2][k] - e[1][k]) / (e[1][k] - e[0][k]));
  return out;
}

inline const std::vector<FockKey>& richardson_levels() {
  static const std::vector<FockKey> levels{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}};
  return levels;
}

inline CheckRow quadratic_onset_check(const CircuitParams& p, int dim = 12) {
  double worst = 0.0;
  for (cplx r : richardson_ratios(derive_constants(undriven(p)), dim, richardson_levels()))
    worst = std::max(worst, std::abs(r - 4.0));
  return bounded("hp_quadratic_onset", worst, 0.5, "|Richardson ratio - 4|, undriven fixture");
}

/// Perturbative scalars: diagonal energies, first-order amplitudes and
/// number-state variances, for j <= dim/2 - 2 across dim 12 -> 16 -> 20.
inline CheckRow truncation_check(const CircuitParams& p) {
  const AppendixAConstants c = derive_constants(p);
  double worst = 0.0;
  for (int dim : {12, 16}) {
    const int big = dim + 4;
    const int jmax = dim / 2 - 2;
    const Matrix h_small = build_h0(c, dim), h_big = build_h0(c, big);
    const Matrix p_small = build_hp(c, dim), p_big = build_hp(c, big);
    const OperatorSet o_small = build_operator_set(c, dim), o_big = build_operator_set(c, big);
    for (int j1 = 0; j1 <= jmax; ++j1) {
      for (int j2 = 0; j2 <= jmax; ++j2) {
        worst = std::max(worst, rel(diagonal_energy(h_small, j1, j2), diagonal_energy(h_big, j1, j2)));
        const FluctuationSet a = fluctuation_oracle(o_small, j1, j2).values;
        const FluctuationSet b = fluctuation_oracle(o_big, j1, j2).values;
        for (auto [x, y] : {std::pair{a.dV1sq, b.dV1sq}, {a.dV2sq, b.dV2sq}, {a.dI1sq, b.dI1sq}, {a.dI2sq, b.dI2sq}})
          worst = std::max(worst, rel(x, y));
        const StateCorrection s_small = first_order_state(j1, j2, p_small, h_small);
        const StateCorrection s_big = first_order_state(j1, j2, p_big, h_big);
        for (const auto& [key, amp] : s_small.amplitudes) {
          const auto it = s_big.amplitudes.find(key);
          worst = std::max(worst, it == s_big.amplitudes.end() ? 1.0 : rel(amp.amplitude, it->second.amplitude));
        }
      }
    }
  }
  return bounded("truncation_convergence", worst, 1e-6, "perturbative scalars, dim 12->16->20, j <= dim/2 - 2");
}

/// Exact eigenvalues of the undriven H0 for the same levels. The charge-flux
/// self term of oscillator I is close to its frequency on the fixture, so the
/// low eigenstates are strongly squeezed and converge slowly in dim.
inline CheckRow exact_truncation_row(const CircuitParams& p) {
  const AppendixAConstants cu = derive_constants(undriven(p));
  double worst = 0.0;
  for (int dim : {12, 16}) {
    const int big = dim + 4;
    const Eigensystem e_small = diagonalize(build_h0(cu, dim)), e_big = diagonalize(build_h0(cu, big));
    for (int j1 = 0; j1 <= dim / 2 - 2; ++j1)
      for (int j2 = 0; j2 <= dim / 2 - 2; ++j2)
        worst = std::max(worst, rel(match_level(e_small, fock_state(j1, j2, dim)),
                                    match_level(e_big, fock_state(j1, j2, big))));
  }
  const double ratio = std::abs(cu.g_m * cu.rc.q1p1) / cu.modes.omega1;
  return {"exact_spectrum_truncation", Status::info, worst, kNoLimit,
          "undriven H0; charge-flux coupling / omega1 = " + std::to_string(ratio)};
}

// ---------------------------------------------------------------------------
// Response checks

inline double oracle_defect(const CircuitParams& p, EvaluationMode mode, int dim = 12) {
  const AppendixAConstants c = derive_constants(p, mode);
  const OperatorSet ops = build_operator_set(c, dim);
  const EffectiveElements eff = effective_elements(c);
  double worst = 0.0;
  for (int j1 = 0; j1 <= 2; ++j1) {
    for (int j2 = 0; j2 <= 2; ++j2) {
      const FluctuationSet a = fluctuations(j1, j2, eff, c.modes);
      const FluctuationSet b = fluctuation_oracle(ops, j1, j2).values;
      for (auto [x, y] : {std::pair{a.dV1sq, b.dV1sq}, {a.dV2sq, b.dV2sq}, {a.dI1sq, b.dI1sq}, {a.dI2sq, b.dI2sq}})
        worst = std::max(worst, rel(x, y));
    }
  }
  return worst;
}

inline CheckRow oracle_consistent_check(const CircuitParams& p) {
  return bounded("fluctuation_oracle", oracle_defect(p, EvaluationMode::consistent), 1e-10,
                 "closed form vs Fock-basis variance, (j1,j2) in {0,1,2}^2, dim 12");
}

inline CheckRow oracle_literal_row(const CircuitParams& p) {
  return {"fluctuation_oracle_literal", Status::info, oracle_defect(p, EvaluationMode::literal), kNoLimit,
          "printed effective elements vs printed operators"};
}

inline CheckRow vacuum_check(const CircuitParams& p) {
  const AppendixAConstants c = derive_constants(decoupled_limit(p));
  const double expected = kHbar * c.modes.omega1 / (2 * c.modes.C_q1);
  const double closed = fluctuations(0, 0, effective_elements(c), c.modes).dV1sq;
  const double oracle = fluctuation_oracle(build_operator_set(c, 12), 0, 0).values.dV1sq;
  return bounded("vacuum_zero_point", std::max(rel(closed, expected), rel(oracle, expected)), 1e-12,
                 "decoupled dV1^2 at (0,0)");
}

inline CheckRow steady_residual_check(const CircuitParams& p) {
  const AppendixAConstants c = derive_constants(p);
  const double k1 = resolve_kappa(p.kappa1, c.modes.omega1);
  const double k2 = resolve_kappa(p.kappa2, c.modes.omega2);
  const SteadyState ss = steady_state(c.coeffs, c.modes, k1, k2, p.omega_in);
  const SteadyStateSystem s = steady_state_system(c.coeffs, c.modes, k1, k2, p.omega_in);
  const double r0 = std::abs(s.m00 * ss.alpha1 + s.m01 * ss.alpha2 - s.rhs0);
  const double r1 = std::abs(s.m10 * ss.alpha1 + s.m11 * ss.alpha2 - s.rhs1);
  const double drive = std::max(std::abs(s.rhs0), std::abs(s.rhs1));
  return bounded("steady_state_residual", std::max(r0, r1) / drive, 1e-12, "relative to drive");
}

struct LorentzianFit {
  double peak_offset_steps;  // |argmax - omega1| in grid steps
  double fwhm_over_kappa;
};

/// Single driven mode with the couplings removed, on a grid of `steps`
/// points spanning omega1 +- 5 kappa1.
inline LorentzianFit lorentzian_fit(const CircuitParams& p, int steps = 2001) {
  const AppendixAConstants c = derive_constants(decoupled_limit(p));
  const double k1 = resolve_kappa(p.kappa1, c.modes.omega1);
  const double k2 = resolve_kappa(p.kappa2, c.modes.omega2);
  SteadyStateCoefficients coeffs{};
  coeffs.E1w = 1.0;
  const double lo = c.modes.omega1 - 5 * k1, hi = c.modes.omega1 + 5 * k1;
  const double step = (hi - lo) / (steps - 1);
  std::vector<double> n(steps);
  for (int k = 0; k < steps; ++k) n[k] = steady_state(coeffs, c.modes, k1, k2, lo + k * step).n1ph;
  const int peak = static_cast<int>(std::max_element(n.begin(), n.end()) - n.begin());
  const double half = n[peak] / 2;
  auto crossing = [&](int from, int dir) {
    int k = from;
    while (k + dir >= 0 && k + dir < steps && n[k + dir] >= half) k += dir;
    const int out = k + dir;
    if (out < 0 || out >= steps) return lo + k * step;
    const double t = (n[k] - half) / (n[k] - n[out]);
    return lo + (k + dir * t) * step;
  };
  const double width = crossing(peak, +1) - crossing(peak, -1);
  return {std::abs(lo + peak * step - c.modes.omega1) / step, width / k1};
}

inline CheckRow lorentzian_check(const CircuitParams& p) {
  const LorentzianFit f = lorentzian_fit(p);
  const bool ok = f.peak_offset_steps <= 1.0 && std::abs(f.fwhm_over_kappa - 1.0) <= 0.1;
  return {"lorentzian_limit", ok ? Status::pass : Status::fail, std::abs(f.fwhm_over_kappa - 1.0), 0.1,
          "FWHM/kappa1 - 1; peak " + std::to_string(f.peak_offset_steps) + " steps from omega1"};
}

inline CheckRow photon_zero_check(const CircuitParams& p) {
  CircuitParams q = p;
  q.V_rf = 0.0;
  const AppendixAConstants c = derive_constants(q);
  const SteadyState ss = steady_state(c.coeffs, c.modes, resolve_kappa(q.kappa1, c.modes.omega1),
                                      resolve_kappa(q.kappa2, c.modes.omega2), q.omega_in);
  const double worst = std::max(ss.n1ph, ss.n2ph);
  return bounded("photon_zero_law", worst, 0.0, "V_rf = 0");
}

inline CheckRow nf_floor_check(const CircuitParams& p, unsigned threads = 1) {
  const std::vector<NfPoint> rows = sweep(SweepGrid::fixture(), p, {EvaluationMode::consistent, threads, false});
  double lowest = std::numeric_limits<double>::infinity();
  int failed = 0;
  for (const NfPoint& r : rows) {
    if (r.status != "ok") {
      ++failed;
      continue;
    }
    lowest = std::min(lowest, r.nf);
  }
  const bool ok = failed == 0 && lowest >= 1.0;
  return {"nf_lower_bound", ok ? Status::pass : Status::fail, lowest, 1.0,
          "minimum nf on the 60x30 grid; " + std::to_string(failed) + " failed points"};
}

inline CheckRow energy_drive_dependence_check(const CircuitParams& p) {
  auto at = [&](double v) {
    CircuitParams q = p;
    q.V_rf = v;
    return literal_energies(3, 3, derive_constants(q));
  };
  const double v = p.V_rf > 0 ? p.V_rf : 3e-4;
  const ModeEnergies e0 = at(0.0), e1 = at(v), e2 = at(2 * v);
  const double d1 = std::abs(e1.E1 - e0.E1) + std::abs(e2.E1 - e0.E1);
  // Linear in V_rf: second difference vanishes relative to the first.
  const double curvature = std::abs((e2.E2 - e1.E2) - (e1.E2 - e0.E2)) / std::max(std::abs(e1.E2 - e0.E2), 1e-300);
  const double worst = std::max(d1 / std::abs(e0.E1), curvature);
  return bounded("energy_drive_dependence", worst, 1e-9, "E_j1 independent of V_rf, E_j2 linear");
}

inline std::vector<CheckRow> run_all(const CircuitParams& p, unsigned threads = 1) {
  return {unit_audit_check(p),
          cap_inverse_check(p),
          symmetric_inverse_check(p),
          c11_delta_row(p),
          decoupling_check(p),
          continuity_check(p),
          commutator_check(p),
          decoupled_spectrum_check(p),
          hp_diagonal_check(p),
          selection_rule_check(p),
          parity_rule_check(p),
          quadratic_onset_check(p),
          truncation_check(p),
          exact_truncation_row(p),
          energy_drive_dependence_check(p),
          oracle_consistent_check(p),
          oracle_literal_row(p),
          vacuum_check(p),
          steady_residual_check(p),
          lorentzian_check(p),
          photon_zero_check(p),
          nf_floor_check(p, threads)};
}

inline bool all_pass(const std::vector<CheckRow>& rows) {
  return std::none_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.status == Status::fail; });
}

}  // namespace qlna::checks
