#pragma once

// Driven response of the two coupled oscillators: mean-field steady state,
// voltage/current fluctuations in terms of photon numbers, and the noise
// figure; plus the parameter sweep that ties them together.

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "qlna/appendix_a.hpp"
#include "qlna/fockspace.hpp"

namespace qlna {

// ---------------------------------------------------------------------------
// Steady state
//
// Rotating-frame mean-field equations at the drive frequency:
//   (i(w1' - w_in) + k1/2) a1 + i w2 (A1 + A2) a2 = -i E1w
//   (i(w2' - w_in) + k2/2) a2 + i w1 (B1 + B2) a1 = -i E2w
// with w1' = w1 (1 + A3), w2' = w2 (1 + B3).

struct SteadyState {
  cplx alpha1, alpha2;
  double n1ph, n2ph;
  double omega_in;
};

struct SteadyStateSystem {
  cplx m00, m01, m10, m11;
  cplx rhs0, rhs1;
};

inline SteadyStateSystem steady_state_system(const SteadyStateCoefficients& k, const ModePair& modes, double kappa1,
                                             double kappa2, double omega_in) {
  const cplx i{0.0, 1.0};
  const cplx w1 = modes.omega1 * (1.0 + k.A3);
  const cplx w2 = modes.omega2 * (1.0 + k.B3);
  return {i * (w1 - omega_in) + kappa1 / 2.0, i * modes.omega2 * (k.A1 + k.A2), i * modes.omega1 * (k.B1 + k.B2),
          i * (w2 - omega_in) + kappa2 / 2.0, -i * k.E1w, -i * k.E2w};
}

inline SteadyState steady_state(const SteadyStateCoefficients& k, const ModePair& modes, double kappa1,
                                double kappa2, double omega_in) {
  const SteadyStateSystem s = steady_state_system(k, modes, kappa1, kappa2, omega_in);
  const cplx det = s.m00 * s.m11 - s.m01 * s.m10;
  const double scale = std::abs(s.m00 * s.m11) + std::abs(s.m01 * s.m10);
  if (det == cplx{} || std::abs(det) <= 1e-14 * scale)
    throw Error("response", "singular steady-state system (undamped resonance)");
  const cplx a1 = (s.rhs0 * s.m11 - s.m01 * s.rhs1) / det;
  const cplx a2 = (s.m00 * s.rhs1 - s.m10 * s.rhs0) / det;
  return {a1, a2, std::norm(a1), std::norm(a2), omega_in};
}

/// Bose-Einstein occupation, optionally added to the coherent photon number.
inline double thermal_occupation(double omega, double T) {
  if (T <= 0.0) return 0.0;
  return 1.0 / std::expm1(kHbar * omega / (kBoltzmann * T));
}

// ---------------------------------------------------------------------------
// Effective elements, stored as reciprocals.

struct EffectiveElements {
  double inv_C_Q1, inv_C_Q12, inv_C_Q2, inv_C_Q21;  // 1/F
  double inv_L_g1, inv_L_g12, inv_L_d2, inv_L_d21;  // 1/H
};

namespace detail {
// Coefficient of (hbar w_k / 2)(2 n_k + 1) in the number-state variance of
// q Q_k + p phi_k.
inline double mode_weight(double q, double p, double Z, double omega) { return (q * q / Z + p * p * Z) / omega; }
}  // namespace detail

inline EffectiveElements effective_elements(const AppendixAConstants& c) {
  const ModePair& m = c.modes;
  EffectiveElements e{};

  if (c.mode == EvaluationMode::consistent) {
    const ViCoefficients vi = vi_coefficients(c);
    using detail::mode_weight;
    e.inv_C_Q1 = mode_weight(vi.V1.q1, vi.V1.phi1, m.Z1, m.omega1);
    e.inv_C_Q12 = mode_weight(vi.V1.q2, vi.V1.phi2, m.Z2, m.omega2);
    e.inv_C_Q21 = mode_weight(vi.V2.q1, vi.V2.phi1, m.Z1, m.omega1);
    e.inv_C_Q2 = mode_weight(vi.V2.q2, vi.V2.phi2, m.Z2, m.omega2);
    e.inv_L_g1 = mode_weight(vi.I1.q1, vi.I1.phi1, m.Z1, m.omega1);
    e.inv_L_g12 = mode_weight(vi.I1.q2, vi.I1.phi2, m.Z2, m.omega2);
    e.inv_L_d21 = mode_weight(vi.I2.q1, vi.I2.phi1, m.Z1, m.omega1);
    e.inv_L_d2 = mode_weight(vi.I2.q2, vi.I2.phi2, m.Z2, m.omega2);
    return e;
  }

  // Printed closed forms; 1/(2 C_X) = r_X so g/(2C_X) = g r_X and
  // 1/(4 C_X^2) = r_X^2.
  const ReciprocalCaps& r = c.rc;
  const double g = c.g_m;
  const double gv = c.nl.g_NL * c.V_rf;
  const double z1sq = m.Z1 * m.Z1;
  const double z2sq = m.Z2 * m.Z2;
  auto sq = [](double x) { return x * x; };

  e.inv_C_Q1 = 2 * r.q1 + g * g * z1sq * m.C_q1 * sq(r.q1p1);
  e.inv_C_Q12 = m.C_q2 * sq(r.q1q2) + z2sq * m.C_q2 * sq(g * r.q1p2 + gv * r.q1p2_nl);
  e.inv_C_Q2 = 2 * r.q2 + z2sq * m.C_q2 * sq(g * r.q2p2 - gv * r.q2p2_nl);
  e.inv_C_Q21 = m.C_q1 * sq(r.q1q2) + g * g * z1sq * m.C_q1 * sq(r.q2p1);
  e.inv_L_g1 = 1.0 / m.L_g_eff + g * g * m.C_q1 * sq(r.q1p1);
  e.inv_L_g12 = g * g * m.C_q2 * sq(r.q2p1) + z2sq * m.C_q2 * sq(g * g * r.p1p2 / 2 + g * gv * r.p1p2_nl);
  e.inv_L_d2 = 1.0 / m.L_d_eff + m.C_q2 * sq(g * r.q2p2 - gv * r.q2p2_nl);
  e.inv_L_d21 = m.C_q1 * sq(g * r.q1p2 - gv * r.q1p2_nl) + z1sq * m.C_q1 * sq(g * r.p1p2 - gv * r.p1p2_nl);
  return e;
}

// ---------------------------------------------------------------------------

struct FluctuationSet {
  double dV1sq, dV2sq;  // V^2
  double dI1sq, dI2sq;  // A^2
};

inline FluctuationSet fluctuations(double n1ph, double n2ph, const EffectiveElements& e, const ModePair& m) {
  if (n1ph < 0.0 || n2ph < 0.0) throw Error("response", "photon numbers must be non-negative");
  const double f1 = kHbar * m.omega1 / 2 * (2 * n1ph + 1);
  const double f2 = kHbar * m.omega2 / 2 * (2 * n2ph + 1);
  return {f1 * e.inv_C_Q1 + f2 * e.inv_C_Q12, f1 * e.inv_C_Q21 + f2 * e.inv_C_Q2,
          f1 * e.inv_L_g1 + f2 * e.inv_L_g12, f1 * e.inv_L_d21 + f2 * e.inv_L_d2};
}

struct OracleFluctuations {
  FluctuationSet values;
  double max_imag_residual;  // largest |Im| among the four variances
};

/// Symmetrised variance <{X - <X>, X - <X>}>/2 of the voltage and current
/// matrices on the number state |j1, j2>, computed in the Fock basis.
inline OracleFluctuations fluctuation_oracle(const OperatorSet& ops, int j1, int j2) {
  if (j1 < 0 || j2 < 0 || j1 > ops.dim - 4 || j2 > ops.dim - 4)
    throw Error("response", "fluctuation_oracle: state outside truncation margin (j <= dim - 4)");
  const Vector psi = fock_state(j1, j2, ops.dim);
  double imag = 0.0;
  auto variance = [&](const Matrix& X) {
    const cplx mean = psi.dot(X * psi);
    const Vector centred = X * psi - mean * psi;
    const cplx v = psi.dot(X * centred - mean * centred);
    imag = std::max(imag, std::abs(v.imag()));
    return v.real();
  };
  return {{variance(ops.V1), variance(ops.V2), variance(ops.I1), variance(ops.I2)}, imag};
}

// ---------------------------------------------------------------------------

struct NfPoint {
  double omega_in;
  double g_m;
  double n1ph, n2ph;
  FluctuationSet fl;
  double nf;
  double nf_db;
  std::string status;
};

struct NoiseFigure {
  double nf;
  double nf_db;
};

// NF = 1 + (4 gamma g_m / R_s) dV1^2 / dI2^2; the 4kT factors cancel.
inline NoiseFigure noise_figure(const FluctuationSet& fl, double gamma, double g_m, double R_s) {
  if (!(fl.dI2sq > 0.0)) throw Error("response", "noise figure undefined: dI2^2 = 0");
  const double nf = 1.0 + (4.0 * gamma * g_m / R_s) * (fl.dV1sq / fl.dI2sq);
  return {nf, 10.0 * std::log10(nf)};
}

// ---------------------------------------------------------------------------
// Sweep

struct SweepGrid {
  double win_min, win_max;
  int win_steps;
  double gm_min, gm_max;
  int gm_steps;

  static SweepGrid fixture() { return {2 * kPi * 1e9, 2 * kPi * 20e9, 60, 0.05, 0.5, 30}; }

  double omega_at(int k) const { return linspace(win_min, win_max, win_steps, k); }
  double gm_at(int k) const { return linspace(gm_min, gm_max, gm_steps, k); }
  std::size_t size() const { return static_cast<std::size_t>(win_steps) * static_cast<std::size_t>(gm_steps); }

 private:
  static double linspace(double lo, double hi, int n, int k) {
    if (n == 1) return lo;
    return k == n - 1 ? hi : lo + (hi - lo) * k / (n - 1);
  }
};

struct SweepOptions {
  EvaluationMode mode = EvaluationMode::consistent;
  unsigned threads = 1;
  bool thermal_photons = false;
};

/// Full pipeline at one (omega_in, g_m) point. `stage` must come from the
/// same parameters and evaluation mode.
inline NfPoint evaluate_point(const CapacitanceStage& stage, CircuitParams p, double omega_in, double g_m,
                              bool thermal_photons = false) {
  p.g_m = g_m;
  p.omega_in = omega_in;
  const AppendixAConstants c = complete_constants(stage, p);
  const double k1 = resolve_kappa(p.kappa1, c.modes.omega1);
  const double k2 = resolve_kappa(p.kappa2, c.modes.omega2);
  const SteadyState ss = steady_state(c.coeffs, c.modes, k1, k2, omega_in);
  double n1 = ss.n1ph;
  double n2 = ss.n2ph;
  if (thermal_photons) {
    n1 += thermal_occupation(c.modes.omega1, p.T_c);
    n2 += thermal_occupation(c.modes.omega2, p.T_c);
  }
  const FluctuationSet fl = fluctuations(n1, n2, effective_elements(c), c.modes);
  const NoiseFigure nf = noise_figure(fl, p.gamma, g_m, p.R_s);
  return {omega_in, g_m, n1, n2, fl, nf.nf, nf.nf_db, "ok"};
}

inline NfPoint evaluate_point(const CircuitParams& p, EvaluationMode mode = EvaluationMode::consistent) {
  return evaluate_point(capacitance_stage(p, mode), p, p.omega_in, p.g_m);
}

/// Rows ordered g_m-major: row = ig * win_steps + iw. Per-point errors are
/// recorded in the status field.
inline std::vector<NfPoint> sweep(const SweepGrid& grid, const CircuitParams& p, const SweepOptions& opt = {}) {
  if (grid.win_steps < 1 || grid.gm_steps < 1) throw Error("response", "sweep steps must be >= 1");
  if (!(grid.win_min > 0.0) || !(grid.win_max >= grid.win_min) || !(grid.gm_min > 0.0) ||
      !(grid.gm_max >= grid.gm_min))
    throw Error("response", "sweep ranges must be positive and ordered");

  const CapacitanceStage stage = capacitance_stage(p, opt.mode);
  std::vector<NfPoint> rows(grid.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();

  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t idx = begin; idx < rows.size(); idx += stride) {
      const int ig = static_cast<int>(idx / grid.win_steps);
      const int iw = static_cast<int>(idx % grid.win_steps);
      const double w = grid.omega_at(iw);
      const double g = grid.gm_at(ig);
      try {
        rows[idx] = evaluate_point(stage, p, w, g, opt.thermal_photons);
      } catch (const std::exception& e) {
        rows[idx] = {w, g, nan, nan, {nan, nan, nan, nan}, nan, nan, e.what()};
      }
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(rows.size())));
  if (n == 1) {
    work(0, 1);
    return rows;
  }
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(work, t, n);
  for (auto& th : pool) th.join();
  return rows;
}

}  // namespace qlna
