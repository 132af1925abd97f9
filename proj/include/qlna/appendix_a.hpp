#pragma once

// Quantization constants of the two-oscillator LNA model: capacitance
// matrix and its inverse, the reciprocal-capacitance coefficients of the
// quadratic Hamiltonian, drive constants, mode parameters and the
// steady-state coupling coefficients.
//
// Two evaluation modes exist. `literal` reproduces the printed inverse,
// whose C22 numerator and determinant use C_in + C_N + C_d + C_gd;
// `consistent` uses the exact inverse of the capacitance matrix. Every
// other formula is shared between modes.

#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include "qlna/constants.hpp"
#include "qlna/error.hpp"
#include "qlna/params.hpp"

namespace qlna {

using cplx = std::complex<double>;

enum class EvaluationMode { literal, consistent };

inline std::string_view to_string(EvaluationMode m) {
  return m == EvaluationMode::literal ? "literal" : "consistent";
}

inline EvaluationMode parse_mode(std::string_view s) {
  if (s == "literal") return EvaluationMode::literal;
  if (s == "consistent") return EvaluationMode::consistent;
  throw Error("appendix_a", "unknown evaluation mode '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------

/// Symmetric 2x2 matrix mapping node-flux rates to charges.
struct CapMatrix {
  double m00;  // C_in + C_gd + C_gs + C_N
  double m01;  // -C_gd
  double m11;  // C_d + C_gd

  double det() const { return m00 * m11 - m01 * m01; }
};

inline CapMatrix assemble_cap_matrix(const DeviceCaps& caps, double C_in, double C_d, double C_N) {
  const CapMatrix m{C_in + caps.C_gd + caps.C_gs + C_N, -caps.C_gd, C_d + caps.C_gd};
  // Eigenvalues of a symmetric 2x2: mean +- sqrt(half-difference^2 + off^2).
  const double mean = 0.5 * (m.m00 + m.m11);
  const double half = 0.5 * (m.m00 - m.m11);
  const double radius = std::hypot(half, m.m01);
  const double lo = mean - radius;
  const double hi = mean + radius;
  if (!(lo > 0.0) || !std::isfinite(hi))
    throw Error("appendix_a", "capacitance matrix not positive definite (eigenvalues " + std::to_string(lo) +
                                  ", " + std::to_string(hi) + ")");
  return m;
}

struct InverseCapMatrix {
  double C11, C12, C21, C22;  // 1/F
  double det_C;               // F^2
  EvaluationMode mode;
};

/// Exact inverse of the capacitance matrix.
inline InverseCapMatrix invert_cap_matrix(const CapMatrix& m) {
  const double det = m.det();
  if (!(det > 0.0)) throw Error("appendix_a", "singular capacitance matrix");
  const double off = -m.m01 / det;
  return {m.m11 / det, off, off, m.m00 / det, det, EvaluationMode::consistent};
}

// The printed inverse is not a function of the matrix alone: it swaps
// C_gs for C_d in the (1,1) block sum.
inline InverseCapMatrix invert_cap_matrix_literal(const DeviceCaps& caps, double C_in, double C_d, double C_N) {
  const double top = C_in + C_N + C_d + caps.C_gd;
  const double bottom = C_d + caps.C_gd;
  const double c_inv = top * bottom - caps.C_gd * caps.C_gd;
  if (!(c_inv > 0.0)) throw Error("appendix_a", "singular capacitance matrix (literal C_inv <= 0)");
  const double off = caps.C_gd / c_inv;
  return {bottom / c_inv, off, off, top / c_inv, c_inv, EvaluationMode::literal};
}

inline InverseCapMatrix invert_cap_matrix(const CapMatrix& m, const DeviceCaps& caps, double C_in, double C_d,
                                          double C_N, EvaluationMode mode) {
  return mode == EvaluationMode::consistent ? invert_cap_matrix(m) : invert_cap_matrix_literal(caps, C_in, C_d, C_N);
}

// ---------------------------------------------------------------------------

/// Reciprocal-doubled capacitances r_X = 1/(2 C_X), in 1/F. The `_nl`
/// entries are the primed constants of the nonlinear Hamiltonian.
struct ReciprocalCaps {
  double q1, q2, q1q2;
  double p1, p2;
  double q1p1, q2p2, q1p2, p1p2, q2p1;
  double p1p2_nl, q1p2_nl, q2p2_nl;
};

inline ReciprocalCaps reciprocal_constants(const InverseCapMatrix& inv, const DeviceCaps& caps, double C_in,
                                           double C_d) {
  const double C11 = inv.C11, C12 = inv.C12, C21 = inv.C21, C22 = inv.C22;
  const double Cgd = caps.C_gd;
  const double s1 = C_in + caps.C_gs + Cgd;  // input-node capacitance sum
  const double s2 = C_d + Cgd;               // output-node capacitance sum

  ReciprocalCaps r{};
  r.q1 = C11 * C11 * s1 / 2 + C21 * C21 * s2 / 2 - Cgd * C21 * C11;
  r.q2 = C12 * C12 * s1 / 2 + C22 * C22 * s2 / 2 - Cgd * C12 * C22;
  r.q1q2 = 2 * C12 * C11 * s1 / 2 + 2 * C22 * C21 * s2 / 2 - Cgd * (C11 * C22 + C21 * C12);
  r.p1 = C11 * C11 * s1 / 2;
  r.p2 = C22 * C22 * s2 / 2;
  r.q1p1 = 2 * C11 * C11 * s1 / 2 + Cgd * C21 * C11;
  r.q2p2 = -2 * C22 * C21 * s2 / 2 + Cgd * C22 * C21;
  r.q1p2 = -2 * C21 * C21 * s2 / 2 + Cgd * C11 * C12;
  r.p1p2 = -Cgd * C11 * C12;
  r.q2p1 = 2 * C11 * C12 * s1 / 2 + Cgd * C22 * C11;
  // p1p2_nl and q1p2_nl share one printed right-hand side.
  r.p1p2_nl = -2 * C11 * C11 * C_in;
  r.q1p2_nl = -2 * C11 * C11 * C_in;
  r.q2p2_nl = -2 * C11 * C12 * C_in;
  return r;
}

// ---------------------------------------------------------------------------

struct DriveConsts {
  double P11, P12, P21, P22;
  double q11, q12, q13, q21, q22, q23;
  double G1, G2;
  // P_k including the -I_bar/(g_m V_rf) bias term. When g_m V_rf = 0 the
  // bias term is undefined and these hold P11+P12 / P21+P22 only
  // (bias_in_p == false).
  double P1, P2;
  bool bias_in_p;
  // P_k g_m V_rf, the coefficient pair of the static phi_k forces, always
  // finite: (P11+P12) g_m V_rf - I_s_bar.
  double force1, force2;

  double coherent_p1() const { return P11 + P12; }
  double coherent_p2() const { return P21 + P22; }
};

namespace detail {

inline DriveConsts drive_terms(const InverseCapMatrix& inv, const DeviceCaps& caps, double C_in, double C_d,
                               double g_m, double V_rf, double I_s_bar, double I_d_bar) {
  const double C11 = inv.C11, C12 = inv.C12, C21 = inv.C21, C22 = inv.C22;
  const double Cgd = caps.C_gd;
  const double s1 = C_in + caps.C_gs + Cgd;
  const double s2 = C_d + Cgd;

  DriveConsts d{};
  // Printed as P/2 and q/2; stored undivided.
  d.P11 = 2 * (-2 * C11 * C11 * C_in * s1 / 2);
  d.P12 = 2 * (Cgd * C21 * C11 * C_in);
  d.P21 = 2 * (-2 * C21 * C21 * C_in * s2 / 2);
  d.P22 = 2 * (Cgd * C21 * C11 * C_in);
  d.q11 = 2 * (-2 * C11 * C11 * C_in * s1 / 2);
  d.q21 = 2 * (-2 * C11 * C12 * C_in * s1 / 2);
  d.q12 = 2 * (2 * C21 * C21 * C_in * s2 / 2);
  d.q22 = 2 * (2 * C21 * C22 * C_in * s2 / 2);
  d.q13 = 2 * (-Cgd * C21 * C11 * C_in);
  d.q23 = 2 * (-Cgd * C22 * C11 * C_in);
  d.G1 = d.q11 + d.q12 + d.q13;
  d.G2 = d.q21 + d.q22 + d.q23;

  const double drive = g_m * V_rf;
  d.bias_in_p = drive != 0.0;
  d.P1 = d.coherent_p1() - (d.bias_in_p ? I_s_bar / drive : 0.0);
  d.P2 = d.coherent_p2() - (d.bias_in_p ? I_d_bar / drive : 0.0);
  d.force1 = d.coherent_p1() * drive - I_s_bar;
  d.force2 = d.coherent_p2() * drive - I_d_bar;
  return d;
}

}  // namespace detail

inline DriveConsts drive_constants(const InverseCapMatrix& inv, const DeviceCaps& caps, double C_in, double C_d,
                                   double g_m, double V_rf, double I_s_bar, double I_d_bar) {
  if (g_m * V_rf == 0.0 && (I_s_bar != 0.0 || I_d_bar != 0.0))
    throw Error("appendix_a", "P1/P2 undefined: g_m*V_rf = 0 with nonzero bias/noise current");
  return detail::drive_terms(inv, caps, C_in, C_d, g_m, V_rf, I_s_bar, I_d_bar);
}

// ---------------------------------------------------------------------------

struct ModePair {
  double omega1, omega2;    // rad/s
  double Z1, Z2;            // ohm
  double L_g_eff, L_d_eff;  // H
  double C_q1, C_q2;        // F
};

inline ModePair mode_parameters(const ReciprocalCaps& rc, double L_g, double L_d, double g_m) {
  if (!(rc.q1 > 0.0) || !(rc.q2 > 0.0))
    throw Error("appendix_a", "non-positive mode capacitance (r_Cq1 or r_Cq2 <= 0)");
  const double inv_lg = 1.0 / L_g + g_m * g_m * 2.0 * rc.p1;
  const double inv_ld = 1.0 / L_d + g_m * g_m * 2.0 * rc.p2;
  if (!(inv_lg > 0.0) || !(inv_ld > 0.0)) throw Error("appendix_a", "non-positive effective inductance");

  ModePair m{};
  m.L_g_eff = 1.0 / inv_lg;
  m.L_d_eff = 1.0 / inv_ld;
  m.C_q1 = 1.0 / (2.0 * rc.q1);
  m.C_q2 = 1.0 / (2.0 * rc.q2);
  m.omega1 = 1.0 / std::sqrt(m.L_g_eff * m.C_q1);
  m.omega2 = 1.0 / std::sqrt(m.L_d_eff * m.C_q2);
  m.Z1 = std::sqrt(m.L_g_eff / m.C_q1);
  m.Z2 = std::sqrt(m.L_d_eff / m.C_q2);
  return m;
}

// ---------------------------------------------------------------------------

/// Cross-mode coupling (A*, B*, dimensionless after the 1/omega prefactor)
/// and drive rates E1w, E2w (1/s).
struct SteadyStateCoefficients {
  cplx A1, A2, A3;
  cplx B1, B2, B3;
  cplx E1w, E2w;
};

// The drive amplitudes use the V_rf-proportional part of P_k only: the
// bias/noise currents are static and carry no component at omega_in.
inline SteadyStateCoefficients steady_coefficients(const ReciprocalCaps& rc, const ModePair& modes,
                                                   const InverseCapMatrix& inv, double C_in, double g_m,
                                                   double g_NL, double V_rf, const DriveConsts& drive) {
  const cplx i{0.0, 1.0};
  const double z12 = std::sqrt(modes.Z1 * modes.Z2);
  const double z2_over_z1 = std::sqrt(modes.Z2 / modes.Z1);
  // 1/(4 C_X) = r_X / 2
  auto q = [](double r) { return r / 2.0; };

  SteadyStateCoefficients c{};
  c.A1 = (1.0 / modes.omega2) * (-i * q(rc.q1q2) / z12 - g_m * q(rc.q2p1));
  c.A3 = (1.0 / modes.omega1) * (g_m * q(rc.q1p1));
  c.A2 = (1.0 / modes.omega2) *
         (-i * g_m * g_m * q(rc.p1p2) * z12 + g_m * q(rc.q1p2) * z2_over_z1 -
          i * g_m * g_NL * V_rf * q(rc.p1p2_nl) * z12 + g_NL * V_rf * q(rc.q1p2_nl) * z2_over_z1);
  c.B1 = (1.0 / modes.omega1) *
         (-i * q(rc.q1q2) / z12 - g_m * q(rc.q1p2) * z2_over_z1 - g_NL * V_rf * q(rc.q1p2_nl) * z2_over_z1);
  c.B3 = (1.0 / modes.omega2) * (g_m * q(rc.q2p2) + g_NL * V_rf * q(rc.q2p2_nl));
  c.B2 = (1.0 / modes.omega1) *
         (-i * g_m * g_m * q(rc.p1p2) * z12 + g_m * q(rc.q2p1) - i * g_m * g_NL * V_rf * q(rc.p1p2_nl) * z12);

  const double hbar = kHbar;
  c.E1w = drive.G1 * V_rf / 2.0 * std::sqrt(1.0 / (2 * modes.Z1 * hbar)) -
          i * drive.coherent_p1() * g_m * V_rf / 2.0 * std::sqrt(modes.Z1 / (2 * hbar));
  c.E2w = drive.G2 * V_rf / 2.0 * std::sqrt(1.0 / (2 * modes.Z2 * hbar)) -
          i * drive.coherent_p2() * g_m * V_rf / 2.0 * std::sqrt(modes.Z2 / (2 * hbar)) -
          i * inv.C11 * inv.C11 * C_in * C_in * g_NL * V_rf * V_rf * std::sqrt(modes.Z2 / (2 * hbar));
  return c;
}

// ---------------------------------------------------------------------------

/// Capacitance-only part of the constants: independent of g_m, V_rf and
/// omega_in, so sweeps compute it once.
struct CapacitanceStage {
  EvaluationMode mode;
  DeviceCaps caps;
  Nonlinearity nl;
  CapMatrix matrix;
  InverseCapMatrix inverse;
  ReciprocalCaps rc;
  // |C11_literal - C11_consistent| / |C11_consistent|
  double c11_mode_delta;
};

struct AppendixAConstants {
  EvaluationMode mode;
  DeviceCaps caps;
  Nonlinearity nl;
  BiasCurrents bias;
  CapMatrix matrix;
  InverseCapMatrix inverse;
  ReciprocalCaps rc;
  DriveConsts drive;
  ModePair modes;
  SteadyStateCoefficients coeffs;
  double c11_mode_delta;
  double g_m;
  double V_rf;
  double C_in;
};

inline CapacitanceStage capacitance_stage(const CircuitParams& p, EvaluationMode mode) {
  CapacitanceStage s{};
  s.mode = mode;
  s.caps = derive_device_caps(p);
  s.nl = derive_nonlinearity(p);
  s.matrix = assemble_cap_matrix(s.caps, p.C_in, p.C_d, s.nl.C_N);
  const InverseCapMatrix exact = invert_cap_matrix(s.matrix);
  const InverseCapMatrix printed = invert_cap_matrix_literal(s.caps, p.C_in, p.C_d, s.nl.C_N);
  s.inverse = mode == EvaluationMode::consistent ? exact : printed;
  s.c11_mode_delta = std::abs(printed.C11 - exact.C11) / std::abs(exact.C11);
  s.rc = reciprocal_constants(s.inverse, s.caps, p.C_in, p.C_d);
  return s;
}

/// Completes the constants for the transconductance and drive in `p`.
inline AppendixAConstants complete_constants(const CapacitanceStage& s, const CircuitParams& p) {
  AppendixAConstants c{};
  c.mode = s.mode;
  c.caps = s.caps;
  c.nl = s.nl;
  c.matrix = s.matrix;
  c.inverse = s.inverse;
  c.rc = s.rc;
  c.c11_mode_delta = s.c11_mode_delta;
  c.g_m = p.g_m;
  c.V_rf = p.V_rf;
  c.C_in = p.C_in;
  c.bias = bias_noise_currents(p);
  c.drive = detail::drive_terms(s.inverse, s.caps, p.C_in, p.C_d, p.g_m, p.V_rf, c.bias.I_s_bar, c.bias.I_d_bar);
  c.modes = mode_parameters(s.rc, p.L_g, p.L_d, p.g_m);
  c.coeffs = steady_coefficients(s.rc, c.modes, s.inverse, p.C_in, p.g_m, s.nl.g_NL, p.V_rf, c.drive);
  return c;
}

inline AppendixAConstants derive_constants(const CircuitParams& p,
                                           EvaluationMode mode = EvaluationMode::consistent) {
  return complete_constants(capacitance_stage(p, mode), p);
}

}  // namespace qlna
