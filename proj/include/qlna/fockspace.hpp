#pragma once

// Truncated two-mode Fock space. Basis ordering: |j1, j2> sits at index
// j1 * dim + j2 (mode 1 varies slowest). Every selection-rule check in
// the test suite depends on this convention.

#include <Eigen/Dense>
#include <bitset>
#include <cmath>
#include <complex>
#include <initializer_list>

#include "qlna/appendix_a.hpp"
#include "qlna/constants.hpp"
#include "qlna/error.hpp"

namespace qlna {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline int basis_index(int j1, int j2, int dim) { return j1 * dim + j2; }

struct TruncatedMode {
  int dim;
  Matrix a;  // annihilation operator, a(n-1, n) = sqrt(n)
};

inline TruncatedMode ladder(int dim) {
  if (dim < 2) throw Error("fockspace", "ladder dimension must be >= 2");
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {dim, a};
}

inline Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

/// Lifts a single-mode operator to the two-mode space.
inline Matrix embed(const Matrix& op, int which, int dim) {
  if (op.rows() != dim || op.cols() != dim) throw Error("fockspace", "embed: operator is not dim x dim");
  if (which != 1 && which != 2) throw Error("fockspace", "embed: mode must be 1 or 2");
  const Matrix id = Matrix::Identity(dim, dim);
  return which == 1 ? kron(op, id) : kron(id, op);
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double hermiticity_defect(const Matrix& h) { return max_abs(h - h.adjoint()); }

inline Matrix hermitize(const Matrix& h) { return 0.5 * (h + h.adjoint()); }

// ---------------------------------------------------------------------------
// Single-mode quadratures

struct ModeQuadratures {
  Matrix a;
  Matrix number;
  Matrix phi;  // sqrt(hbar Z / 2) (a + a^dag)
  Matrix Q;    // -i sqrt(hbar / 2Z) (a - a^dag)
  Matrix id;
};

inline ModeQuadratures mode_quadratures(int dim, double Z) {
  const Matrix a = ladder(dim).a;
  const Matrix ad = a.adjoint();
  const cplx i{0.0, 1.0};
  return {a, ad * a, std::sqrt(kHbar * Z / 2) * (a + ad), -i * std::sqrt(kHbar / (2 * Z)) * (a - ad),
          Matrix::Identity(dim, dim)};
}

// ---------------------------------------------------------------------------
// Unperturbed Hamiltonian in quadrature form:
//   H0 = hbar w1 (n1 + 1/2) + hbar w2 (n2 + 1/2) + sum_t c_t X_t Y_t + linear terms
// Operator products keep the written order (charge left of flux), so the
// charge-flux self terms are not Hermitian.

struct H0Coefficients {
  double phi1_phi2;
  double q1_q2;
  double q1_phi1;
  double q2_phi2;
  double q1_phi2;
  double q2_phi1;
  double phi1;  // linear terms
  double phi2;
  double q1;
  double q2;
};

inline H0Coefficients h0_coefficients(const AppendixAConstants& c) {
  const ReciprocalCaps& r = c.rc;
  const double g = c.g_m;
  const double v = c.V_rf;
  const double g_nl = c.nl.g_NL;
  const double c11 = c.inverse.C11;
  const bool literal = c.mode == EvaluationMode::literal;

  H0Coefficients h{};
  // The printed ladder-operator form carries four deviations from the
  // quadrature Hamiltonian; literal mode keeps them.
  h.phi1_phi2 = g * g * (literal ? r.q1p2 : r.p1p2) + g_nl * g * v * r.p1p2_nl;
  h.q1_q2 = r.q1q2;
  h.q1_phi1 = g * r.q1p1;
  h.q2_phi2 = g * r.q2p2 + g_nl * v * r.q2p2_nl;
  h.q1_phi2 = g * r.q1p2 + g_nl * (literal ? g : 1.0) * v * r.q1p2_nl;
  h.q2_phi1 = g * r.q2p1 * (literal ? std::sqrt(c.modes.Z2 / c.modes.Z1) : 1.0);
  h.phi1 = c.drive.force1 / 2;
  h.phi2 = c.drive.force2 / 2 + g_nl * c11 * c11 * c.C_in * c.C_in * v * v;
  h.q1 = c.drive.G1 * v / 2 * (literal ? g : 1.0);
  h.q2 = c.drive.G2 * v / 2 * (literal ? g : 1.0);
  return h;
}

inline Matrix build_h0(const AppendixAConstants& c, int dim) {
  if (dim < 4) throw Error("fockspace", "H0 needs dim >= 4");
  const ModeQuadratures m1 = mode_quadratures(dim, c.modes.Z1);
  const ModeQuadratures m2 = mode_quadratures(dim, c.modes.Z2);
  const H0Coefficients h = h0_coefficients(c);

  Matrix H = kHbar * c.modes.omega1 * kron(m1.number + 0.5 * m1.id, m2.id) +
             kHbar * c.modes.omega2 * kron(m1.id, m2.number + 0.5 * m2.id);
  H += h.phi1_phi2 * kron(m1.phi, m2.phi);
  H += h.q1_q2 * kron(m1.Q, m2.Q);
  H += h.q1_phi1 * kron(m1.Q * m1.phi, m2.id);
  H += h.q2_phi2 * kron(m1.id, m2.Q * m2.phi);
  H += h.q1_phi2 * kron(m1.Q, m2.phi);
  H += h.q2_phi1 * kron(m1.phi, m2.Q);
  H += h.phi1 * kron(m1.phi, m2.id);
  H += h.phi2 * kron(m1.id, m2.phi);
  H += h.q1 * kron(m1.Q, m2.id);
  H += h.q2 * kron(m1.id, m2.Q);
  return H;
}

// ---------------------------------------------------------------------------
// Perturbation Hamiltonian: g_NL * { six cubic terms } with the drain flux
// phi2 as the rightmost factor.

enum class HpTerm : int {
  charge1_sq = 0,  // C11^2 Q1^2 phi2
  charge2_sq,      // C12^2 Q2^2 phi2
  flux1_sq,        // C11^2 g_m^2 phi1^2 phi2
  charge1_charge2, // 2 C11 C12 Q1 Q2 phi2
  charge1_flux1,   // 2 C11^2 g_m Q1 phi1 phi2
  charge2_flux1,   // 2 C11 C12 g_m Q2 phi1 phi2
};

inline constexpr int kHpTermCount = 6;
using HpTermMask = std::bitset<kHpTermCount>;

inline HpTermMask hp_terms(std::initializer_list<HpTerm> terms) {
  HpTermMask mask;
  for (HpTerm t : terms) mask.set(static_cast<int>(t));
  return mask;
}

inline const HpTermMask kAllHpTerms{0b111111};

/// The only term without a mode-1 operator; it alone reproduces the
/// j2 -> j2 +- 1, j2 +- 3 mixing pattern.
inline const HpTermMask kMode2OnlyHpTerms = hp_terms({HpTerm::charge2_sq});

inline Matrix build_hp(const AppendixAConstants& c, int dim, HpTermMask terms = kAllHpTerms) {
  if (dim < 4) throw Error("fockspace", "Hp needs dim >= 4");
  const ModeQuadratures m1 = mode_quadratures(dim, c.modes.Z1);
  const ModeQuadratures m2 = mode_quadratures(dim, c.modes.Z2);
  const double c11 = c.inverse.C11;
  const double c12 = c.inverse.C12;
  const double g = c.g_m;

  const Matrix q2_phi2 = m2.Q * m2.phi;
  Matrix H = Matrix::Zero(dim * dim, dim * dim);
  auto on = [&](HpTerm t) { return terms.test(static_cast<int>(t)); };
  if (on(HpTerm::charge1_sq)) H += c11 * c11 * kron(m1.Q * m1.Q, m2.phi);
  if (on(HpTerm::charge2_sq)) H += c12 * c12 * kron(m1.id, m2.Q * q2_phi2);
  if (on(HpTerm::flux1_sq)) H += c11 * c11 * g * g * kron(m1.phi * m1.phi, m2.phi);
  if (on(HpTerm::charge1_charge2)) H += 2 * c11 * c12 * kron(m1.Q, q2_phi2);
  if (on(HpTerm::charge1_flux1)) H += 2 * c11 * c11 * g * kron(m1.Q * m1.phi, m2.phi);
  if (on(HpTerm::charge2_flux1)) H += 2 * c11 * c12 * g * kron(m1.phi, q2_phi2);
  return c.nl.g_NL * H;
}

// ---------------------------------------------------------------------------
// Voltage and current operators, each a linear combination of the four
// quadratures plus a scalar offset.

struct LinearObservable {
  double q1 = 0, phi1 = 0, q2 = 0, phi2 = 0, offset = 0;
};

struct ViCoefficients {
  LinearObservable V1, I1, V2, I2;
};

// Consistent mode: V_k = [phi_k, H0]/(i hbar) and I_k = [Q_k, H0]/(i hbar)
// evaluated on the quadrature form of H0. Literal mode: the printed
// operator expressions.
inline ViCoefficients vi_coefficients(const AppendixAConstants& c) {
  const ReciprocalCaps& r = c.rc;
  const ModePair& m = c.modes;
  ViCoefficients vi;

  if (c.mode == EvaluationMode::consistent) {
    const H0Coefficients h = h0_coefficients(c);
    vi.V1 = {1.0 / m.C_q1, h.q1_phi1, h.q1_q2, h.q1_phi2, h.q1};
    vi.V2 = {h.q1_q2, h.q2_phi1, 1.0 / m.C_q2, h.q2_phi2, h.q2};
    vi.I1 = {-h.q1_phi1, -1.0 / m.L_g_eff, -h.q2_phi1, -h.phi1_phi2, -h.phi1};
    vi.I2 = {-h.q1_phi2, -h.phi1_phi2, -h.q2_phi2, -1.0 / m.L_d_eff, -h.phi2};
    return vi;
  }

  const double g = c.g_m;
  const double v = c.V_rf;
  const double g_nl = c.nl.g_NL;
  const double q1p2_total = g * r.q1p2 + g_nl * v * r.q1p2_nl;
  const double q2p2_total = g * r.q2p2 + g_nl * v * r.q2p2_nl;
  const double p1p2_total = g * g * r.p1p2 + g * g_nl * v * r.p1p2_nl;
  vi.V1 = {2 * r.q1, g * r.q2p1, 2 * r.q1q2, q1p2_total, c.drive.G1 * v / 2};
  vi.I1 = {-g * r.q1p1, -1.0 / m.L_g_eff, -g * r.q2p1, -p1p2_total, -c.drive.force1 / 2};
  vi.V2 = {2 * r.q1q2, g * r.q2p1, 2 * r.q2, q2p2_total, c.drive.G2 * v / 2};
  vi.I2 = {-q1p2_total, -p1p2_total, -q2p2_total, -1.0 / m.L_d_eff, -c.drive.force2 / 2};
  return vi;
}

inline Matrix observable_matrix(const LinearObservable& o, const ModeQuadratures& m1, const ModeQuadratures& m2) {
  const int d = static_cast<int>(m1.a.rows());
  return o.q1 * kron(m1.Q, m2.id) + o.phi1 * kron(m1.phi, m2.id) + o.q2 * kron(m1.id, m2.Q) +
         o.phi2 * kron(m1.id, m2.phi) + o.offset * Matrix::Identity(d * d, d * d);
}

// ---------------------------------------------------------------------------

struct OperatorSet {
  int dim;
  double hbar;
  double Z1, Z2;
  Matrix a1, a2;
  Matrix phi1, Q1, phi2, Q2;
  Matrix H0, Hp;
  Matrix V1, I1, V2, I2;
  ViCoefficients vi;
};

inline OperatorSet build_operator_set(const AppendixAConstants& c, int dim, HpTermMask terms = kAllHpTerms) {
  if (dim < 4) throw Error("fockspace", "operator set needs dim >= 4");
  const ModeQuadratures m1 = mode_quadratures(dim, c.modes.Z1);
  const ModeQuadratures m2 = mode_quadratures(dim, c.modes.Z2);

  OperatorSet ops;
  ops.dim = dim;
  ops.hbar = kHbar;
  ops.Z1 = c.modes.Z1;
  ops.Z2 = c.modes.Z2;
  ops.a1 = embed(m1.a, 1, dim);
  ops.a2 = embed(m2.a, 2, dim);
  ops.phi1 = embed(m1.phi, 1, dim);
  ops.Q1 = embed(m1.Q, 1, dim);
  ops.phi2 = embed(m2.phi, 2, dim);
  ops.Q2 = embed(m2.Q, 2, dim);
  ops.H0 = build_h0(c, dim);
  ops.Hp = build_hp(c, dim, terms);
  ops.vi = vi_coefficients(c);
  ops.V1 = observable_matrix(ops.vi.V1, m1, m2);
  ops.I1 = observable_matrix(ops.vi.I1, m1, m2);
  ops.V2 = observable_matrix(ops.vi.V2, m1, m2);
  ops.I2 = observable_matrix(ops.vi.I2, m1, m2);
  return ops;
}

/// Basis vector |j1, j2>.
inline Vector fock_state(int j1, int j2, int dim) {
  if (j1 < 0 || j2 < 0 || j1 >= dim || j2 >= dim) throw Error("fockspace", "Fock index out of range");
  Vector v = Vector::Zero(dim * dim);
  v(basis_index(j1, j2, dim)) = 1.0;
  return v;
}

}  // namespace qlna
