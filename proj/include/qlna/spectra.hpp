#pragma once

// Oscillator energies: the closed-form expressions, the diagonal of the
// assembled H0, first-order perturbative corrections from Hp, and exact
// diagonalisation of H0 + lambda Hp as an oracle.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "qlna/appendix_a.hpp"
#include "qlna/fockspace.hpp"

namespace qlna {

struct ModeEnergies {
  cplx E1;  // oscillator I, level j1
  cplx E2;  // oscillator II, level j2
};

// Closed form. The imaginary parts grow linearly with j, which the direct
// matrix element of the charge-flux self term does not (it is j-independent).
inline ModeEnergies literal_energies(int j1, int j2, const AppendixAConstants& c) {
  if (j1 < 0 || j2 < 0) throw Error("spectra", "negative occupation");
  const cplx i{0.0, 1.0};
  const double hbar = kHbar;
  // g_m / (2 C_q1p1) = g_m r_q1p1
  const cplx e1 = hbar * c.modes.omega1 * (j1 + 0.5) - i * hbar / 2.0 * (c.g_m * c.rc.q1p1) * double(j1);
  const cplx e2 = hbar * c.modes.omega2 * (j2 + 0.5) - i * hbar / 2.0 * (c.g_m * c.rc.q2p2) * double(j2) -
                  i * hbar / 2.0 * (c.V_rf * c.rc.q2p2) * double(j2);
  return {e1, e2};
}

namespace detail {
inline void check_margin(int j1, int j2, int dim, int margin, const char* what) {
  if (j1 < 0 || j2 < 0 || j1 > dim - margin || j2 > dim - margin)
    throw Error("spectra", std::string(what) + ": Fock index outside truncation-safe range (j <= dim - " +
                               std::to_string(margin) + ")");
}
inline int dim_of(const Matrix& h) {
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(h.rows()))));
  if (d * d != h.rows() || h.rows() != h.cols()) throw Error("spectra", "matrix is not a two-mode operator");
  return d;
}
}  // namespace detail

inline cplx diagonal_energy(const Matrix& H0, int j1, int j2) {
  const int dim = detail::dim_of(H0);
  detail::check_margin(j1, j2, dim, 4, "diagonal_energy");
  const int k = basis_index(j1, j2, dim);
  return H0(k, k);
}

/// <j1, j2| Hp |j1, j2>; zero by parity for every term of Hp.
inline cplx first_order_energy(const Matrix& Hp, int j1, int j2) {
  const int dim = detail::dim_of(Hp);
  if (j1 < 0 || j2 < 0 || j1 >= dim || j2 >= dim) throw Error("spectra", "first_order_energy: index out of range");
  const int k = basis_index(j1, j2, dim);
  return Hp(k, k);
}

// ---------------------------------------------------------------------------

struct FockKey {
  int j1, j2;
  friend auto operator<=>(const FockKey&, const FockKey&) = default;
};

struct StateAmplitude {
  cplx amplitude;
  // Same oscillator-I level and oscillator-II shifted by +-1 or +-3: the
  // pattern the closed-form state correction lists.
  bool in_printed_subset;
};

struct StateCorrection {
  FockKey base;
  std::map<FockKey, StateAmplitude> amplitudes;
  double norm_correction;  // sum |c_i|^2
};

inline constexpr double kDegeneracyThreshold = 1e-30;  // J

// c_i = <i|Hp|j> / (E_i - E_j), denominators from the diagonal of H0.
inline StateCorrection first_order_state(int j1, int j2, const Matrix& Hp, const Matrix& H0) {
  const int dim = detail::dim_of(Hp);
  if (detail::dim_of(H0) != dim) throw Error("spectra", "H0 and Hp dimensions differ");
  detail::check_margin(j1, j2, dim, 4, "first_order_state");

  StateCorrection out{{j1, j2}, {}, 0.0};
  const int col = basis_index(j1, j2, dim);
  const cplx e_base = H0(col, col);
  for (int i1 = 0; i1 < dim; ++i1) {
    for (int i2 = 0; i2 < dim; ++i2) {
      const int row = basis_index(i1, i2, dim);
      if (row == col) continue;
      const cplx element = Hp(row, col);
      if (element == cplx{}) continue;
      const cplx gap = H0(row, row) - e_base;
      if (std::abs(gap) < kDegeneracyThreshold)
        throw Error("spectra", "degenerate levels (" + std::to_string(i1) + "," + std::to_string(i2) + ") and (" +
                                   std::to_string(j1) + "," + std::to_string(j2) + ")");
      const int d2 = std::abs(i2 - j2);
      const bool printed = i1 == j1 && (d2 == 1 || d2 == 3);
      const cplx amp = element / gap;
      out.amplitudes.emplace(FockKey{i1, i2}, StateAmplitude{amp, printed});
      out.norm_correction += std::norm(amp);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

struct Eigensystem {
  Vector values;   // sorted by real part
  Matrix vectors;  // columns, unit norm
};

inline Eigensystem diagonalize(const Matrix& H) {
  if (H.rows() > 4096) throw Error("spectra", "matrix too large for dense diagonalisation");
  Eigen::ComplexEigenSolver<Matrix> solver(H, true);
  if (solver.info() != Eigen::Success) throw Error("spectra", "eigensolver failed to converge");
  const Vector& vals = solver.eigenvalues();
  std::vector<Eigen::Index> order(vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return vals(a).real() < vals(b).real(); });

  Eigensystem out{Vector(vals.size()), Matrix(H.rows(), H.cols())};
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    out.values(k) = vals(order[k]);
    out.vectors.col(k) = solver.eigenvectors().col(order[k]).normalized();
  }
  return out;
}

/// Eigenvalue of the eigenvector with the largest overlap |<ref|v>|.
inline cplx match_level(const Eigensystem& sys, const Vector& reference) {
  Eigen::Index best = 0;
  double best_overlap = -1.0;
  for (Eigen::Index k = 0; k < sys.values.size(); ++k) {
    const double ov = std::abs(reference.dot(sys.vectors.col(k)));
    if (ov > best_overlap) {
      best_overlap = ov;
      best = k;
    }
  }
  return sys.values(best);
}

struct LevelReport {
  FockKey level;
  cplx literal;  // E_j1 + E_j2 from the closed form
  cplx numeric;  // diagonal element of H0
  cplx exact;    // eigenvalue of H0 + lambda Hp matched by overlap
};

struct SpectrumReport {
  double lambda;
  std::vector<LevelReport> levels;
  Vector exact_eigenvalues;  // sorted by real part
};

inline SpectrumReport exact_spectrum(const Matrix& H0, const Matrix& Hp, double lambda,
                                     const AppendixAConstants& c, const std::vector<FockKey>& levels) {
  const int dim = detail::dim_of(H0);
  const Eigensystem sys = diagonalize(H0 + lambda * Hp);
  SpectrumReport rep{lambda, {}, sys.values};
  for (const FockKey& k : levels) {
    const ModeEnergies lit = literal_energies(k.j1, k.j2, c);
    rep.levels.push_back(
        {k, lit.E1 + lit.E2, diagonal_energy(H0, k.j1, k.j2), match_level(sys, fock_state(k.j1, k.j2, dim))});
  }
  return rep;
}

}  // namespace qlna
