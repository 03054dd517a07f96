#pragma once

// Dense symmetric-matrix primitives: storage with an authoritative upper
// triangle, Cholesky with a typed PD failure, log-determinants, spectra and
// the Frobenius-nearest PSD projection.

#include <Eigen/Dense>
#include <optional>

#include "fghs/error.hpp"

namespace fghs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense symmetric matrix. Every mutation writes both (i, j) and (j, i), and
/// construction from a full matrix mirrors the upper triangle, so the stored
/// entries are exactly symmetric.
class SymMatrix {
 public:
  explicit SymMatrix(Eigen::Index dim);
  /// Mirrors the upper triangle of `full` into the lower one.
  static SymMatrix from_upper(const Matrix& full);
  /// Like from_upper, but rejects inputs whose triangles disagree by more
  /// than `tol` (absolute).
  static SymMatrix from_full_checked(const Matrix& full, double tol);

  static SymMatrix identity(Eigen::Index dim);
  static SymMatrix zeros(Eigen::Index dim);
  static SymMatrix diagonal(const Vector& d);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  void set(Eigen::Index i, Eigen::Index j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  const Matrix& dense() const noexcept { return m_; }

 private:
  explicit SymMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

enum class DiagMode { FixedUnit, Free };

const char* to_string(DiagMode mode);
DiagMode parse_diag_mode(const std::string& s);

/// The estimand. Positive-definiteness is a predicate, not an invariant.
class PrecisionMatrix {
 public:
  PrecisionMatrix(SymMatrix mat, DiagMode mode);

  const SymMatrix& mat() const noexcept { return mat_; }
  DiagMode diag_mode() const noexcept { return mode_; }
  Eigen::Index dim() const noexcept { return mat_.dim(); }
  const Matrix& dense() const noexcept { return mat_.dense(); }

 private:
  SymMatrix mat_;
  DiagMode mode_;
};

/// Relative pivot tolerance: a pivot must exceed this times max |m_ii|.
inline constexpr double kCholeskyPivotTol = 1e-12;

/// Left-looking Cholesky on the lower triangle of `a`; the strict upper
/// triangle is left untouched. Returns false at the first pivot ≤ pivot_floor.
bool cholesky_lower_in_place(Matrix& a, double pivot_floor = 0.0);

/// Lower-triangular L with L Lᵀ = m, or nullopt when m is not numerically PD.
std::optional<Matrix> try_cholesky(const SymMatrix& m);
/// Throws NotPositiveDefinite instead of returning nullopt.
Matrix cholesky(const SymMatrix& m);

double log_det(const SymMatrix& m);
/// Log-determinant from an existing Cholesky factor.
double log_det_from_factor(const Matrix& lower);

bool is_positive_definite(const SymMatrix& m);

/// Ascending eigenvalues.
Vector eigenvalues(const SymMatrix& m);
double min_eigenvalue(const SymMatrix& m);
double max_eigenvalue(const SymMatrix& m);

/// Frobenius-nearest positive semidefinite matrix (eigenvalue clipping).
SymMatrix nearest_psd(const SymMatrix& m);

double frobenius_dist_sq(const SymMatrix& a, const SymMatrix& b);

/// Inverse of a PD matrix via its Cholesky factor.
SymMatrix inverse_pd(const SymMatrix& m);

}  // namespace fghs
