#include "fghs/matcore.hpp"

#include <cmath>
#include <string>

namespace fghs {

SymMatrix::SymMatrix(Eigen::Index dim) : m_(Matrix::Zero(dim, dim)) {
  if (dim < 1) throw ParameterDomain("SymMatrix: dimension must be positive");
}

SymMatrix SymMatrix::from_upper(const Matrix& full) {
  if (full.rows() != full.cols() || full.rows() < 1)
    throw DimensionMismatch("SymMatrix: input must be square and non-empty");
  Matrix m = full.triangularView<Eigen::Upper>();
  m.triangularView<Eigen::StrictlyLower>() = full.transpose().triangularView<Eigen::StrictlyLower>();
  return SymMatrix(std::move(m));
}

SymMatrix SymMatrix::from_full_checked(const Matrix& full, double tol) {
  if (full.rows() != full.cols() || full.rows() < 1)
    throw DimensionMismatch("SymMatrix: input must be square and non-empty");
  const double asym = (full - full.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= tol))
    throw FormatError("SymMatrix: input is not symmetric (max |a_ij - a_ji| = " +
                      std::to_string(asym) + ")");
  return from_upper(full);
}

SymMatrix SymMatrix::identity(Eigen::Index dim) {
  SymMatrix s(dim);
  s.m_.setIdentity();
  return s;
}

SymMatrix SymMatrix::zeros(Eigen::Index dim) { return SymMatrix(dim); }

SymMatrix SymMatrix::diagonal(const Vector& d) {
  SymMatrix s(d.size());
  s.m_.diagonal() = d;
  return s;
}

const char* to_string(DiagMode mode) {
  return mode == DiagMode::FixedUnit ? "fixed" : "free";
}

DiagMode parse_diag_mode(const std::string& s) {
  if (s == "fixed" || s == "FixedUnit") return DiagMode::FixedUnit;
  if (s == "free" || s == "Free") return DiagMode::Free;
  throw ConfigError("unknown diag mode '" + s + "' (expected fixed|free)");
}

PrecisionMatrix::PrecisionMatrix(SymMatrix mat, DiagMode mode)
    : mat_(std::move(mat)), mode_(mode) {
  if (mode_ == DiagMode::FixedUnit) {
    for (Eigen::Index i = 0; i < mat_.dim(); ++i)
      if (mat_(i, i) != 1.0)
        throw ParameterDomain("PrecisionMatrix: FixedUnit mode requires a unit diagonal");
  }
}

bool cholesky_lower_in_place(Matrix& a, double pivot_floor) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double pivot = a(j, j) - a.row(j).head(j).squaredNorm();
    if (!(pivot > pivot_floor) || !std::isfinite(pivot)) return false;
    const double d = std::sqrt(pivot);
    a(j, j) = d;
    const Eigen::Index rest = n - j - 1;
    if (rest > 0) {
      a.col(j).tail(rest).noalias() -= a.bottomLeftCorner(rest, j) * a.row(j).head(j).transpose();
      a.col(j).tail(rest) /= d;
    }
  }
  return true;
}

std::optional<Matrix> try_cholesky(const SymMatrix& m) {
  const double max_diag = m.dense().diagonal().cwiseAbs().maxCoeff();
  if (!(max_diag > 0.0)) return std::nullopt;
  Matrix l = m.dense();
  if (!cholesky_lower_in_place(l, kCholeskyPivotTol * max_diag)) return std::nullopt;
  l.triangularView<Eigen::StrictlyUpper>().setZero();
  return l;
}

Matrix cholesky(const SymMatrix& m) {
  auto l = try_cholesky(m);
  if (!l) throw NotPositiveDefinite("cholesky: matrix is not positive definite");
  return std::move(*l);
}

double log_det_from_factor(const Matrix& lower) {
  return 2.0 * lower.diagonal().array().log().sum();
}

double log_det(const SymMatrix& m) { return log_det_from_factor(cholesky(m)); }

bool is_positive_definite(const SymMatrix& m) { return try_cholesky(m).has_value(); }

Vector eigenvalues(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.dense(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double min_eigenvalue(const SymMatrix& m) { return eigenvalues(m)(0); }

double max_eigenvalue(const SymMatrix& m) {
  const Vector ev = eigenvalues(m);
  return ev(ev.size() - 1);
}

SymMatrix nearest_psd(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.dense());
  const Vector clipped = es.eigenvalues().cwiseMax(0.0);
  const Matrix& q = es.eigenvectors();
  return SymMatrix::from_upper(q * clipped.asDiagonal() * q.transpose());
}

double frobenius_dist_sq(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("frobenius_dist_sq: dimensions differ");
  return (a.dense() - b.dense()).squaredNorm();
}

SymMatrix inverse_pd(const SymMatrix& m) {
  const Matrix l = cholesky(m);
  Matrix inv = Matrix::Identity(m.dim(), m.dim());
  l.triangularView<Eigen::Lower>().solveInPlace(inv);
  l.transpose().triangularView<Eigen::Upper>().solveInPlace(inv);
  return SymMatrix::from_upper(inv);
}

}  // namespace fghs
