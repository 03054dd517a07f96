#include "fghs/diverge.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fghs {

namespace {

void require_same_dim(const PrecisionMatrix& a, const PrecisionMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("divergence: dimensions differ");
}

void require_open_unit(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ParameterDomain(std::string(who) + ": alpha must lie in (0, 1)");
}

// Eigenvalues of L1⁻¹ Ω2 L1⁻ᵀ, which are those of Ω1^{-1/2} Ω2 Ω1^{-1/2}.
Vector relative_spectrum(const Matrix& l1, const Matrix& omega2) {
  Matrix m = omega2;
  l1.triangularView<Eigen::Lower>().solveInPlace(m);
  Matrix mt = m.transpose();
  l1.triangularView<Eigen::Lower>().solveInPlace(mt);
  return eigenvalues(SymMatrix::from_upper(mt));
}

}  // namespace

double kl_gaussian(const PrecisionMatrix& omega1, const PrecisionMatrix& omega2) {
  require_same_dim(omega1, omega2);
  const Matrix l1 = cholesky(omega1.mat());
  const double ld2 = log_det(omega2.mat());
  // tr(Ω1⁻¹ Ω2) = ‖L1⁻¹ L2‖_F²
  Matrix l2 = cholesky(omega2.mat());
  l1.triangularView<Eigen::Lower>().solveInPlace(l2);
  const double trace = l2.squaredNorm();
  const double kl =
      0.5 * (log_det_from_factor(l1) - ld2 + trace - static_cast<double>(omega1.dim()));
  return std::max(kl, 0.0);
}

double kl_variance_gaussian(const PrecisionMatrix& omega1, const PrecisionMatrix& omega2) {
  require_same_dim(omega1, omega2);
  const Matrix l1 = cholesky(omega1.mat());
  cholesky(omega2.mat());
  const Vector d = relative_spectrum(l1, omega2.dense());
  return 0.5 * (Vector::Ones(d.size()) - d).squaredNorm();
}

double renyi_gaussian(const PrecisionMatrix& omega1, const PrecisionMatrix& omega2, double alpha) {
  require_same_dim(omega1, omega2);
  require_open_unit(alpha, "renyi_gaussian");
  const double ld1 = log_det(omega1.mat());
  const double ld2 = log_det(omega2.mat());
  const SymMatrix mix =
      SymMatrix::from_upper(alpha * omega1.dense() + (1.0 - alpha) * omega2.dense());
  const double ld_mix = log_det(mix);
  const double d = (ld_mix - alpha * ld1 - (1.0 - alpha) * ld2) / (2.0 * (1.0 - alpha));
  return std::max(d, 0.0);
}

double hellinger_sq_gaussian(const PrecisionMatrix& omega1, const PrecisionMatrix& omega2) {
  require_same_dim(omega1, omega2);
  // Bhattacharyya coefficient det(Σ1)^¼ det(Σ2)^¼ / det((Σ1 + Σ2)/2)^½ with
  // det((Σ1 + Σ2)/2) = det(Ω1 + Ω2) / (2^d det Ω1 det Ω2).
  const double ld1 = log_det(omega1.mat());
  const double ld2 = log_det(omega2.mat());
  const SymMatrix sum = SymMatrix::from_upper(omega1.dense() + omega2.dense());
  const double d = static_cast<double>(omega1.dim());
  const double ld_avg_cov = log_det(sum) - d * std::log(2.0) - ld1 - ld2;
  const double log_bc = -0.25 * ld1 - 0.25 * ld2 - 0.5 * ld_avg_cov;
  const double h2 = -std::expm1(log_bc);
  return std::clamp(h2, 0.0, 1.0);
}

double c_alpha(double alpha) {
  require_open_unit(alpha, "c_alpha");
  return alpha >= 0.5 ? 1.0 : (1.0 - alpha) / alpha;
}

DivergenceReport divergence_report(const PrecisionMatrix& omega1, const PrecisionMatrix& omega2,
                                   double alpha) {
  return DivergenceReport{kl_gaussian(omega1, omega2), renyi_gaussian(omega1, omega2, alpha),
                          hellinger_sq_gaussian(omega1, omega2),
                          frobenius_dist_sq(omega1.mat(), omega2.mat()), alpha};
}

PrecisionMatrix precision_from_covariance(const SymMatrix& covariance) {
  return PrecisionMatrix(inverse_pd(covariance), DiagMode::Free);
}

}  // namespace fghs
