#pragma once

// Divergences between zero-mean Gaussians P_k = N(0, Ω_k⁻¹), parameterized by
// precision matrices. All determinants are taken in log space.

#include "fghs/matcore.hpp"

namespace fghs {

/// KL(P1 ‖ P2) = ½ (log det Ω1 − log det Ω2 + tr(Ω1⁻¹ Ω2) − d).
double kl_gaussian(const PrecisionMatrix& omega1, const PrecisionMatrix& omega2);

/// Var_{P1}[log p1/p2] = ½ Σ (1 − d_i)², d_i the eigenvalues of Ω1^{-1/2} Ω2 Ω1^{-1/2}.
double kl_variance_gaussian(const PrecisionMatrix& omega1, const PrecisionMatrix& omega2);

/// D_α(P1, P2) = 1/(α−1) log ∫ p1^α p2^(1−α), α ∈ (0, 1). For Gaussians
///   = [log det(αΩ1 + (1−α)Ω2) − α log det Ω1 − (1−α) log det Ω2] / (2(1−α)).
double renyi_gaussian(const PrecisionMatrix& omega1, const PrecisionMatrix& omega2, double alpha);

/// h² = 1 − ∫ sqrt(p1 p2) = ½ ∫ (√p1 − √p2)².
double hellinger_sq_gaussian(const PrecisionMatrix& omega1, const PrecisionMatrix& omega2);

/// 1 on [1/2, 1), (1−α)/α on (0, 1/2).
double c_alpha(double alpha);

struct DivergenceReport {
  double kl;
  double renyi_alpha;
  double hellinger_sq;
  double frobenius_sq;
  double alpha;
};

DivergenceReport divergence_report(const PrecisionMatrix& omega1, const PrecisionMatrix& omega2,
                                   double alpha);

/// Adapters for covariance-parameterized callers.
PrecisionMatrix precision_from_covariance(const SymMatrix& covariance);

}  // namespace fghs
