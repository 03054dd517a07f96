#pragma once

// Data-parallel kernels. Each OpenMP kernel keeps its serial reference next to
// it; the pair must agree bit-for-bit (tests/test_kernels.cpp) because the
// parallel versions only split independent output entries across threads and
// keep every per-entry summation order unchanged.

#include "fghs/matcore.hpp"

namespace fghs::kernels {

/// Scatter matrix Yᵀ Y of an n x p data matrix.
Matrix scatter_serial(const Matrix& y);
Matrix scatter_parallel(const Matrix& y);

/// Σ_ij (a_ij - b_ij)², summed column by column.
double frobenius_sq_serial(const Matrix& a, const Matrix& b);
double frobenius_sq_parallel(const Matrix& a, const Matrix& b);

}  // namespace fghs::kernels
