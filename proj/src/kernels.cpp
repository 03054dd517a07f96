#include "fghs/kernels.hpp"

#include <vector>

namespace fghs::kernels {

namespace {

double column_dot(const Matrix& y, Eigen::Index a, Eigen::Index b) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < y.rows(); ++k) s += y(k, a) * y(k, b);
  return s;
}

double column_frob(const Matrix& a, const Matrix& b, Eigen::Index j) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double d = a(i, j) - b(i, j);
    s += d * d;
  }
  return s;
}

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("frobenius_sq: shapes differ");
}

}  // namespace

Matrix scatter_serial(const Matrix& y) {
  const Eigen::Index p = y.cols();
  Matrix s(p, p);
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index i = 0; i <= j; ++i) s(i, j) = s(j, i) = column_dot(y, i, j);
  return s;
}

Matrix scatter_parallel(const Matrix& y) {
  const Eigen::Index p = y.cols();
  Matrix s(p, p);
#pragma omp parallel for schedule(dynamic, 4)
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index i = 0; i <= j; ++i) s(i, j) = s(j, i) = column_dot(y, i, j);
  return s;
}

double frobenius_sq_serial(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  double total = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) total += column_frob(a, b, j);
  return total;
}

double frobenius_sq_parallel(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  std::vector<double> partial(static_cast<std::size_t>(a.cols()));
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    partial[static_cast<std::size_t>(j)] = column_frob(a, b, j);
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

}  // namespace fghs::kernels
