#pragma once

// Test-only reference computations. Nothing here calls into the library's
// numerical routines except RngStream for reproducible inputs.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "fghs/matcore.hpp"
#include "fghs/rngdist.hpp"

namespace oracle {

using fghs::Matrix;
using fghs::Vector;

/// Cyclic Jacobi eigenvalue iteration; ascending eigenvalues.
inline Vector jacobi_eigenvalues(Matrix a, double tol = 1e-15, int max_sweeps = 100) {
  const Eigen::Index n = a.rows();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off <= tol * tol * a.squaredNorm()) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  Vector ev = a.diagonal();
  std::sort(ev.data(), ev.data() + ev.size());
  return ev;
}

/// Adaptive Simpson quadrature on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13, int depth = 50) {
  struct Rec {
    const std::function<double(double)>& f;
    double run(double a, double b, double fa, double fm, double fb, double whole, double tol,
               int depth) const {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
      return run(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             run(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  } rec{f};
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return rec.run(a, b, fa, fm, fb, whole, tol, depth);
}

/// Integral over [lo, hi] split into `pieces` panels, each integrated adaptively.
inline double integrate_panels(const std::function<double(double)>& f, double lo, double hi,
                               int pieces, double tol = 1e-14) {
  double total = 0.0;
  const double h = (hi - lo) / pieces;
  for (int k = 0; k < pieces; ++k) total += integrate(f, lo + k * h, lo + (k + 1) * h, tol / pieces);
  return total;
}

/// One-sample Kolmogorov-Smirnov statistic against a CDF.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - f)});
  }
  return d;
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

/// Random symmetric matrix with eigenvalues drawn uniformly from [lo, hi].
inline Matrix random_spd(fghs::RngStream& rng, Eigen::Index p, double lo, double hi) {
  Matrix g(p, p);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j) g(i, j) = rng.normal();
  const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
  Vector ev(p);
  for (Eigen::Index i = 0; i < p; ++i) ev(i) = lo + (hi - lo) * rng.uniform();
  Matrix m = q * ev.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

/// Random symmetric matrix with standard normal entries.
inline Matrix random_symmetric(fghs::RngStream& rng, Eigen::Index p) {
  Matrix g(p, p);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j) g(i, j) = rng.normal();
  return 0.5 * (g + g.transpose());
}

inline fghs::PrecisionMatrix free_precision(const Matrix& m) {
  return fghs::PrecisionMatrix(fghs::SymMatrix::from_upper(m), fghs::DiagMode::Free);
}

/// Zero-mean Gaussian log density with precision Ω via explicit inverse
/// and determinant (no Cholesky).
inline double gaussian_log_density(const Vector& x, const Matrix& omega) {
  const double d = static_cast<double>(x.size());
  return 0.5 * std::log(omega.determinant()) - 0.5 * d * std::log(2.0 * M_PI) -
         0.5 * x.dot(omega * x);
}

/// Direct entrywise sum of squared differences.
inline double frobenius_sq_loop(const Matrix& a, const Matrix& b) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) s += (a(i, j) - b(i, j)) * (a(i, j) - b(i, j));
  return s;
}

}  // namespace oracle
