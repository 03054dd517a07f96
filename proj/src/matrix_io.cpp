#include "fghs/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace fghs {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write_rows(std::ostream& os, const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

Matrix read_rows(std::istream& is, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!(is >> m(i, j)))
        throw FormatError("matrix text: expected " + std::to_string(rows * cols) +
                          " values, input ended at row " + std::to_string(i));
      if (!std::isfinite(m(i, j))) throw FormatError("matrix text: non-finite entry");
    }
  }
  return m;
}

}  // namespace

void write_sym_matrix(std::ostream& os, const SymMatrix& m) {
  os << m.dim() << '\n';
  write_rows(os, m.dense());
}

SymMatrix read_sym_matrix(std::istream& is) {
  long long p = 0;
  if (!(is >> p) || p < 1) throw FormatError("matrix text: bad dimension header");
  return SymMatrix::from_full_checked(read_rows(is, p, p), kSymmetryLoadTol);
}

void save_sym_matrix(const std::string& path, const SymMatrix& m,
                     const std::vector<std::pair<std::string, std::string>>& metadata) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot open '" + path + "' for writing");
  write_sym_matrix(os, m);
  if (!metadata.empty()) {
    os << '\n';
    for (const auto& [k, v] : metadata) os << k << " = " << v << '\n';
  }
}

SymMatrix load_sym_matrix(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open '" + path + "'");
  return read_sym_matrix(is);
}

void write_data_matrix(std::ostream& os, const Matrix& y) {
  os << y.rows() << ' ' << y.cols() << '\n';
  write_rows(os, y);
}

Matrix read_data_matrix(std::istream& is) {
  long long n = 0, p = 0;
  if (!(is >> n >> p) || n < 1 || p < 1) throw FormatError("data text: bad 'n p' header");
  return read_rows(is, n, p);
}

void save_data_matrix(const std::string& path, const Matrix& y) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot open '" + path + "' for writing");
  write_data_matrix(os, y);
}

Matrix load_data_matrix(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open '" + path + "'");
  return read_data_matrix(is);
}

}  // namespace fghs
