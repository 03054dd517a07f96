#pragma once

// Plain-text matrix formats shared by the CLI.
//
// Square symmetric matrices: a line holding p, then p rows of p
// space-separated values printed with 17 significant digits. Anything after
// the p-th row is ignored by the reader, which is where estimate output puts
// its `key = value` metadata.
//
// Data matrices: a line holding "n p", then n rows of p values.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fghs/matcore.hpp"

namespace fghs {

inline constexpr double kSymmetryLoadTol = 1e-9;

void write_sym_matrix(std::ostream& os, const SymMatrix& m);
SymMatrix read_sym_matrix(std::istream& is);

void save_sym_matrix(const std::string& path, const SymMatrix& m,
                     const std::vector<std::pair<std::string, std::string>>& metadata = {});
SymMatrix load_sym_matrix(const std::string& path);

void write_data_matrix(std::ostream& os, const Matrix& y);
Matrix read_data_matrix(std::istream& is);
void save_data_matrix(const std::string& path, const Matrix& y);
Matrix load_data_matrix(const std::string& path);

/// `%.17g` rendering used by every text output.
std::string format_double(double v);

}  // namespace fghs
