#pragma once

// Ground-truth precision matrices and data generators for the simulation
// settings, plus the declarative `key = value` scenario file format.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include "fghs/matcore.hpp"
#include "fghs/rngdist.hpp"

namespace fghs {

struct SparseRandom {
  std::size_t s = 0;
  double magnitude_lo = 0.2;
  double magnitude_hi = 0.6;
};

struct DenseEquicorr {
  double rho = 0.2;
};

struct FromFile {
  std::string path;
};

using TruthSpec = std::variant<SparseRandom, DenseEquicorr, FromFile>;

struct GaussianLaw {};
struct StudentTLaw {
  double df = 3.0;
};
using DataLaw = std::variant<GaussianLaw, StudentTLaw>;

struct Scenario {
  std::string name;
  Eigen::Index p = 0;
  Eigen::Index n = 0;
  TruthSpec truth;
  DataLaw law;
  std::size_t replicates = 50;
  std::uint64_t master_seed = 20240601;

  /// Throws ConfigError on inconsistent fields.
  void validate() const;
};

/// Smallest eigenvalue guaranteed for sparse truths.
inline constexpr double kSparseMinEigenvalue = 0.05;

/// Random stream assignment under a scenario's master seed.
inline constexpr std::uint64_t kTruthStream = 0;
inline constexpr std::uint64_t data_stream(std::uint64_t replicate) { return 2 * replicate + 1; }
inline constexpr std::uint64_t chain_stream(std::uint64_t replicate) { return 2 * replicate + 2; }

/// Unit diagonal; exactly s upper-triangle nonzeros on a uniform random
/// support with magnitudes U(lo, hi) and random signs, all off-diagonals then
/// scaled by the largest factor in (0, 1] that keeps λ_min ≥ 0.05.
PrecisionMatrix make_sparse_truth(Eigen::Index p, std::size_t s, double magnitude_lo,
                                  double magnitude_hi, RngStream& rng);

/// Inverse of the equicorrelation covariance (1−ρ)I + ρ11ᵀ, Free diagonal.
PrecisionMatrix make_dense_truth(Eigen::Index p, double rho);

/// Equicorrelation covariance itself.
SymMatrix equicorrelation(Eigen::Index p, double rho);

/// Builds the scenario's truth; random truths use (master_seed, kTruthStream).
PrecisionMatrix make_truth(const Scenario& scn);

/// n i.i.d. rows from the scenario law with precision `truth`, drawn from
/// stream data_stream(replicate) under master_seed.
Matrix generate_data(const Scenario& scn, const PrecisionMatrix& truth, std::size_t replicate,
                     std::uint64_t master_seed);
Matrix generate_data(const Scenario& scn, std::size_t replicate, std::uint64_t master_seed);

Scenario parse_scenario(std::istream& is);
Scenario load_scenario(const std::string& path);
void write_scenario(std::ostream& os, const Scenario& scn);

/// The four reference settings run by reproduce-table1.
Scenario table1_dense(bool student_t);
Scenario table1_sparse(bool student_t);

std::string law_name(const DataLaw& law);

}  // namespace fghs
