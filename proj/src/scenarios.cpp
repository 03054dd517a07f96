#include "fghs/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <vector>

#include "fghs/matrix_io.hpp"

namespace fghs {

void Scenario::validate() const {
  if (name.empty()) throw ConfigError("scenario: name is required");
  if (p < 2) throw ConfigError("scenario '" + name + "': p must be at least 2");
  if (n < 1) throw ConfigError("scenario '" + name + "': n must be at least 1");
  if (replicates < 1) throw ConfigError("scenario '" + name + "': replicates must be positive");
  if (const auto* sp = std::get_if<SparseRandom>(&truth)) {
    const auto pairs = static_cast<std::size_t>(p * (p - 1) / 2);
    if (sp->s > pairs) throw ConfigError("scenario '" + name + "': s exceeds p(p-1)/2");
    if (!(sp->magnitude_lo > 0.0 && sp->magnitude_lo <= sp->magnitude_hi))
      throw ConfigError("scenario '" + name + "': need 0 < magnitude_lo <= magnitude_hi");
  } else if (const auto* de = std::get_if<DenseEquicorr>(&truth)) {
    const double lo = -1.0 / static_cast<double>(p - 1);
    if (!(de->rho > lo && de->rho < 1.0))
      throw ConfigError("scenario '" + name + "': rho outside (-1/(p-1), 1)");
  } else if (std::get<FromFile>(truth).path.empty()) {
    throw ConfigError("scenario '" + name + "': truth_path is required for truth = file");
  }
  if (const auto* t = std::get_if<StudentTLaw>(&law); t && !(t->df > 0.0))
    throw ConfigError("scenario '" + name + "': df must be positive");
}

PrecisionMatrix make_sparse_truth(Eigen::Index p, std::size_t s, double magnitude_lo,
                                  double magnitude_hi, RngStream& rng) {
  const auto pairs = static_cast<std::size_t>(p * (p - 1) / 2);
  if (p < 2) throw ParameterDomain("make_sparse_truth: p must be at least 2");
  if (s > pairs) throw ParameterDomain("make_sparse_truth: s exceeds p(p-1)/2");
  if (!(magnitude_lo > 0.0 && magnitude_lo <= magnitude_hi))
    throw ParameterDomain("make_sparse_truth: need 0 < lo <= hi");

  // Partial Fisher-Yates over packed pair indices.
  std::vector<std::size_t> order(pairs);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t k = 0; k < s; ++k) {
    const auto pick = k + static_cast<std::size_t>(rng.uniform_below(pairs - k));
    std::swap(order[k], order[pick]);
  }
  std::vector<std::pair<Eigen::Index, Eigen::Index>> coords;
  coords.reserve(pairs);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = i + 1; j < p; ++j) coords.emplace_back(i, j);

  Matrix off = Matrix::Zero(p, p);
  for (std::size_t k = 0; k < s; ++k) {
    const auto [i, j] = coords[order[k]];
    const double mag = magnitude_lo + (magnitude_hi - magnitude_lo) * rng.uniform();
    const double v = rng.uniform() < 0.5 ? -mag : mag;
    off(i, j) = off(j, i) = v;
  }

  // λ_min(I + cO) = 1 + c λ_min(O), so the admissible factor is explicit.
  double factor = 1.0;
  if (s > 0) {
    const double lmin = min_eigenvalue(SymMatrix::from_upper(off));
    const double room = 1.0 - kSparseMinEigenvalue;
    if (lmin < -room) factor = room / (-lmin) * (1.0 - 1e-12);
  }
  Matrix omega = Matrix::Identity(p, p) + factor * off;
  omega.diagonal().setOnes();
  SymMatrix sym = SymMatrix::from_upper(omega);
  if (min_eigenvalue(sym) < kSparseMinEigenvalue)
    throw Error(ErrorKind::InfeasibleSparsity, "make_sparse_truth: rescaling failed");
  return PrecisionMatrix(std::move(sym), DiagMode::FixedUnit);
}

SymMatrix equicorrelation(Eigen::Index p, double rho) {
  if (p < 2) throw ParameterDomain("equicorrelation: p must be at least 2");
  if (!(rho > -1.0 / static_cast<double>(p - 1) && rho < 1.0))
    throw ParameterDomain("equicorrelation: rho outside (-1/(p-1), 1)");
  Matrix sigma = Matrix::Constant(p, p, rho);
  sigma.diagonal().setOnes();
  return SymMatrix::from_upper(sigma);
}

PrecisionMatrix make_dense_truth(Eigen::Index p, double rho) {
  equicorrelation(p, rho);  // domain checks
  const double pd = static_cast<double>(p);
  const double a = 1.0 / (1.0 - rho);
  const double b = rho / ((1.0 - rho) * (1.0 + (pd - 1.0) * rho));
  Matrix omega = Matrix::Constant(p, p, -b);
  omega.diagonal().setConstant(a - b);
  return PrecisionMatrix(SymMatrix::from_upper(omega), DiagMode::Free);
}

PrecisionMatrix make_truth(const Scenario& scn) {
  scn.validate();
  if (const auto* sp = std::get_if<SparseRandom>(&scn.truth)) {
    RngStream rng(scn.master_seed, kTruthStream);
    return make_sparse_truth(scn.p, sp->s, sp->magnitude_lo, sp->magnitude_hi, rng);
  }
  if (const auto* de = std::get_if<DenseEquicorr>(&scn.truth)) return make_dense_truth(scn.p, de->rho);
  SymMatrix m = load_sym_matrix(std::get<FromFile>(scn.truth).path);
  if (m.dim() != scn.p) throw ConfigError("scenario '" + scn.name + "': truth file has wrong p");
  if (!is_positive_definite(m)) throw NotPositiveDefinite("truth file is not positive definite");
  bool unit = true;
  for (Eigen::Index i = 0; i < m.dim(); ++i) unit = unit && m(i, i) == 1.0;
  return PrecisionMatrix(std::move(m), unit ? DiagMode::FixedUnit : DiagMode::Free);
}

Matrix generate_data(const Scenario& scn, const PrecisionMatrix& truth, std::size_t replicate,
                     std::uint64_t master_seed) {
  if (truth.dim() != scn.p) throw DimensionMismatch("generate_data: truth does not match p");
  const Matrix l = cholesky(truth.mat());
  RngStream rng(master_seed, data_stream(replicate));
  Matrix y(scn.n, scn.p);
  const auto* t = std::get_if<StudentTLaw>(&scn.law);
  for (Eigen::Index r = 0; r < scn.n; ++r) {
    y.row(r) = t ? draw_mvt_from_precision_factor(rng, l, t->df).transpose()
                 : draw_mvn_from_precision_factor(rng, l).transpose();
  }
  return y;
}

Matrix generate_data(const Scenario& scn, std::size_t replicate, std::uint64_t master_seed) {
  return generate_data(scn, make_truth(scn), replicate, master_seed);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream is(value);
  T out{};
  if (!(is >> out) || !(is >> std::ws).eof())
    throw ConfigError("scenario: bad value '" + value + "' for key '" + key + "'");
  return out;
}

}  // namespace

Scenario parse_scenario(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("scenario line " + std::to_string(lineno) + ": expected 'key = value'");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  static const char* known[] = {"name", "p",  "n",            "truth",        "s",
                                "rho",  "magnitude_lo", "magnitude_hi", "law", "df",
                                "replicates", "master_seed", "truth_path"};
  for (const auto& [k, v] : kv) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* x) { return k == x; }) ==
        std::end(known))
      throw ConfigError("scenario: unknown key '" + k + "'");
  }
  auto get = [&](const std::string& k) -> const std::string* {
    auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto require = [&](const std::string& k) -> const std::string& {
    if (const auto* v = get(k)) return *v;
    throw ConfigError("scenario: missing key '" + k + "'");
  };

  Scenario scn;
  scn.name = require("name");
  scn.p = parse_number<long long>("p", require("p"));
  scn.n = parse_number<long long>("n", require("n"));
  const std::string& truth = require("truth");
  if (truth == "sparse") {
    SparseRandom sp;
    sp.s = parse_number<std::size_t>("s", require("s"));
    if (const auto* v = get("magnitude_lo")) sp.magnitude_lo = parse_number<double>("magnitude_lo", *v);
    if (const auto* v = get("magnitude_hi")) sp.magnitude_hi = parse_number<double>("magnitude_hi", *v);
    scn.truth = sp;
  } else if (truth == "dense") {
    scn.truth = DenseEquicorr{parse_number<double>("rho", require("rho"))};
  } else if (truth == "file") {
    scn.truth = FromFile{require("truth_path")};
  } else {
    throw ConfigError("scenario: truth must be sparse|dense|file, got '" + truth + "'");
  }
  const std::string law = get("law") ? *get("law") : "gaussian";
  if (law == "gaussian") {
    scn.law = GaussianLaw{};
  } else if (law == "t" || law == "student_t" || law == "mvt") {
    StudentTLaw t;
    if (const auto* v = get("df")) t.df = parse_number<double>("df", *v);
    scn.law = t;
  } else {
    throw ConfigError("scenario: law must be gaussian|student_t, got '" + law + "'");
  }
  if (const auto* v = get("replicates")) scn.replicates = parse_number<std::size_t>("replicates", *v);
  if (const auto* v = get("master_seed")) scn.master_seed = parse_number<std::uint64_t>("master_seed", *v);
  scn.validate();
  return scn;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open scenario file '" + path + "'");
  return parse_scenario(is);
}

void write_scenario(std::ostream& os, const Scenario& scn) {
  os << "name = " << scn.name << "\np = " << scn.p << "\nn = " << scn.n << '\n';
  if (const auto* sp = std::get_if<SparseRandom>(&scn.truth)) {
    os << "truth = sparse\ns = " << sp->s << "\nmagnitude_lo = " << format_double(sp->magnitude_lo)
       << "\nmagnitude_hi = " << format_double(sp->magnitude_hi) << '\n';
  } else if (const auto* de = std::get_if<DenseEquicorr>(&scn.truth)) {
    os << "truth = dense\nrho = " << format_double(de->rho) << '\n';
  } else {
    os << "truth = file\ntruth_path = " << std::get<FromFile>(scn.truth).path << '\n';
  }
  if (const auto* t = std::get_if<StudentTLaw>(&scn.law))
    os << "law = student_t\ndf = " << format_double(t->df) << '\n';
  else
    os << "law = gaussian\n";
  os << "replicates = " << scn.replicates << "\nmaster_seed = " << scn.master_seed << '\n';
}

Scenario table1_dense(bool student_t) {
  Scenario scn;
  scn.name = student_t ? "dense_mvt3" : "dense_gaussian";
  scn.p = 50;
  scn.n = 30;
  scn.truth = DenseEquicorr{0.2};
  scn.law = student_t ? DataLaw{StudentTLaw{3.0}} : DataLaw{GaussianLaw{}};
  return scn;
}

Scenario table1_sparse(bool student_t) {
  Scenario scn;
  scn.name = student_t ? "sparse_mvt3" : "sparse_gaussian";
  scn.p = 100;
  scn.n = 30;
  scn.truth = SparseRandom{86, 0.2, 0.6};
  scn.law = student_t ? DataLaw{StudentTLaw{3.0}} : DataLaw{GaussianLaw{}};
  return scn;
}

std::string law_name(const DataLaw& law) {
  if (const auto* t = std::get_if<StudentTLaw>(&law)) return "student_t(" + format_double(t->df) + ")";
  return "gaussian";
}

}  // namespace fghs
