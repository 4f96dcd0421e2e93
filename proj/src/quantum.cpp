#include "heyting/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "heyting/divisor_lattice.hpp"

namespace heyting {

InvalidState::InvalidState(std::string invariant, const std::string& detail)
    : std::invalid_argument(invariant + ": " + detail), invariant_(std::move(invariant)) {}

namespace {

void require_divisor(std::uint64_t m, std::uint64_t n) {
  if (m == 0 || n % m != 0) throw NotADivisor(m, n);
}

void require_dense_dim(std::size_t n) {
  if (n == 0 || n > kDenseCap) {
    throw InvalidState("dimension", "dense dimension " + std::to_string(n) + " outside [1, " +
                                        std::to_string(kDenseCap) + "]");
  }
}

}  // namespace

// StateVector

StateVector::StateVector(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw InvalidState("dimension", "empty state vector");
  const double norm = amplitudes_.norm();
  if (!(std::abs(norm - 1.0) <= tolerance::kNorm)) {
    throw InvalidState("norm", "state norm is " + std::to_string(norm));
  }
}

StateVector StateVector::basis(std::size_t n, std::size_t r) {
  if (r >= n) throw InvalidState("dimension", "basis index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
  v[static_cast<Eigen::Index>(r)] = 1.0;
  return StateVector(std::move(v));
}

// DensityMatrix

std::optional<std::string> check_density(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() == 0 || matrix.rows() != matrix.cols()) return "dimension";
  if (!matrix.allFinite()) return "format";
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > tolerance::kHermitian) {
    return "hermitian";
  }
  const Complex tr = matrix.trace();
  if (std::abs(tr.real() - 1.0) > tolerance::kTrace || std::abs(tr.imag()) > tolerance::kTrace) {
    return "trace";
  }
  const Eigen::MatrixXcd herm = (matrix + matrix.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tolerance::kPsd) return "psd";
  return std::nullopt;
}

DensityMatrix DensityMatrix::dense(Eigen::MatrixXcd matrix) {
  require_dense_dim(static_cast<std::size_t>(matrix.rows()));
  if (auto failed = check_density(matrix)) {
    throw InvalidState(*failed, "density matrix fails the " + *failed + " check");
  }
  DensityMatrix rho;
  rho.diag_.resize(static_cast<std::size_t>(matrix.rows()));
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    rho.diag_[static_cast<std::size_t>(r)] = matrix(r, r).real();
  }
  rho.dense_ = std::move(matrix);
  return rho;
}

DensityMatrix DensityMatrix::diagonal(std::vector<double> probabilities) {
  if (probabilities.empty()) throw InvalidState("dimension", "empty diagonal");
  double total = 0.0;
  for (double p : probabilities) {
    if (!std::isfinite(p)) throw InvalidState("format", "non-finite diagonal entry");
    if (p < -tolerance::kPsd) throw InvalidState("psd", "negative diagonal entry");
    total += p;
  }
  if (std::abs(total - 1.0) > tolerance::kTrace) {
    throw InvalidState("trace", "diagonal sums to " + std::to_string(total));
  }
  DensityMatrix rho;
  rho.diag_ = std::move(probabilities);
  return rho;
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  require_dense_dim(psi.dim());
  const auto& a = psi.amplitudes();
  return dense(a * a.adjoint());
}

DensityMatrix DensityMatrix::basis(std::size_t n, std::size_t r) {
  if (r >= n) throw InvalidState("dimension", "basis index out of range");
  std::vector<double> d(n, 0.0);
  d[r] = 1.0;
  return diagonal(std::move(d));
}

Complex DensityMatrix::entry(std::size_t r, std::size_t s) const {
  if (dense_) return (*dense_)(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s));
  return r == s ? Complex(diag_[r], 0.0) : Complex(0.0, 0.0);
}

Eigen::MatrixXcd DensityMatrix::matrix() const {
  if (dense_) return *dense_;
  require_dense_dim(dim());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim()),
                                              static_cast<Eigen::Index>(dim()));
  for (std::size_t r = 0; r < dim(); ++r) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = diag_[r];
  return m;
}

// Mask

std::size_t Mask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<std::size_t> Mask::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(i);
  }
  return out;
}

Mask Mask::operator&(const Mask& other) const {
  Mask out(size());
  for (std::size_t i = 0; i < size(); ++i) out.bits_[i] = bits_[i] && other.bits_[i];
  return out;
}

Mask Mask::operator|(const Mask& other) const {
  Mask out(size());
  for (std::size_t i = 0; i < size(); ++i) out.bits_[i] = bits_[i] || other.bits_[i];
  return out;
}

Mask Mask::operator-(const Mask& other) const {
  Mask out(size());
  for (std::size_t i = 0; i < size(); ++i) out.bits_[i] = bits_[i] && !other.bits_[i];
  return out;
}

// Projectors

Mask subsystem_mask(std::uint64_t n, std::uint64_t m) {
  require_divisor(m, n);
  Mask mask(n);
  const std::uint64_t d = n / m;
  for (std::uint64_t r = 0; r < m; ++r) mask.set(r * d);
  return mask;
}

Mask sector_mask(std::uint64_t n, std::uint64_t m) {
  require_divisor(m, n);
  Mask mask(n);
  const std::uint64_t d = n / m;
  for (std::uint64_t s = 0; s < m; ++s) {
    if (std::gcd(s, m) == 1) mask.set(s * d);
  }
  return mask;
}

ProjectorSpec make_projector(ProjectorKind kind, std::uint64_t n, std::uint64_t m1,
                             std::uint64_t m2) {
  ProjectorSpec spec{n, kind, m1, m2, {}};
  switch (kind) {
    case ProjectorKind::subsystem:
      spec.mask = subsystem_mask(n, m1);
      break;
    case ProjectorKind::subsystem_tilde:
      spec.mask = subsystem_mask(n, m1);
      spec.mask.set(0, false);
      break;
    case ProjectorKind::sector:
      spec.mask = sector_mask(n, m1);
      break;
    case ProjectorKind::superposition:
      spec.mask = subsystem_mask(n, m1) | subsystem_mask(n, m2);
      break;
    case ProjectorKind::disjunction:
      require_divisor(m1, n);
      require_divisor(m2, n);
      spec.mask = subsystem_mask(n, std::lcm(m1, m2)) -
                  (subsystem_mask(n, m1) | subsystem_mask(n, m2));
      break;
  }
  return spec;
}

double MeasurementOperator::probability_true(const DensityMatrix& rho) const {
  return trace_with(projector.mask, rho);
}

double MeasurementOperator::expectation(const DensityMatrix& rho) const {
  const double p = probability_true(rho);
  return eigen_true * p + eigen_false * (1.0 - p);
}

Eigen::MatrixXcd MeasurementOperator::matrix() const {
  require_dense_dim(projector.dim);
  const auto n = static_cast<Eigen::Index>(projector.dim);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    m(r, r) = projector.mask[static_cast<std::size_t>(r)] ? eigen_true : eigen_false;
  }
  return m;
}

// Fourier

Eigen::MatrixXcd fourier_matrix(std::size_t n) {
  require_dense_dim(n);
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd f(nn, nn);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      // Reduce rs mod n before taking the angle to keep it small.
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((r * s) % n) /
                           static_cast<double>(n);
      f(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) = std::polar(scale, angle);
    }
  }
  return f;
}

StateVector apply_fourier(const StateVector& psi) {
  return StateVector(fourier_matrix(psi.dim()) * psi.amplitudes());
}

Eigen::VectorXcd momentum_amplitudes(const StateVector& psi) {
  return fourier_matrix(psi.dim()).adjoint() * psi.amplitudes();
}

// Embeddings

StateVector embed(const StateVector& psi, std::size_t k) {
  const std::size_t m = psi.dim();
  require_divisor(m, k);
  const std::size_t d = k / m;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(k));
  for (std::size_t r = 0; r < m; ++r) {
    out[static_cast<Eigen::Index>(d * r)] = psi.amplitudes()[static_cast<Eigen::Index>(r)];
  }
  return StateVector(std::move(out));
}

DensityMatrix embed(const DensityMatrix& rho, std::size_t k) {
  const std::size_t m = rho.dim();
  require_divisor(m, k);
  const std::size_t d = k / m;
  DensityMatrix out;
  out.diag_.assign(k, 0.0);
  for (std::size_t r = 0; r < m; ++r) out.diag_[d * r] = rho.diag_[r];
  if (rho.dense_) {
    require_dense_dim(k);
    const auto kk = static_cast<Eigen::Index>(k);
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(kk, kk);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t s = 0; s < m; ++s) {
        big(static_cast<Eigen::Index>(d * r), static_cast<Eigen::Index>(d * s)) =
            (*rho.dense_)(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s));
      }
    }
    out.dense_ = std::move(big);
  }
  return out;
}

// Probabilities

double trace_with(const Mask& mask, const DensityMatrix& rho) {
  if (mask.size() != rho.dim()) {
    throw InvalidState("dimension", "mask and state dimensions differ");
  }
  double total = 0.0;
  for (std::size_t r = 0; r < mask.size(); ++r) {
    if (mask[r]) total += rho.diag()[r];
  }
  return total;
}

double tau(std::uint64_t m, const DensityMatrix& rho) {
  const std::uint64_t n = rho.dim();
  require_divisor(m, n);
  const std::uint64_t d = n / m;
  const auto& diag = rho.diag();
  double total = 0.0;
  for (std::uint64_t r = 0; r < m; ++r) total += diag[r * d];
  return total;
}

double tau_tilde(std::uint64_t m, const DensityMatrix& rho) { return tau(m, rho) - tau(1, rho); }

double sigma(std::uint64_t m1, std::uint64_t m2, const DensityMatrix& rho) {
  return trace_with(make_projector(ProjectorKind::disjunction, rho.dim(), m1, m2).mask, rho);
}

double sigma_from_tau(std::uint64_t m1, std::uint64_t m2, const DensityMatrix& rho) {
  return tau(std::lcm(m1, m2), rho) - tau(m1, rho) - tau(m2, rho) + tau(std::gcd(m1, m2), rho);
}

std::vector<double> tau_batch(std::uint64_t m, std::span<const DensityMatrix> states) {
  std::vector<double> out(states.size());
  const auto count = static_cast<std::ptrdiff_t>(states.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = tau(m, states[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<double> tau_batch_serial(std::uint64_t m, std::span<const DensityMatrix> states) {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& rho : states) out.push_back(tau(m, rho));
  return out;
}

std::vector<Sector> sector_decomposition(std::uint64_t n) {
  auto modulus = Modulus::make(n);
  std::vector<Sector> out;
  for (std::uint64_t m : modulus->divisors()) {
    out.push_back({m, sector_mask(n, m).indices()});
  }
  return out;
}

// Random states

namespace {

Eigen::MatrixXcd gaussian_matrix(std::size_t n, std::size_t rank, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(rank));
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

DensityMatrix ginibre_density(std::size_t n, std::size_t rank, std::mt19937_64& rng) {
  require_dense_dim(n);
  if (rank == 0) throw std::invalid_argument("ginibre rank must be positive");
  const Eigen::MatrixXcd g = gaussian_matrix(n, rank, rng);
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()).eval() / 2.0;
  return DensityMatrix::dense(std::move(rho));
}

std::vector<double> ginibre_diagonal(std::size_t n, std::size_t rank, std::mt19937_64& rng) {
  if (n == 0 || rank == 0) throw std::invalid_argument("ginibre dimensions must be positive");
  const Eigen::MatrixXcd g = gaussian_matrix(n, rank, rng);
  std::vector<double> diag(n);
  double total = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    diag[r] = g.row(static_cast<Eigen::Index>(r)).squaredNorm();
    total += diag[r];
  }
  for (double& x : diag) x /= total;
  return diag;
}

// JSON

namespace {

std::vector<double> real_array(const nlohmann::json& j, const char* key) {
  if (!j.is_array()) throw InvalidState("format", std::string("'") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw InvalidState("format", std::string("'") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::size_t read_dim(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidState("format", "expected a JSON object");
  if (!j.contains("n") || !j.at("n").is_number_unsigned() || j.at("n").get<std::uint64_t>() == 0) {
    throw InvalidState("format", "'n' must be a positive integer");
  }
  return j.at("n").get<std::size_t>();
}

}  // namespace

DensityMatrix density_from_json(const nlohmann::json& j) {
  const std::size_t n = read_dim(j);
  if (j.contains("diag")) {
    auto diag = real_array(j.at("diag"), "diag");
    if (diag.size() != n) throw InvalidState("dimension", "'diag' length differs from n");
    return DensityMatrix::diagonal(std::move(diag));
  }
  if (!j.contains("re") || !j.contains("im")) {
    throw InvalidState("format", "expected 'diag' or both 're' and 'im'");
  }
  require_dense_dim(n);
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (!re.is_array() || !im.is_array() || re.size() != n || im.size() != n) {
    throw InvalidState("dimension", "'re' and 'im' must have n rows");
  }
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd m(nn, nn);
  for (std::size_t r = 0; r < n; ++r) {
    const auto re_row = real_array(re[r], "re");
    const auto im_row = real_array(im[r], "im");
    if (re_row.size() != n || im_row.size() != n) {
      throw InvalidState("dimension", "row " + std::to_string(r) + " does not have n entries");
    }
    for (std::size_t s = 0; s < n; ++s) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) = Complex(re_row[s], im_row[s]);
    }
  }
  return DensityMatrix::dense(std::move(m));
}

DensityMatrix load_density(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open density file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidState("format", "'" + path + "' is not valid JSON: " + e.what());
  }
  return density_from_json(j);
}

StateVector state_from_json(const nlohmann::json& j) {
  const std::size_t n = read_dim(j);
  if (!j.contains("re") || !j.contains("im")) {
    throw InvalidState("format", "state needs 're' and 'im'");
  }
  const auto re = real_array(j.at("re"), "re");
  const auto im = real_array(j.at("im"), "im");
  if (re.size() != n || im.size() != n) {
    throw InvalidState("dimension", "'re' and 'im' must have n entries");
  }
  Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) v[static_cast<Eigen::Index>(r)] = Complex(re[r], im[r]);
  return StateVector(std::move(v));
}

nlohmann::json to_json(const DensityMatrix& rho) {
  nlohmann::json j;
  j["n"] = rho.dim();
  if (rho.is_diagonal()) {
    j["diag"] = rho.diag();
    return j;
  }
  const Eigen::MatrixXcd m = rho.matrix();
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (Eigen::Index s = 0; s < m.cols(); ++s) {
      re_row.push_back(m(r, s).real());
      im_row.push_back(m(r, s).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

}  // namespace heyting
