#pragma once

/**
 * @file quantum.hpp
 * @brief Finite quantum systems with positions and momenta in Z(n).
 *
 * States live in H(n) with the position basis |X_n;r>, r = 0..n-1. For m | n
 * the subsystem space H(m) sits inside H(n) through r -> (n/m) r. Every
 * projector used here (subsystems, sectors, superposition and disjunction
 * spaces) is diagonal in the position basis, so projectors are stored as
 * boolean masks and Tr[rho P] is a masked sum of the diagonal of rho.
 */

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

namespace heyting {

using Complex = std::complex<double>;

namespace tolerance {
inline constexpr double kNorm = 1e-10;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPsd = 1e-8;
}  // namespace tolerance

/// Largest dimension for dense matrices (Fourier, dense density matrices).
inline constexpr std::size_t kDenseCap = 4096;

/// A state or density matrix failed validation; invariant() names the check
/// ("dimension", "norm", "hermitian", "trace", "psd", "format").
class InvalidState : public std::invalid_argument {
 public:
  InvalidState(std::string invariant, const std::string& detail);
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

class StateVector {
 public:
  /// Throws InvalidState("norm") unless the Euclidean norm is 1 within kNorm.
  explicit StateVector(Eigen::VectorXcd amplitudes);

  static StateVector basis(std::size_t n, std::size_t r);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

 private:
  Eigen::VectorXcd amplitudes_;
};

/// Density matrix in the position basis, stored densely or, for states that
/// are diagonal in that basis, as the diagonal alone.
class DensityMatrix {
 public:
  /// Validates hermiticity, trace and positivity. n <= kDenseCap.
  static DensityMatrix dense(Eigen::MatrixXcd matrix);
  /// Validates nonnegativity and unit trace.
  static DensityMatrix diagonal(std::vector<double> probabilities);
  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix basis(std::size_t n, std::size_t r);

  std::size_t dim() const { return diag_.size(); }
  bool is_diagonal() const { return !dense_.has_value(); }
  /// Real parts of the diagonal, rho(r, r).
  const std::vector<double>& diag() const { return diag_; }
  Complex entry(std::size_t r, std::size_t s) const;
  /// Dense form (materialized for diagonal states; n <= kDenseCap).
  Eigen::MatrixXcd matrix() const;

 private:
  friend DensityMatrix embed(const DensityMatrix& rho, std::size_t k);

  DensityMatrix() = default;

  std::vector<double> diag_;
  std::optional<Eigen::MatrixXcd> dense_;
};

/// Checks the density-matrix invariants; returns the name of the first one
/// that fails, or nothing.
std::optional<std::string> check_density(const Eigen::MatrixXcd& matrix);

/// A 0/1 diagonal over position indices.
class Mask {
 public:
  Mask() = default;
  explicit Mask(std::size_t n) : bits_(n, false) {}

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool value = true) { bits_[i] = value; }

  std::size_t count() const;
  std::vector<std::size_t> indices() const;
  bool none() const { return count() == 0; }

  Mask operator&(const Mask& other) const;
  Mask operator|(const Mask& other) const;
  /// this AND NOT other
  Mask operator-(const Mask& other) const;

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  std::vector<bool> bits_;
};

enum class ProjectorKind {
  subsystem,        ///< P(m): onto H(m)
  subsystem_tilde,  ///< P~(m): H(m) without the lowest state |X;0>
  sector,           ///< P_n(m): onto the phi(m)-dimensional sector h(m)
  superposition,    ///< T(m1,m2): onto span[H(m1) u H(m2)]
  disjunction,      ///< S(m1,m2): H(m1 v m2) minus T(m1,m2)
};

struct ProjectorSpec {
  std::size_t dim = 0;
  ProjectorKind kind = ProjectorKind::subsystem;
  std::uint64_t m1 = 0;
  std::uint64_t m2 = 0;  ///< only for superposition / disjunction
  Mask mask;
};

/// Throws NotADivisor when a parameter does not divide n.
ProjectorSpec make_projector(ProjectorKind kind, std::uint64_t n, std::uint64_t m1,
                             std::uint64_t m2 = 0);

Mask subsystem_mask(std::uint64_t n, std::uint64_t m);
Mask sector_mask(std::uint64_t n, std::uint64_t m);

/// Binary-outcome measurement eigen_true * P + eigen_false * (1 - P). The
/// eigenvalues are labels; probabilities come from the projector alone.
struct MeasurementOperator {
  ProjectorSpec projector;
  double eigen_true = 1.0;
  double eigen_false = 0.0;

  double probability_true(const DensityMatrix& rho) const;
  double expectation(const DensityMatrix& rho) const;
  Eigen::MatrixXcd matrix() const;
};

/// F_n[r][s] = n^{-1/2} exp(2 pi i rs / n).
Eigen::MatrixXcd fourier_matrix(std::size_t n);
StateVector apply_fourier(const StateVector& psi);
/// Amplitudes in the momentum basis |P_n;r> = F_n |X_n;r>, i.e. F_n^dagger psi.
Eigen::VectorXcd momentum_amplitudes(const StateVector& psi);

/// The embedding H(m) -> H(k), |X_m;r> -> |X_k;(k/m) r>. Throws unless m | k.
StateVector embed(const StateVector& psi, std::size_t k);
/// The induced map on density matrices, (r,s) -> (dr, ds).
DensityMatrix embed(const DensityMatrix& rho, std::size_t k);

/// Tr[rho mask].
double trace_with(const Mask& mask, const DensityMatrix& rho);
/// tau(m|rho) = Tr[rho P(m)]; m must divide rho.dim().
double tau(std::uint64_t m, const DensityMatrix& rho);
/// tau(m|rho) - tau(1|rho).
double tau_tilde(std::uint64_t m, const DensityMatrix& rho);
/// Tr[rho S(m1,m2)] from the disjunction projector.
double sigma(std::uint64_t m1, std::uint64_t m2, const DensityMatrix& rho);
/// tau(m1 v m2) - tau(m1) - tau(m2) + tau(m1 ^ m2).
double sigma_from_tau(std::uint64_t m1, std::uint64_t m2, const DensityMatrix& rho);

/// tau(m|rho) for a batch of states (OpenMP over states).
std::vector<double> tau_batch(std::uint64_t m, std::span<const DensityMatrix> states);
/// Single-threaded reference for tau_batch.
std::vector<double> tau_batch_serial(std::uint64_t m, std::span<const DensityMatrix> states);

struct Sector {
  std::uint64_t m;
  std::vector<std::size_t> indices;  ///< s (n/m) with gcd(s, m) = 1, ascending
};

/// One sector per divisor of n, in ascending order of m.
std::vector<Sector> sector_decomposition(std::uint64_t n);

/// Ginibre state G G^dagger / Tr with G an n x rank complex Gaussian matrix.
DensityMatrix ginibre_density(std::size_t n, std::size_t rank, std::mt19937_64& rng);
/// Diagonal of the same construction without forming G G^dagger; draws the
/// same variates in the same order as ginibre_density.
std::vector<double> ginibre_diagonal(std::size_t n, std::size_t rank, std::mt19937_64& rng);

/// {"n": N, "diag": [...]} or {"n": N, "re": [[...]], "im": [[...]]}.
DensityMatrix density_from_json(const nlohmann::json& j);
DensityMatrix load_density(const std::string& path);
/// {"n": N, "re": [...], "im": [...]}.
StateVector state_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DensityMatrix& rho);

}  // namespace heyting
