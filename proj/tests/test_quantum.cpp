#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>

#include "doctest.h"
#include "heyting/divisor_lattice.hpp"
#include "heyting/quantum.hpp"
#include "oracles.hpp"

using namespace heyting;

namespace {

using Indices = std::vector<std::size_t>;

Indices mask_of(ProjectorKind kind, std::uint64_t n, std::uint64_t m1, std::uint64_t m2 = 0) {
  return make_projector(kind, n, m1, m2).mask.indices();
}

DensityMatrix random_density(std::size_t n, std::mt19937_64& rng) {
  return ginibre_density(n, n, rng);
}

// Direct O(n^2) DFT from the definition, no shared code with the library.
Eigen::VectorXcd dft_adjoint(const Eigen::VectorXcd& psi) {
  const auto n = psi.size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(r * s) / static_cast<double>(n);
      out[s] += std::polar(1.0, angle) * psi[r];
    }
    out[s] /= std::sqrt(static_cast<double>(n));
  }
  return out;
}

}  // namespace

TEST_SUITE("quantum") {
  TEST_CASE("state validation") {
    CHECK_NOTHROW(StateVector::basis(4, 3));
    Eigen::VectorXcd v(2);
    v << 1.0, 1.0;
    try {
      StateVector s(v);
      FAIL("accepted an unnormalized state");
    } catch (const InvalidState& e) {
      CHECK(e.invariant() == "norm");
    }
    CHECK_THROWS_AS(DensityMatrix::diagonal({0.5, 0.6}), InvalidState);
    CHECK_THROWS_AS(DensityMatrix::diagonal({1.5, -0.5}), InvalidState);
    Eigen::MatrixXcd h(2, 2);
    h << 0.5, Complex(0, 0.1), Complex(0, 0.1), 0.5;
    CHECK(check_density(h).value_or("") == "hermitian");
    Eigen::MatrixXcd p(2, 2);
    p << 0.5, 0.9, 0.9, 0.5;
    CHECK(check_density(p).value_or("") == "psd");
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(2, 2);
    CHECK(check_density(t).value_or("") == "trace");
    CHECK_FALSE(check_density(t / 2.0).has_value());
  }

  TEST_CASE("Fourier matrix") {
    CHECK(fourier_matrix(1)(0, 0) == Complex(1, 0));
    const auto f2 = fourier_matrix(2);
    const double h = 1 / std::sqrt(2.0);
    CHECK(std::abs(f2(0, 0) - h) < 1e-15);
    CHECK(std::abs(f2(1, 1) + h) < 1e-15);
    for (std::size_t n : {2, 6, 12, 64}) {
      const auto f = fourier_matrix(n);
      const auto id = Eigen::MatrixXcd::Identity(f.rows(), f.cols());
      CHECK((f * f.adjoint() - id).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("momentum amplitudes follow the direct DFT") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(7);
    for (auto& x : v) x = Complex(g(rng), g(rng));
    v.normalize();
    const StateVector psi(v);
    CHECK((momentum_amplitudes(psi) - dft_adjoint(v)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((apply_fourier(psi).amplitudes() - fourier_matrix(7) * v).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("embedding of states") {
    Eigen::VectorXcd v(2);
    v << Complex(0.6, 0), Complex(0, 0.8);
    const StateVector e = embed(StateVector(v), 6);
    CHECK(e.dim() == 6);
    CHECK(e.amplitudes()[0] == Complex(0.6, 0));
    CHECK(e.amplitudes()[3] == Complex(0, 0.8));
    CHECK(e.amplitudes().cwiseAbs().sum() == doctest::Approx(1.4));
    CHECK(embed(StateVector(v), 2).amplitudes() == v);
    CHECK_THROWS_AS(embed(StateVector(v), 9), std::invalid_argument);
    // Compatibility A_sk o A_ms = A_mk for (2, 6, 18).
    CHECK(embed(embed(StateVector(v), 6), 18).amplitudes() == embed(StateVector(v), 18).amplitudes());
  }

  TEST_CASE("embedding of density matrices") {
    const auto d = embed(DensityMatrix::diagonal({0.3, 0.7}), 6);
    CHECK(d.diag() == std::vector<double>{0.3, 0, 0, 0.7, 0, 0});
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(3);
    for (auto& x : v) x = Complex(g(rng), g(rng));
    v.normalize();
    const StateVector psi(v);
    const auto lhs = embed(DensityMatrix::pure(psi), 12).matrix();
    const Eigen::VectorXcd big = embed(psi, 12).amplitudes();
    CHECK((lhs - big * big.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    const auto rho = random_density(4, rng);
    const auto up = embed(rho, 12);
    CHECK_FALSE(check_density(up.matrix()).has_value());
    CHECK(std::accumulate(up.diag().begin(), up.diag().end(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }

  // With |P_k;s> = F_k|X_k;s>, embedding b_r |P_m;r> gives c_s = d^{-1/2} b_{s mod m}.
  TEST_CASE("momentum form of the embedding") {
    const std::size_t m = 3, k = 12, d = k / m;
    std::mt19937_64 rng(56);
    std::normal_distribution<double> g;
    Eigen::VectorXcd b(m);
    for (auto& x : b) x = Complex(g(rng), g(rng));
    b.normalize();
    const StateVector psi(fourier_matrix(m) * b);
    const Eigen::VectorXcd c = momentum_amplitudes(embed(psi, k));
    for (std::size_t s = 0; s < k; ++s) {
      CHECK(std::abs(c[static_cast<Eigen::Index>(s)] -
                     b[static_cast<Eigen::Index>(s % m)] / std::sqrt(static_cast<double>(d))) <
            1e-10);
    }
  }

  TEST_CASE("H(m) is invariant under its own Fourier transform acting through the embedding") {
    // F_m on H(m), carried into H(n), keeps embedded states inside H(n/m * Z).
    const std::size_t n = 12;
    for (std::size_t m : {2, 3, 4, 6, 12}) {
      for (std::size_t r = 0; r < m; ++r) {
        const auto out = embed(apply_fourier(StateVector::basis(m, r)), n).amplitudes();
        const auto inside = subsystem_mask(n, m);
        double outside = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (!inside[i]) outside += std::norm(out[static_cast<Eigen::Index>(i)]);
        }
        CHECK(outside == 0.0);
      }
    }
  }

  TEST_CASE("span[H(2) u H(3)] is not invariant under F_6") {
    const auto t = make_projector(ProjectorKind::superposition, 6, 2, 3).mask;
    const auto out = apply_fourier(StateVector::basis(6, 2)).amplitudes();
    double leaked = 0;
    for (std::size_t i = 0; i < 6; ++i) {
      if (!t[i]) leaked += std::norm(out[static_cast<Eigen::Index>(i)]);
    }
    CHECK(leaked > 0.3);
  }

  TEST_CASE("projectors at n = 6") {
    CHECK(mask_of(ProjectorKind::subsystem_tilde, 6, 2) == Indices{3});
    CHECK(mask_of(ProjectorKind::subsystem_tilde, 6, 3) == Indices{2, 4});
    CHECK(mask_of(ProjectorKind::subsystem_tilde, 6, 6) == Indices{1, 2, 3, 4, 5});
    CHECK(mask_of(ProjectorKind::superposition, 6, 2, 3) == Indices{0, 2, 3, 4});
    CHECK(mask_of(ProjectorKind::disjunction, 6, 2, 3) == Indices{1, 5});
    CHECK(mask_of(ProjectorKind::sector, 6, 6) == Indices{1, 5});
    CHECK_THROWS_AS(make_projector(ProjectorKind::subsystem, 6, 4), NotADivisor);
  }

  TEST_CASE("projectors at n = 900") {
    auto multiples = [](std::size_t step) {
      Indices v;
      for (std::size_t i = 0; i < 900; i += step) v.push_back(i);
      return v;
    };
    CHECK(mask_of(ProjectorKind::subsystem, 900, 10) == multiples(90));
    CHECK(mask_of(ProjectorKind::subsystem, 900, 75) == multiples(12));
    CHECK(mask_of(ProjectorKind::subsystem, 900, 36) == multiples(25));
    CHECK(mask_of(ProjectorKind::disjunction, 900, 10, 900).empty());
    CHECK(mask_of(ProjectorKind::disjunction, 900, 1, 10).empty());
  }

  TEST_CASE("projector dimensions and identities") {
    for (std::uint64_t n = 1; n <= 60; ++n) {
      const auto ds = oracle::divisors(n);
      for (auto a : ds) {
        CHECK(subsystem_mask(n, a).count() == a);
        CHECK(make_projector(ProjectorKind::subsystem_tilde, n, a).mask.count() == a - 1);
        CHECK(sector_mask(n, a).count() == oracle::totient(a));
        const auto not_a = neg(DivisorElement(Modulus::make(n), a)).value();
        CHECK((subsystem_mask(n, a) & subsystem_mask(n, not_a)) == subsystem_mask(n, 1));
        for (auto b : ds) {
          const auto g = std::gcd(a, b), l = std::lcm(a, b);
          const auto t = make_projector(ProjectorKind::superposition, n, a, b).mask;
          const auto s = make_projector(ProjectorKind::disjunction, n, a, b).mask;
          CHECK(t.count() == a + b - g);
          CHECK(s.count() == l + g - a - b);
          CHECK((subsystem_mask(n, a) & subsystem_mask(n, b)) == subsystem_mask(n, g));
          CHECK((s & t).none());
          CHECK((s | t) == subsystem_mask(n, l));
          CHECK(s.none() == (a % b == 0 || b % a == 0));
          for (auto r : ds) {
            if (a % r == 0 || b % r == 0) CHECK((subsystem_mask(n, r) & s).none());
          }
        }
      }
    }
  }

  TEST_CASE("sector decomposition") {
    const auto s6 = sector_decomposition(6);
    REQUIRE(s6.size() == 4);
    CHECK(s6[0].indices == Indices{0});
    CHECK(s6[1].indices == Indices{3});
    CHECK(s6[2].indices == Indices{2, 4});
    CHECK(s6[3].indices == Indices{1, 5});
    std::vector<std::size_t> sizes;
    for (const auto& s : sector_decomposition(12)) sizes.push_back(s.indices.size());
    CHECK(sizes == std::vector<std::size_t>{1, 1, 2, 2, 2, 4});
    const auto s7 = sector_decomposition(7);
    CHECK(s7.back().indices == Indices{1, 2, 3, 4, 5, 6});
  }

  TEST_CASE("probabilities") {
    std::mt19937_64 rng(5);
    for (std::size_t n : {6, 12, 30}) {
      const auto rho = random_density(n, rng);
      CHECK(tau(n, rho) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(tau_tilde(1, rho) == 0.0);
      for (auto a : oracle::divisors(n)) {
        for (auto b : oracle::divisors(n)) {
          CHECK(sigma(a, b, rho) == doctest::Approx(sigma_from_tau(a, b, rho)).epsilon(1e-12));
          CHECK(sigma(a, b, rho) >= -1e-12);
          if (b % a == 0) {
            CHECK(tau(a, rho) <= tau(b, rho) + 1e-12);
            CHECK(sigma(a, b, rho) == 0.0);
          }
        }
      }
    }
    CHECK(sigma(2, 3, DensityMatrix::basis(6, 1)) == 1.0);
    CHECK(sigma(2, 3, DensityMatrix::diagonal({0.25, 0, 0.25, 0.25, 0.25, 0})) == 0.0);
    CHECK_THROWS_AS(tau(7, DensityMatrix::basis(6, 0)), NotADivisor);
  }

  TEST_CASE("probabilities are universal under embedding") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
      const auto rho = random_density(6, rng);
      CHECK(std::abs(tau(2, rho) - tau(2, embed(rho, 12))) < 1e-12);
    }
  }

  TEST_CASE("measurement operators") {
    const MeasurementOperator op{make_projector(ProjectorKind::subsystem, 6, 2), 3.0, -1.0};
    const auto rho = DensityMatrix::diagonal({0.5, 0, 0, 0.25, 0, 0.25});
    CHECK(op.probability_true(rho) == doctest::Approx(0.75));
    CHECK(op.expectation(rho) == doctest::Approx(0.75 * 3 - 0.25));
    const auto mat = op.matrix();
    CHECK(mat(0, 0) == Complex(3, 0));
    CHECK(mat(1, 1) == Complex(-1, 0));
  }

  TEST_CASE("batch tau matches serial evaluation") {
    std::mt19937_64 rng(9);
    std::vector<DensityMatrix> states;
    for (int i = 0; i < 64; ++i) states.push_back(random_density(12, rng));
    CHECK(tau_batch(4, states) == tau_batch_serial(4, states));
  }

  TEST_CASE("Ginibre diagonal matches the full construction") {
    std::mt19937_64 a(42), b(42);
    const auto full = ginibre_density(10, 4, a);
    const auto diag = ginibre_diagonal(10, 4, b);
    for (std::size_t i = 0; i < 10; ++i) CHECK(std::abs(full.diag()[i] - diag[i]) < 1e-14);
    CHECK_FALSE(check_density(full.matrix()).has_value());
  }

  TEST_CASE("density files") {
    auto invariant_of = [](const char* text) -> std::string {
      try {
        density_from_json(nlohmann::json::parse(text));
      } catch (const InvalidState& e) {
        return e.invariant();
      }
      return "";
    };
    CHECK(invariant_of(R"({"n": 2, "diag": [0.5, 0.5]})").empty());
    CHECK(invariant_of(R"({"n": 2, "re": [[0.5, 0], [0, 0.5]], "im": [[0, 0], [0, 0]]})").empty());
    CHECK(invariant_of(R"({"n": 2, "diag": [0.5, 0.6]})") == "trace");
    CHECK(invariant_of(R"({"n": 3, "diag": [0.5, 0.5]})") == "dimension");
    CHECK(invariant_of(R"({"n": 2, "re": [[0.5, 0.9], [0.9, 0.5]], "im": [[0, 0], [0, 0]]})") ==
          "psd");
    CHECK(invariant_of(R"({"n": 2, "re": [[0.5, 0], [0, 0.5]], "im": [[0, 0.1], [0.1, 0]]})") ==
          "hermitian");
    CHECK(invariant_of(R"({"n": 2})") == "format");
    CHECK(invariant_of(R"([1, 2])") == "format");
    const auto rho = density_from_json(to_json(DensityMatrix::diagonal({0.25, 0.75})));
    CHECK(rho.diag() == std::vector<double>{0.25, 0.75});
    CHECK_THROWS_AS(load_density("/nonexistent/rho.json"), std::runtime_error);
  }
}
