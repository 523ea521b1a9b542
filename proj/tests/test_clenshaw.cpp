#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "support/oracles.hpp"
#include "vne/chebyshev.hpp"
#include "vne/clenshaw.hpp"
#include "vne/generators.hpp"
#include "vne/oracle.hpp"
#include "vne/rademacher.hpp"

using namespace vne;

namespace {

// gamma0 * sum_j p_n(lambda_j / gamma0) (u_j^T v)^2, with p_n summed directly.
double spectral_quadratic_form(const EigenSystem& sys, const std::vector<double>& v,
                               const ChebyshevExpansion& p, double gamma0) {
  double q = 0.0;
  for (std::size_t j = 0; j < sys.dim; ++j) {
    double proj = 0.0;
    for (std::size_t r = 0; r < sys.dim; ++r) proj += sys.vector(r, j) * v[r];
    const double x = std::clamp(sys.eigenvalues[j] / gamma0, 0.0, p.x0());
    q += gamma0 * testing::chebyshev_direct_sum(p.coeffs(), p.x0(), x) * proj * proj;
  }
  return q;
}

std::vector<double> ones(std::size_t m) { return std::vector<double>(m, 1.0); }

}  // namespace

TEST_CASE("scaled identity") {
  for (double c : {0.0, 0.3, 1.0}) {
    for (int n : {1, 2, 5, 12}) {
      const std::size_t m = 9;
      const auto a = SymmetricSparseMatrix::scaled_identity(m, c);
      const auto p = coefficients(n, 1.0);
      const auto v = RademacherSampler(4).sample(m, 1);
      const double q = quadratic_form(a, v, p, 1.0);
      CHECK(q == doctest::Approx(static_cast<double>(m) * testing::chebyshev_direct_sum(p.coeffs(), 1.0, c))
                     .epsilon(1e-12));
    }
  }
}

TEST_CASE("zero matrix gives m gamma0 p_n(0)") {
  const std::size_t m = 6;
  const auto a = SymmetricSparseMatrix::from_triplets(m, {}, TripletPattern::full);
  const auto p = coefficients(7, 2.0);
  const double q = quadratic_form(a, ones(m), p, 3.0);
  CHECK(q == doctest::Approx(6.0 * 3.0 * testing::chebyshev_direct_sum(p.coeffs(), 2.0, 0.0)).epsilon(1e-12));
}

TEST_CASE("diagonal matrix") {
  const std::vector<double> d{0.1, 0.5, 0.9, 0.0, 1.9};
  const auto a = SymmetricSparseMatrix::diagonal(d);
  const double gamma0 = 2.0;
  const auto p = coefficients(10, 1.0);
  std::vector<double> v{1, -1, -1, 1, -1};
  double want = 0.0;
  for (double x : d) want += gamma0 * testing::chebyshev_direct_sum(p.coeffs(), 1.0, x / gamma0);
  CHECK(quadratic_form(a, v, p, gamma0) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("dense PSD matrices against the eigendecomposition") {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const std::size_t m = 10 + 7 * seed;
    for (double x0 : {0.5, 1.0, 4.0}) {
      const double gamma0 = 1.0 + u(gen);
      std::vector<double> spectrum(m);
      for (double& s : spectrum) s = x0 * gamma0 * u(gen);
      const auto a = random_psd(spectrum, seed);
      const auto sys = dense_eigensystem(a);
      const RademacherSampler sampler(seed);
      for (int n : {1, 3, 8, 30}) {
        const auto p = coefficients(n, x0);
        for (std::size_t idx = 1; idx <= 3; ++idx) {
          const auto v = sampler.sample(m, idx);
          const double got = quadratic_form(a, v, p, gamma0);
          const double want = spectral_quadratic_form(sys, v, p, gamma0);
          CHECK(std::abs(got - want) <= 1e-8 * std::max(1.0, std::abs(want)));
        }
      }
    }
  }
}

TEST_CASE("stiffness matrix against the eigendecomposition") {
  for (std::size_t m : {10, 50}) {
    const auto a = fem_matrix(m);
    const auto sys = dense_eigensystem(a);
    const auto p = coefficients(6, 1.0);
    const auto v = RademacherSampler(1).sample(m, 1);
    CHECK(quadratic_form(a, v, p, 4.0) ==
          doctest::Approx(spectral_quadratic_form(sys, v, p, 4.0)).epsilon(1e-10));
  }
}

TEST_CASE("result stays in the envelope widened by the truncation slack") {
  const std::size_t m = 12;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (double x0 : {0.3, 1.0, 2.5}) {
      const double gamma0 = 1.25;
      std::vector<double> spectrum(m);
      for (std::size_t i = 0; i < m; ++i) spectrum[i] = x0 * gamma0 * std::pow(static_cast<double>(i) / (m - 1), 2.0);
      const auto a = random_psd(spectrum, seed);
      const auto env = quadratic_form_envelope(m, x0, gamma0);
      for (int n : {1, 2, 4, 9}) {
        const auto p = coefficients(n, x0);
        const double slack = static_cast<double>(m) * gamma0 * truncation_error_bound(n, x0);
        const RademacherSampler sampler(seed * 101);
        for (std::size_t idx = 1; idx <= 20; ++idx) {
          const double q = quadratic_form(a, sampler.sample(m, idx), p, gamma0);
          CHECK(q >= env.lower - slack - 1e-10);
          CHECK(q <= env.upper + slack + 1e-10);
        }
      }
    }
  }
}

TEST_CASE("deterministic and workspace reuse is clean") {
  const auto a = fem_matrix(40);
  const auto p = coefficients(5, 1.0);
  const RademacherSampler sampler(9);
  ClenshawWorkspace ws;
  const double first = quadratic_form(a, sampler.sample(40, 1), p, 4.0, ws);
  quadratic_form(a, sampler.sample(40, 2), p, 4.0, ws);
  CHECK(quadratic_form(a, sampler.sample(40, 1), p, 4.0, ws) == first);
  CHECK(quadratic_form(a, sampler.sample(40, 1), p, 4.0) == first);
}

TEST_CASE("contract violations") {
  const auto a = fem_matrix(4);
  const auto p = coefficients(3, 1.0);
  CHECK_THROWS_AS(quadratic_form(a, ones(3), p, 4.0), DimensionError);
  CHECK_THROWS_AS(quadratic_form(a, ones(4), p, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(quadratic_form(a, ones(4), p, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(quadratic_form(a, ones(4), coefficients(0, 1.0), 4.0), std::invalid_argument);
  CHECK_THROWS_AS(quadratic_form(a, std::vector<double>{1, 0.5, 1, 1}, p, 4.0), std::invalid_argument);
}
