#include "vne/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "vne/chebyshev.hpp"

namespace vne {

namespace {

constexpr double kOffDiagonalTolerance = 1e-12;
constexpr double kNegativeClamp = 1e-9;
constexpr int kMaxSweeps = 100;

}  // namespace

EigenSystem dense_eigensystem(const SymmetricSparseMatrix& a, std::size_t max_dim) {
  const std::size_t m = a.dim();
  if (m > max_dim) {
    throw OracleSizeError("dense oracle limited to m <= " + std::to_string(max_dim) + " (got " +
                          std::to_string(m) + "); use the stochastic estimator for larger matrices");
  }
  std::vector<double> s(m * m, 0.0);
  for (const auto& t : a.entries()) s[t.row * m + t.col] = t.value;
  std::vector<double> v(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) v[i * m + i] = 1.0;

  const auto off_norm2 = [&] {
    double sum = 0.0;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) sum += 2.0 * s[p * m + q] * s[p * m + q];
    return sum;
  };
  double fro2 = 0.0;
  for (double x : s) fro2 += x * x;
  const double target2 = kOffDiagonalTolerance * kOffDiagonalTolerance * fro2;

  int sweep = 0;
  for (; sweep < kMaxSweeps && off_norm2() > target2; ++sweep) {
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = s[p * m + q];
        if (apq == 0.0) continue;
        const double app = s[p * m + p];
        const double aqq = s[q * m + q];
        // Rotation angle annihilating s(p,q); t = tan(theta), smaller root.
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double skp = s[k * m + p];
          const double skq = s[k * m + q];
          s[k * m + p] = c * skp - sn * skq;
          s[k * m + q] = sn * skp + c * skq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double spk = s[p * m + k];
          const double sqk = s[q * m + k];
          s[p * m + k] = c * spk - sn * sqk;
          s[q * m + k] = sn * spk + c * sqk;
        }
        s[p * m + q] = 0.0;
        s[q * m + p] = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          const double vkp = v[k * m + p];
          const double vkq = v[k * m + q];
          v[k * m + p] = c * vkp - sn * vkq;
          v[k * m + q] = sn * vkp + c * vkq;
        }
      }
    }
  }
  if (off_norm2() > target2) {
    throw std::runtime_error("Jacobi diagonalization did not converge in " +
                             std::to_string(kMaxSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return s[x * m + x] < s[y * m + y]; });

  EigenSystem out;
  out.dim = m;
  out.eigenvalues.resize(m);
  out.vectors.resize(m * m);
  for (std::size_t j = 0; j < m; ++j) {
    out.eigenvalues[j] = s[order[j] * m + order[j]];
    for (std::size_t r = 0; r < m; ++r) out.vectors[r * m + j] = v[r * m + order[j]];
  }
  return out;
}

Spectrum dense_spectrum(const SymmetricSparseMatrix& a, std::size_t max_dim) {
  return {dense_eigensystem(a, max_dim).eigenvalues};
}

void require_psd(const Spectrum& spectrum) {
  double scale = 0.0;
  for (double l : spectrum.eigenvalues) scale = std::max(scale, std::abs(l));
  for (double l : spectrum.eigenvalues) {
    if (l < -kNegativeClamp * scale) {
      throw NotPsdError("matrix is not positive semidefinite: eigenvalue " + std::to_string(l));
    }
  }
}

double exact_entropy(const Spectrum& spectrum) {
  require_psd(spectrum);
  double sum = 0.0;
  for (double l : spectrum.eigenvalues) sum += entropy_function(std::max(l, 0.0));
  return -sum;
}

double fem_exact_entropy(std::size_t m) {
  if (m == 0) throw std::domain_error("fem_exact_entropy requires m >= 1");
  const double denom = 2.0 * static_cast<double>(m) + 2.0;
  double sum = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    const double s = std::sin(static_cast<double>(i) * std::numbers::pi / denom);
    sum += entropy_function(4.0 * s * s);
  }
  return -sum;
}

}  // namespace vne
