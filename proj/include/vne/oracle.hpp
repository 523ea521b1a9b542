#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "vne/sparse_matrix.hpp"

namespace vne {

/// Eigenvalues sorted ascending.
struct Spectrum {
  std::vector<double> eigenvalues;
};

/// Eigenvalues (ascending) with orthonormal eigenvectors; column j of the
/// row-major m x m `vectors` belongs to eigenvalues[j].
struct EigenSystem {
  std::vector<double> eigenvalues;
  std::vector<double> vectors;
  std::size_t dim = 0;

  double vector(std::size_t row, std::size_t j) const { return vectors[row * dim + j]; }
};

/// Thrown when the dense oracle is asked for a matrix larger than its cap.
class OracleSizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Thrown when a spectrum has eigenvalues below -1e-9 * max|lambda|.
class NotPsdError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

constexpr std::size_t kDefaultOracleCap = 2000;

/// Cyclic Jacobi diagonalization of the dense copy of A, iterated until the
/// off-diagonal Frobenius norm is below 1e-12 * ||A||_F.
EigenSystem dense_eigensystem(const SymmetricSparseMatrix& a, std::size_t max_dim = kDefaultOracleCap);

Spectrum dense_spectrum(const SymmetricSparseMatrix& a, std::size_t max_dim = kDefaultOracleCap);

/// -sum L(lambda) in nats. Eigenvalues within the round-off band are clamped to 0.
double exact_entropy(const Spectrum& spectrum);

/// Throws NotPsdError if the spectrum is genuinely indefinite.
void require_psd(const Spectrum& spectrum);

/// Entropy of the m x m tridiagonal (-1, 2, -1) matrix from its closed-form
/// eigenvalues 4 sin^2(i pi / (2m + 2)).
double fem_exact_entropy(std::size_t m);

}  // namespace vne
