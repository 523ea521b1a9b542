#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vne {

/// One stored entry (row, col, value), 0-based.
struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Which part of the pattern a triplet list describes.
enum class TripletPattern {
  full,   // both triangles given explicitly; checked for numerical symmetry
  lower,  // only i >= j given; mirrored on construction
};

/// Thrown when an operation receives vectors or matrices of incompatible size.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Real symmetric matrix in CSR form with both triangles stored.
///
/// Immutable after construction. Positive semidefiniteness is an input
/// contract of the entropy estimator and is not checked here; use the dense
/// oracle for small matrices when it needs verifying.
class SymmetricSparseMatrix {
 public:
  SymmetricSparseMatrix() = default;

  /// Builds from triplets. Duplicate (row, col) pairs are summed. Entries that
  /// are exactly zero after summation are dropped.
  static SymmetricSparseMatrix from_triplets(std::size_t dim,
                                             std::span<const Triplet> triplets,
                                             TripletPattern pattern);

  /// Diagonal matrix diag(d).
  static SymmetricSparseMatrix diagonal(std::span<const double> d);

  /// c * I_m.
  static SymmetricSparseMatrix scaled_identity(std::size_t dim, double c);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_offsets() const noexcept { return row_offsets_; }
  std::span<const std::size_t> col_indices() const noexcept { return col_indices_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Stored value at (row, col), 0 when absent.
  double at(std::size_t row, std::size_t col) const;

  /// Dot product of stored row `row` with x, summed left to right.
  double row_dot(std::size_t row, std::span<const double> x) const noexcept {
    double sum = 0.0;
    for (std::size_t k = row_offsets_[row]; k < row_offsets_[row + 1]; ++k) {
      sum += values_[k] * x[col_indices_[k]];
    }
    return sum;
  }

  /// All stored entries in row-major order (both triangles).
  std::vector<Triplet> entries() const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

/// y = A x. Throws DimensionError if x.size() != A.dim().
std::vector<double> matvec(const SymmetricSparseMatrix& a, std::span<const double> x);

/// Writes A x into y without allocating.
void matvec(const SymmetricSparseMatrix& a, std::span<const double> x, std::span<double> y);

/// Sum of the stored diagonal entries.
double trace(const SymmetricSparseMatrix& a) noexcept;

/// Left-to-right dot product.
double dot(std::span<const double> x, std::span<const double> y);

}  // namespace vne
