#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "vne/sparse_matrix.hpp"

namespace vne {

/// Malformed or unsupported Matrix Market input. `line()` is 1-based, 0 when
/// the problem is not tied to a line (e.g. missing file).
class MatrixMarketError : public std::runtime_error {
 public:
  MatrixMarketError(const std::string& what, std::size_t line);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Reads `coordinate real|integer symmetric|general`. General input must be
/// numerically symmetric.
SymmetricSparseMatrix read_matrix_market(std::istream& in);
SymmetricSparseMatrix read_matrix_market(const std::filesystem::path& path);

/// Writes `coordinate real symmetric` (lower triangle, 1-based, 17 significant
/// digits).
void write_matrix_market(const SymmetricSparseMatrix& a, std::ostream& out);
void write_matrix_market(const SymmetricSparseMatrix& a, const std::filesystem::path& path);

}  // namespace vne
