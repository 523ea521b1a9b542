#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vne/chebyshev.hpp"
#include "vne/sparse_matrix.hpp"

namespace vne {

/// Recurrence state y_k, y_{k+1}, y_{k+2} of the matrix Clenshaw sweep.
/// Buffers rotate by swap; nothing is copied between steps.
struct ClenshawWorkspace {
  explicit ClenshawWorkspace(std::size_t m = 0) : y_cur(m), y_next(m), y_after(m) {}

  void reset(std::size_t m);

  std::vector<double> y_cur;
  std::vector<double> y_next;
  std::vector<double> y_after;
};

/// gamma0 * v^T p_n(A / gamma0) v using n products with A.
///
/// v must be a sign vector (entries exactly +-1) of length A.dim(), and the
/// expansion degree must be >= 1. The caller guarantees that the spectrum of A
/// lies in [0, x0 * gamma0]; it is not checked. Throws DimensionError or
/// std::invalid_argument on contract violations.
double quadratic_form(const SymmetricSparseMatrix& a, std::span<const double> v,
                      const ChebyshevExpansion& expansion, double gamma0,
                      ClenshawWorkspace& workspace);

double quadratic_form(const SymmetricSparseMatrix& a, std::span<const double> v,
                      const ChebyshevExpansion& expansion, double gamma0);

}  // namespace vne
