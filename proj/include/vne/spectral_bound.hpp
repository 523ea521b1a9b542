#pragma once

#include <cstdint>
#include <string_view>

#include "vne/sparse_matrix.hpp"

namespace vne {

enum class BoundMethod { gershgorin, power_iteration, user_supplied };

std::string_view to_string(BoundMethod method) noexcept;

/// Upper bound on the largest eigenvalue of a PSD matrix.
///
/// Gershgorin bounds are certified. Power-iteration bounds are a Rayleigh
/// quotient times a safety factor and may still undershoot when the iteration
/// has not converged.
struct SpectralBound {
  double lambda_max_upper = 0.0;
  BoundMethod method = BoundMethod::gershgorin;
  // Only meaningful for power iteration.
  double safety = 1.0;
  double rel_tol = 0.0;
  int iterations = 0;
};

/// max_i (A_ii + sum_{j != i} |A_ij|), clamped below at 0.
SpectralBound gershgorin_upper_bound(const SymmetricSparseMatrix& a);

struct PowerIterationOptions {
  int max_iters = 1000;
  double rel_tol = 1e-8;
  double safety = 1.05;
  std::uint64_t seed = 1;
};

/// Seeded power iteration; returns safety * final Rayleigh quotient.
SpectralBound power_iteration_bound(const SymmetricSparseMatrix& a,
                                    const PowerIterationOptions& options = {});

}  // namespace vne
