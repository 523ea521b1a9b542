#include "vne/spectral_bound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "vne/rademacher.hpp"

namespace vne {

std::string_view to_string(BoundMethod method) noexcept {
  switch (method) {
    case BoundMethod::gershgorin:
      return "gershgorin";
    case BoundMethod::power_iteration:
      return "power-iteration";
    case BoundMethod::user_supplied:
      return "user-supplied";
  }
  return "unknown";
}

SpectralBound gershgorin_upper_bound(const SymmetricSparseMatrix& a) {
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  double best = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    double center = 0.0;
    double radius = 0.0;
    for (std::size_t k = offsets[r]; k < offsets[r + 1]; ++k) {
      if (cols[k] == r) {
        center = vals[k];
      } else {
        radius += std::abs(vals[k]);
      }
    }
    best = std::max(best, center + radius);
  }
  return {.lambda_max_upper = best, .method = BoundMethod::gershgorin};
}

SpectralBound power_iteration_bound(const SymmetricSparseMatrix& a,
                                    const PowerIterationOptions& options) {
  if (options.max_iters < 1) throw std::invalid_argument("power iteration: max_iters must be >= 1");
  if (!(options.safety >= 1.0)) throw std::invalid_argument("power iteration: safety must be >= 1");
  if (!(options.rel_tol > 0.0)) throw std::invalid_argument("power iteration: rel_tol must be > 0");

  SpectralBound bound{.lambda_max_upper = 0.0,
                      .method = BoundMethod::power_iteration,
                      .safety = options.safety,
                      .rel_tol = options.rel_tol};

  const std::size_t m = a.dim();
  std::vector<double> x = RademacherSampler{options.seed}.sample(m, 1);
  const double inv_norm = 1.0 / std::sqrt(static_cast<double>(m));
  for (double& xi : x) xi *= inv_norm;
  std::vector<double> y(m);

  double rayleigh = 0.0;
  for (int it = 1; it <= options.max_iters; ++it) {
    matvec(a, x, y);
    const double next = dot(x, y);  // x has unit norm
    const double norm = std::sqrt(dot(y, y));
    bound.iterations = it;
    if (norm == 0.0) {
      rayleigh = 0.0;
      break;
    }
    const bool converged = it > 1 && std::abs(next - rayleigh) < options.rel_tol * std::abs(next);
    rayleigh = next;
    if (converged) break;
    for (std::size_t i = 0; i < m; ++i) x[i] = y[i] / norm;
  }
  bound.lambda_max_upper = options.safety * std::max(rayleigh, 0.0);
  return bound;
}

}  // namespace vne
