#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "vne/rademacher.hpp"
#include "vne/sparse_matrix.hpp"
#include "vne/spectral_bound.hpp"

namespace vne {

/// Spectral scaling: the estimator approximates x log x on [0, x0] and needs
/// sigma(A) within [0, x0 * gamma0].
struct ScalingParams {
  double x0 = 1.0;
  double gamma0 = 1.0;
  BoundMethod provenance = BoundMethod::user_supplied;
};

/// Scaling with x0 given (default 1) and gamma0 = bound / x0.
/// Throws std::domain_error when the bound is not positive.
ScalingParams scaling_from_bound(const SpectralBound& bound, double x0 = 1.0);

enum class EstimateMode { fixed, adaptive };

std::string_view to_string(EstimateMode mode) noexcept;

struct EntropyEstimate {
  double value = 0.0;         // entropy estimate, nats
  double tau = 0.0;           // error tolerance at confidence p
  double confidence = 0.95;   // p
  std::size_t samples_used = 0;
  int degree = 0;
  double delta = 0.0;         // Hoeffding range of the per-sample terms
  double xi_min = 0.0;
  double xi_max = 0.0;
  double trace = 0.0;         // trace of the matrix whose entropy is reported
  ScalingParams scaling;      // scaling of that same matrix
  std::uint64_t seed = 0;
  bool capped = false;        // the max_samples cap bound the adaptive loop
  bool zero_trace = false;    // zero matrix short-circuit, value 0
  bool normalized = false;    // value is the entropy of A / tr(A)
  EstimateMode mode = EstimateMode::adaptive;
  std::size_t dimension = 0;
  std::size_t max_samples = 0;
};

/// Hutchinson estimate (1/N) sum_i w_i^T A w_i over samples 1..N.
double hutchinson_trace(const SymmetricSparseMatrix& a, const RademacherSampler& sampler,
                        std::size_t samples);

/// Number of samples balancing the two error terms of the tolerance:
/// ceil(2 n^2 (n+1)^2 delta^2 log(2/(1-p)) / (m x0 gamma0)^2), at least 1.
std::size_t sample_count(double delta, int degree, double confidence, std::size_t m, double x0,
                         double gamma0);

/// Pre-ceiling value of sample_count().
double sample_count_real(double delta, int degree, double confidence, std::size_t m, double x0,
                         double gamma0);

/// tau = m x0 gamma0 / (2n(n+1)) + delta sqrt(log(2/(1-p)) / (2N)).
double error_tolerance(double delta, int degree, std::size_t samples, double confidence,
                       std::size_t m, double x0, double gamma0);

/// Called once per adaptive iteration with the 1-based sample index and the
/// sample count required after that sample.
using AdaptiveObserver = std::function<void(std::size_t index, std::size_t required)>;

struct EstimatorOptions {
  int degree = 3;
  double confidence = 0.95;
  std::size_t max_samples = 10000;  // adaptive cap, must be >= 8
  unsigned threads = 1;             // results do not depend on this
  AdaptiveObserver observer;        // adaptive mode only
};

/// Fixed number of samples. Throws std::domain_error on invalid parameters.
EntropyEstimate estimate_fixed(const SymmetricSparseMatrix& a, int degree, std::size_t samples,
                               double confidence, const ScalingParams& scaling,
                               const RademacherSampler& sampler, unsigned threads = 1);

/// Adaptive sampling: after every sample the required count is recomputed from
/// the running spread of the per-sample terms, capped at options.max_samples.
EntropyEstimate estimate_adaptive(const SymmetricSparseMatrix& a, const EstimatorOptions& options,
                                  const ScalingParams& scaling, const RademacherSampler& sampler);

/// Adaptive (or fixed when `fixed_samples` is set) estimate of the entropy of A,
/// or of A / tr(A) when `normalize` is true. `scaling` always refers to A
/// itself; the normalized run reuses products with A.
EntropyEstimate entropy_with_normalization(const SymmetricSparseMatrix& a,
                                           const EstimatorOptions& options,
                                           const ScalingParams& scaling,
                                           const RademacherSampler& sampler, bool normalize,
                                           std::optional<std::size_t> fixed_samples = {});

}  // namespace vne
