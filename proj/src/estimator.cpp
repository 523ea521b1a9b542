#include "vne/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "vne/chebyshev.hpp"
#include "vne/clenshaw.hpp"

namespace vne {

namespace {

void check_confidence(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("confidence p must lie in (0, 1)");
}

void check_degree(int n) {
  if (n < 1) throw std::domain_error("polynomial degree must be >= 1");
}

void check_scaling(const ScalingParams& s) {
  if (!(s.x0 > 0.0) || !(s.gamma0 > 0.0) || !std::isfinite(s.x0) || !std::isfinite(s.gamma0)) {
    throw std::domain_error("scaling requires x0 > 0 and gamma0 > 0");
  }
}

// m x0 gamma0 / (n (n+1)): twice the Chebyshev error contribution.
double delta_floor(std::size_t m, int n, double x0, double gamma0) {
  const double nd = n;
  return static_cast<double>(m) * x0 * gamma0 / (nd * (nd + 1.0));
}

// The matrix under estimation is scale * A; products always go through A.
struct ScaledProblem {
  const SymmetricSparseMatrix& a;
  double scale;
  ScalingParams scaling;  // refers to scale * A
  ChebyshevExpansion expansion;
};

// xi_i = gamma0 w_i^T p_n((scale A) / gamma0) w_i for i in [first, last),
// written to out[i - first]. Each index is independent, so the split across
// threads does not affect values.
void evaluate_samples(const ScaledProblem& problem, const RademacherSampler& sampler,
                      std::uint64_t first, std::uint64_t last, unsigned threads,
                      std::vector<double>& out) {
  const std::size_t count = static_cast<std::size_t>(last - first);
  out.assign(count, 0.0);
  const double gamma_a = problem.scaling.gamma0 / problem.scale;
  const auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> w(problem.a.dim());
    ClenshawWorkspace ws(problem.a.dim());
    for (std::size_t j = begin; j < end; ++j) {
      sampler.fill(first + j, w);
      out[j] = problem.scale * quadratic_form(problem.a, w, problem.expansion, gamma_a, ws);
    }
  };
  const std::size_t nthreads = std::min<std::size_t>(std::max(threads, 1U), count);
  if (nthreads <= 1) {
    work(0, count);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) {
    pool.emplace_back(work, count * t / nthreads, count * (t + 1) / nthreads);
  }
}

EntropyEstimate base_estimate(const ScaledProblem& p, int degree, double confidence,
                              const RademacherSampler& sampler, EstimateMode mode) {
  EntropyEstimate e;
  e.confidence = confidence;
  e.degree = degree;
  e.trace = p.scale * trace(p.a);
  e.scaling = p.scaling;
  e.seed = sampler.seed();
  e.mode = mode;
  e.dimension = p.a.dim();
  return e;
}

void finish(EntropyEstimate& e, double xi_sum) {
  const std::size_t m = e.dimension;
  const double x0 = e.scaling.x0;
  const double g = e.scaling.gamma0;
  const auto n = static_cast<double>(e.samples_used);
  e.value = -xi_sum / n - std::log(g) * e.trace;
  e.delta = e.xi_max - e.xi_min + delta_floor(m, e.degree, x0, g);
  e.tau = error_tolerance(e.delta, e.degree, e.samples_used, e.confidence, m, x0, g);
}

EntropyEstimate run_fixed(const ScaledProblem& p, int degree, std::size_t samples,
                          double confidence, const RademacherSampler& sampler, unsigned threads) {
  auto e = base_estimate(p, degree, confidence, sampler, EstimateMode::fixed);
  e.max_samples = samples;
  std::vector<double> xi;
  evaluate_samples(p, sampler, 1, samples + 1, threads, xi);
  double sum = 0.0;
  e.xi_min = std::numeric_limits<double>::infinity();
  e.xi_max = -std::numeric_limits<double>::infinity();
  for (double x : xi) {
    sum += x;
    e.xi_min = std::min(e.xi_min, x);
    e.xi_max = std::max(e.xi_max, x);
  }
  e.samples_used = samples;
  finish(e, sum);
  return e;
}

EntropyEstimate run_adaptive(const ScaledProblem& p, const EstimatorOptions& options,
                             const RademacherSampler& sampler) {
  auto e = base_estimate(p, options.degree, options.confidence, sampler, EstimateMode::adaptive);
  e.max_samples = options.max_samples;
  const std::size_t m = p.a.dim();
  const double x0 = p.scaling.x0;
  const double g = p.scaling.gamma0;
  const double floor = delta_floor(m, options.degree, x0, g);

  std::size_t i = 0;
  std::size_t required = 1;
  double sum = 0.0;
  double xi_min = std::numeric_limits<double>::infinity();
  double xi_max = -std::numeric_limits<double>::infinity();
  std::vector<double> batch;
  while (i < required) {
    // Evaluate the currently known shortfall (at least one per thread); the
    // reduction below walks it in index order, so surplus values are dropped
    // and the outcome equals the one-at-a-time loop.
    const std::size_t want = std::max<std::size_t>(required - i, std::max(options.threads, 1U));
    evaluate_samples(p, sampler, i + 1, i + 1 + want, options.threads, batch);
    for (double xi : batch) {
      ++i;
      sum += xi;
      xi_min = std::min(xi_min, xi);
      xi_max = std::max(xi_max, xi);
      const double delta = xi_max - xi_min + floor;
      const std::size_t wanted =
          sample_count(delta, options.degree, options.confidence, m, x0, g);
      e.capped = wanted > options.max_samples;
      required = std::min(options.max_samples, wanted);
      if (options.observer) options.observer(i, required);
      if (i >= required) break;
    }
  }
  e.samples_used = i;
  e.xi_min = xi_min;
  e.xi_max = xi_max;
  finish(e, sum);
  return e;
}

EntropyEstimate zero_trace_estimate(const SymmetricSparseMatrix& a, int degree, double confidence,
                                    const ScalingParams& scaling, const RademacherSampler& sampler,
                                    EstimateMode mode) {
  EntropyEstimate e;
  e.confidence = confidence;
  e.degree = degree;
  e.scaling = scaling;
  e.seed = sampler.seed();
  e.mode = mode;
  e.dimension = a.dim();
  e.zero_trace = true;
  return e;
}

}  // namespace

ScalingParams scaling_from_bound(const SpectralBound& bound, double x0) {
  if (!(x0 > 0.0)) throw std::domain_error("x0 must be > 0");
  if (!(bound.lambda_max_upper > 0.0)) {
    throw std::domain_error("spectral bound must be positive to define gamma0");
  }
  return {.x0 = x0, .gamma0 = bound.lambda_max_upper / x0, .provenance = bound.method};
}

std::string_view to_string(EstimateMode mode) noexcept {
  return mode == EstimateMode::fixed ? "fixed" : "adaptive";
}

double hutchinson_trace(const SymmetricSparseMatrix& a, const RademacherSampler& sampler,
                        std::size_t samples) {
  if (samples < 1) throw std::domain_error("hutchinson_trace requires N >= 1");
  std::vector<double> w(a.dim());
  std::vector<double> aw(a.dim());
  double sum = 0.0;
  for (std::size_t i = 1; i <= samples; ++i) {
    sampler.fill(i, w);
    matvec(a, w, aw);
    sum += dot(w, aw);
  }
  return sum / static_cast<double>(samples);
}

double sample_count_real(double delta, int degree, double confidence, std::size_t m, double x0,
                         double gamma0) {
  check_confidence(confidence);
  check_degree(degree);
  if (!(delta > 0.0)) throw std::domain_error("delta must be > 0");
  const double n = degree;
  const double scale = static_cast<double>(m) * x0 * gamma0;
  return 2.0 * n * n * (n + 1.0) * (n + 1.0) * delta * delta *
         std::log(2.0 / (1.0 - confidence)) / (scale * scale);
}

std::size_t sample_count(double delta, int degree, double confidence, std::size_t m, double x0,
                         double gamma0) {
  const double raw = std::ceil(sample_count_real(delta, degree, confidence, m, x0, gamma0));
  if (!(raw < 9.0e18)) return std::numeric_limits<std::size_t>::max();
  return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

double error_tolerance(double delta, int degree, std::size_t samples, double confidence,
                       std::size_t m, double x0, double gamma0) {
  check_confidence(confidence);
  check_degree(degree);
  if (samples < 1) throw std::domain_error("error_tolerance requires N >= 1");
  const double n = degree;
  return static_cast<double>(m) * x0 * gamma0 / (2.0 * n * (n + 1.0)) +
         delta * std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(samples)));
}

EntropyEstimate estimate_fixed(const SymmetricSparseMatrix& a, int degree, std::size_t samples,
                               double confidence, const ScalingParams& scaling,
                               const RademacherSampler& sampler, unsigned threads) {
  check_degree(degree);
  check_confidence(confidence);
  if (samples < 1) throw std::domain_error("fixed estimate requires N >= 1");
  if (trace(a) == 0.0) {
    return zero_trace_estimate(a, degree, confidence, scaling, sampler, EstimateMode::fixed);
  }
  check_scaling(scaling);
  const ScaledProblem p{a, 1.0, scaling, ChebyshevExpansion(degree, scaling.x0)};
  return run_fixed(p, degree, samples, confidence, sampler, threads);
}

EntropyEstimate estimate_adaptive(const SymmetricSparseMatrix& a, const EstimatorOptions& options,
                                  const ScalingParams& scaling, const RademacherSampler& sampler) {
  check_degree(options.degree);
  check_confidence(options.confidence);
  if (options.max_samples < 8) throw std::domain_error("max_samples must be >= 8");
  if (trace(a) == 0.0) {
    auto e = zero_trace_estimate(a, options.degree, options.confidence, scaling, sampler,
                                 EstimateMode::adaptive);
    e.max_samples = options.max_samples;
    return e;
  }
  check_scaling(scaling);
  const ScaledProblem p{a, 1.0, scaling, ChebyshevExpansion(options.degree, scaling.x0)};
  return run_adaptive(p, options, sampler);
}

EntropyEstimate entropy_with_normalization(const SymmetricSparseMatrix& a,
                                           const EstimatorOptions& options,
                                           const ScalingParams& scaling,
                                           const RademacherSampler& sampler, bool normalize,
                                           std::optional<std::size_t> fixed_samples) {
  if (!normalize) {
    return fixed_samples ? estimate_fixed(a, options.degree, *fixed_samples, options.confidence,
                                          scaling, sampler, options.threads)
                         : estimate_adaptive(a, options, scaling, sampler);
  }
  check_degree(options.degree);
  check_confidence(options.confidence);
  const double t = trace(a);
  if (t == 0.0) throw std::domain_error("cannot normalize a matrix with zero trace");
  if (!(t > 0.0)) throw std::domain_error("cannot normalize a matrix with negative trace");
  check_scaling(scaling);
  if (!fixed_samples && options.max_samples < 8) throw std::domain_error("max_samples must be >= 8");
  if (fixed_samples && *fixed_samples < 1) throw std::domain_error("fixed estimate requires N >= 1");

  // sigma(A/t) lies in [0, x0 gamma0 / t].
  ScalingParams normalized = scaling;
  normalized.gamma0 = scaling.gamma0 / t;
  const ScaledProblem p{a, 1.0 / t, normalized, ChebyshevExpansion(options.degree, scaling.x0)};
  auto e = fixed_samples ? run_fixed(p, options.degree, *fixed_samples, options.confidence,
                                     sampler, options.threads)
                         : run_adaptive(p, options, sampler);
  e.normalized = true;
  return e;
}

}  // namespace vne
