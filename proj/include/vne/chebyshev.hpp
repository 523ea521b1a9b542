#pragma once

#include <span>
#include <utility>
#include <vector>

namespace vne {

/// x log x on [0, inf), with the continuous extension 0 at x = 0.
/// Throws std::domain_error for x < 0.
double entropy_function(double x);

/// Truncated Chebyshev series p_n(x) = a_0/2 + sum_{k=1}^n a_k T_k(2x/x0 - 1)
/// of x log x on [0, x0], with closed-form coefficients.
class ChebyshevExpansion {
 public:
  /// Throws std::domain_error unless degree >= 0 and x0 > 0.
  ChebyshevExpansion(int degree, double x0);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  double x0() const noexcept { return x0_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  /// p_n(x) by the scalar Clenshaw recurrence. Extrapolation is refused:
  /// throws std::domain_error for x outside [0, x0].
  double operator()(double x) const;

 private:
  double x0_;
  std::vector<double> coeffs_;
};

/// Closed-form coefficients (a_0, ..., a_n) of x log x on [0, x0].
ChebyshevExpansion coefficients(int degree, double x0);

/// Sup-norm bound on |x log x - p_n(x)| over [0, x0]: x0 / (2n(n+1)).
/// Throws std::domain_error for n < 1 or x0 <= 0.
double truncation_error_bound(int degree, double x0);

/// sign(e^-1 - x0) * e^-1, with sign(0) = 0; the lower envelope constant.
double entropy_function_lower_envelope(double x0);

/// Width of the [min, max] envelope of x log x on [0, x0], divided by x0.
/// Minimal at x0 = 1.
double spread_function(double x0);

struct QuadraticFormEnvelope {
  double lower;
  double upper;
};

/// Bounds on gamma0 * v^T L(A / gamma0) v for sign vectors v of length m when
/// sigma(A) lies in [0, x0 * gamma0].
QuadraticFormEnvelope quadratic_form_envelope(std::size_t m, double x0, double gamma0);

}  // namespace vne
