#include "vne/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vne {

double entropy_function(double x) {
  if (std::isnan(x) || x < 0.0) {
    throw std::domain_error("entropy_function: argument must be nonnegative, got " +
                            std::to_string(x));
  }
  return x > 0.0 ? x * std::log(x) : 0.0;
}

ChebyshevExpansion::ChebyshevExpansion(int degree, double x0) : x0_(x0) {
  if (degree < 0) throw std::domain_error("Chebyshev degree must be >= 0");
  if (!(x0 > 0.0) || !std::isfinite(x0)) throw std::domain_error("Chebyshev interval x0 must be > 0");

  coeffs_.resize(static_cast<std::size_t>(degree) + 1);
  const double log_quarter = std::log(x0 / 4.0);
  coeffs_[0] = x0 * (log_quarter + 1.0);
  if (degree >= 1) coeffs_[1] = x0 / 4.0 * (2.0 * log_quarter + 3.0);
  for (int k = 2; k <= degree; ++k) {
    const double kd = k;
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    coeffs_[static_cast<std::size_t>(k)] = sign * x0 / (kd * (kd * kd - 1.0));
  }
}

double ChebyshevExpansion::operator()(double x) const {
  if (!(x >= 0.0 && x <= x0_)) {
    throw std::domain_error("Chebyshev evaluation outside [0, x0]: x = " + std::to_string(x) +
                            ", x0 = " + std::to_string(x0_));
  }
  // Backward recurrence b_k = a_k + 2t b_{k+1} - b_{k+2}, t = 2x/x0 - 1.
  // With the halved leading term, p_n(x) = (b_0 - b_2) / 2.
  const double two_t = 2.0 * (2.0 * x / x0_ - 1.0);
  double b1 = 0.0;  // b_{k+1}
  double b2 = 0.0;  // b_{k+2}
  for (int k = degree(); k >= 1; --k) {
    const double bk = coeffs_[static_cast<std::size_t>(k)] + two_t * b1 - b2;
    b2 = b1;
    b1 = bk;
  }
  const double b0 = coeffs_[0] + two_t * b1 - b2;
  return 0.5 * (b0 - b2);
}

ChebyshevExpansion coefficients(int degree, double x0) { return ChebyshevExpansion(degree, x0); }

double truncation_error_bound(int degree, double x0) {
  if (degree < 1) throw std::domain_error("truncation bound requires degree >= 1");
  if (!(x0 > 0.0)) throw std::domain_error("truncation bound requires x0 > 0");
  const double n = degree;
  return x0 / (2.0 * n * (n + 1.0));
}

double entropy_function_lower_envelope(double x0) {
  constexpr double inv_e = 1.0 / std::numbers::e;
  const double diff = inv_e - x0;
  const double sign = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
  return inv_e * sign;
}

double spread_function(double x0) {
  if (!(x0 > 0.0)) throw std::domain_error("spread_function requires x0 > 0");
  const double l = entropy_function(x0);
  const double upper = std::max(0.0, l);
  const double lower = std::min(l, entropy_function_lower_envelope(x0));
  return (upper - lower) / x0;
}

QuadraticFormEnvelope quadratic_form_envelope(std::size_t m, double x0, double gamma0) {
  if (m == 0) throw std::domain_error("envelope requires m >= 1");
  if (!(x0 > 0.0) || !(gamma0 > 0.0)) throw std::domain_error("envelope requires x0, gamma0 > 0");
  const double l = entropy_function(x0);
  const double scale = static_cast<double>(m) * gamma0;
  return {.lower = scale * std::min(l, entropy_function_lower_envelope(x0)),
          .upper = scale * std::max(0.0, l)};
}

}  // namespace vne
