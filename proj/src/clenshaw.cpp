#include "vne/clenshaw.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace vne {

void ClenshawWorkspace::reset(std::size_t m) {
  for (auto* y : {&y_cur, &y_next, &y_after}) y->assign(m, 0.0);
}

double quadratic_form(const SymmetricSparseMatrix& a, std::span<const double> v,
                      const ChebyshevExpansion& expansion, double gamma0,
                      ClenshawWorkspace& workspace) {
  const std::size_t m = a.dim();
  if (v.size() != m) throw DimensionError("quadratic_form: sign vector length != matrix dimension");
  if (!(gamma0 > 0.0)) throw std::invalid_argument("quadratic_form: gamma0 must be > 0");
  if (expansion.degree() < 1) throw std::invalid_argument("quadratic_form: degree must be >= 1");
  if (!std::all_of(v.begin(), v.end(), [](double s) { return s == 1.0 || s == -1.0; })) {
    throw std::invalid_argument("quadratic_form: v must have entries +-1");
  }

  const auto a_k = expansion.coeffs();
  const int n = expansion.degree();
  const double c = 4.0 / (expansion.x0() * gamma0);

  workspace.reset(m);
  auto& y_k = workspace.y_cur;       // y_{k}, written this step
  auto& y_k1 = workspace.y_next;     // y_{k+1}
  auto& y_k2 = workspace.y_after;    // y_{k+2}

  // k = n: y_{n+1} = y_{n+2} = 0, so the product with A is skipped.
  for (std::size_t r = 0; r < m; ++r) y_k1[r] = a_k[static_cast<std::size_t>(n)] * v[r];

  // k = n-1 .. 1. After each step y_{k+2} <- y_{k+1} <- y_k.
  for (int k = n - 1; k >= 1; --k) {
    const double ak = a_k[static_cast<std::size_t>(k)];
    for (std::size_t r = 0; r < m; ++r) {
      y_k[r] = ak * v[r] + c * a.row_dot(r, y_k1) - 2.0 * y_k1[r] - y_k2[r];
    }
    std::swap(y_k2, y_k1);
    std::swap(y_k1, y_k);
  }

  // k = 0 is folded into the output: v^T (y_0 - y_2), never storing y_0.
  const double a0 = a_k[0];
  double sum = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    const double y0 = a0 * v[r] + c * a.row_dot(r, y_k1) - 2.0 * y_k1[r] - y_k2[r];
    sum += v[r] * (y0 - y_k2[r]);
  }
  return 0.5 * gamma0 * sum;
}

double quadratic_form(const SymmetricSparseMatrix& a, std::span<const double> v,
                      const ChebyshevExpansion& expansion, double gamma0) {
  ClenshawWorkspace workspace(a.dim());
  return quadratic_form(a, v, expansion, gamma0, workspace);
}

}  // namespace vne
