#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vne/sparse_matrix.hpp"

namespace vne {

/// Tridiagonal stiffness matrix: 2 on the diagonal, -1 next to it.
SymmetricSparseMatrix fem_matrix(std::size_t m);

/// Q diag(spectrum) Q^T with Q a seeded product of random Givens rotations.
/// Throws std::domain_error for negative spectrum entries or m > 2000.
SymmetricSparseMatrix random_psd(std::span<const double> spectrum, std::uint64_t seed);

/// Quadratic propagation constant k(w) = beta0 + beta1 (w - w0) + beta2 (w - w0)^2.
struct Dispersion {
  double beta0 = 0.0;   // 1/m
  double beta1 = 0.0;   // s/m
  double beta2 = 0.0;   // s^2/m
  double omega0 = 0.0;  // rad/s

  double operator()(double omega) const noexcept {
    const double d = omega - omega0;
    return beta0 + beta1 * d + beta2 * d * d;
  }
};

/// Parameters of the discretized two-photon joint spectral amplitude
///   f(wi, ws) = c exp(-(wi + ws - wcp)^2 tau_p^2 / (8 log 2)) sinc(dk(wi, ws) L / 2),
///   dk = k_i(wi) + k_s(ws) - k_p(wi + ws) + 2 pi / G,
/// with sinc(x) = sin(x) / x and sinc(0) = 1. SI units throughout.
///
/// The defaults are a desk-scale toy model (not fitted to any crystal): a
/// 100 fs pump at 405 nm, opposite group-velocity mismatch for signal and
/// idler so phase matching confines the difference frequency, and a small
/// beta2 that bends dk by roughly pi across the grid.
struct SpdcParams {
  double tau_p = 1.0e-13;
  double omega_cp = 4.65e15;
  double crystal_length = 1.0e-3;
  double poling_period = 9.014e-6;
  Dispersion idler{1.395e7, 6.0e-9 + 1.05e-10, 5.0e-25, 2.325e15};
  Dispersion signal{1.395e7, 6.0e-9 - 1.05e-10, 5.0e-25, 2.325e15};
  Dispersion pump{0.0, 6.0e-9, 0.0, 4.65e15};
  bool auto_phase_match = true;  // overrides pump.beta0 so dk(wcp/2, wcp/2) = 0
  double omega_min = 2.325e15 - 8.0e13;
  double omega_max = 2.325e15 + 8.0e13;
  std::size_t m = 64;
  double amplitude = 1.0;  // the unspecified proportionality constant c
  double droptol = 1e-12;  // relative to max |A|
  bool separable_test_mode = false;

  void validate() const;
};

/// Reads `key = value` lines (`#` comments). Keys: tau_p, omega_cp,
/// crystal_length, poling_period, omega_min, omega_max, m, amplitude, droptol,
/// separable_test_mode, auto_phase_match, and {idler,signal,pump}_{beta0,beta1,beta2,omega0}.
/// Unset keys keep their defaults. Throws std::invalid_argument naming the line.
SpdcParams read_spdc_config(std::istream& in);
SpdcParams read_spdc_config(const std::filesystem::path& path);

struct SpdcMatrix {
  SymmetricSparseMatrix matrix;
  double points_per_fwhm = 0.0;  // grid points across the pump envelope FWHM
  std::vector<std::string> warnings;
};

/// Sampled joint amplitude f(w_a, w_c) on the uniform grid, row-major m x m.
std::vector<double> spdc_joint_amplitude(const SpdcParams& params);

/// Reduced density matrix A_ab = sum_c f(w_a, w_c) f(w_b, w_c) dw (Riemann
/// sum), with entries below droptol * max|A| dropped. Symmetric PSD by
/// construction. In separable_test_mode the kernel is replaced by
/// g(wi) g(ws) with g the pump-width Gaussian about omega_cp / 2, giving a
/// rank-1 matrix.
SpdcMatrix spdc_density_matrix(const SpdcParams& params);

}  // namespace vne
