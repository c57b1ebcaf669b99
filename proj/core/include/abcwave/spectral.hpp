#pragma once

#include <complex>
#include <vector>

#include "abcwave/system.hpp"

namespace abcwave {

// Dense spectrum of the generator A = Mblk^{-1} S together with the checks
// that matter for the model: kernel dimension, distance of the nonzero
// spectrum from the imaginary axis, and eigenpair residuals.
struct SpectrumReport {
  std::vector<std::complex<double>> eigenvalues;

  // Magnitude of the largest eigenvalue; sets the relative scales below.
  double scale = 0.0;
  // Eigenvalues with |lambda| <= tol_zero count as zero. This is the
  // algebraic multiplicity; it exceeds the kernel dimension by one in the
  // ramp regime (d == 0, kappa != 0), whose zero eigenvalue carries a
  // 2x2 Jordan block.
  double tol_zero = 0.0;
  int zero_count = 0;
  int zero_count_expected = 0;
  // Geometric kernel dimension from the SVD of S, with its ambiguity flag.
  int kernel_dim_svd = 0;
  int kernel_dim_expected = 0;
  bool kernel_ambiguous = false;
  // True when both multiplicities match their expectations and the SVD
  // basis spans the expected constants.
  bool kernel_matches_expected = false;
  double kernel_span_gap = 0.0;

  // min Re over eigenvalues with |lambda| > tol_zero; +inf if none.
  double min_real_nonzero = 0.0;
  // Nonzero eigenvalues with |Re| <= tol_axis * scale.
  std::vector<std::complex<double>> near_imaginary;
  double tol_axis = 0.0;

  double max_eigen_residual = 0.0;
};

// Forms A densely (throws CapExceededError beyond dof_cap) and runs the QR
// eigensolver plus an SVD kernel cross-check. tol_axis is relative to scale;
// tol_zero is fixed at 1e-8 * scale.
SpectrumReport analyze_spectrum(const BlockSystem& sys, Index dof_cap = 2000,
                                double tol_axis = 1e-7);

// Accretivity gate: no nonzero eigenvalue may protrude into the left half
// plane beyond QR roundoff.
struct DissipativityCheck {
  bool pass = false;
  double min_real_nonzero = 0.0;
  double threshold = 0.0;  // -1e-8 * scale
};
DissipativityCheck check_dissipativity(const SpectrumReport& report);

// Audit of the nonzero spectrum near the imaginary axis. When d > 0 at
// every bulk node the model predicts none; asserted is false otherwise and
// the list is informational.
struct AxisAudit {
  bool asserted = false;
  bool pass = true;
  std::vector<std::complex<double>> near_axis;
  double spectral_gap = 0.0;  // min Re over nonzero eigenvalues
};
AxisAudit imaginary_axis_audit(const SpectrumReport& report,
                               const BlockSystem& sys);

}  // namespace abcwave
