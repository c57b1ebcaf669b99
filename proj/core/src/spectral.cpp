#include "abcwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace abcwave {

SpectrumReport analyze_spectrum(const BlockSystem& sys, Index dof_cap,
                                double tol_axis) {
  const Index n = sys.dof();
  if (n > dof_cap) {
    throw CapExceededError("dense spectrum of " + std::to_string(n) +
                           " unknowns exceeds cap " + std::to_string(dof_cap));
  }

  // A = Mblk^{-1} S, formed column block by column block.
  const DenseMatrix s_dense(sys.flux_block);
  const DenseMatrix a = sys.mass_factorization().solve(s_dense);

  SpectrumReport rep;
  const EigenDecomposition eig = dense_eigenvalues(a, /*with_vectors=*/true, dof_cap);
  rep.eigenvalues = eig.values;
  rep.max_eigen_residual = eig.max_residual;

  for (const auto& ev : rep.eigenvalues) {
    rep.scale = std::max(rep.scale, std::abs(ev));
  }
  rep.tol_zero = 1e-8 * rep.scale;
  rep.tol_axis = tol_axis;

  rep.min_real_nonzero = std::numeric_limits<double>::infinity();
  for (const auto& ev : rep.eigenvalues) {
    if (std::abs(ev) <= rep.tol_zero) {
      ++rep.zero_count;
      continue;
    }
    rep.min_real_nonzero = std::min(rep.min_real_nonzero, ev.real());
    if (std::abs(ev.real()) <= tol_axis * rep.scale) {
      rep.near_imaginary.push_back(ev);
    }
  }

  // Cross-check the kernel against the SVD of S and the expected constants.
  const KernelBasis kb = kernel_basis(sys.flux_block);
  rep.kernel_dim_svd = kb.dimension;
  rep.kernel_ambiguous = kb.ambiguous_rank;
  const DenseMatrix expected = expected_kernel(sys);
  const int n_expected = static_cast<int>(expected.cols());
  rep.kernel_dim_expected = n_expected;
  const bool ramp_regime =
      sys.coeffs.d_is_zero && !sys.coeffs.kappa_is_zero;
  rep.zero_count_expected = n_expected + (ramp_regime ? 1 : 0);
  double gap = 0.0;
  if (kb.dimension == n_expected) {
    for (int j = 0; j < n_expected; ++j) {
      const Vector b = expected.col(j);
      const Vector proj = kb.vectors * (kb.vectors.transpose() * b);
      gap = std::max(gap, (b - proj).norm() / b.norm());
    }
  } else {
    gap = std::numeric_limits<double>::infinity();
  }
  rep.kernel_span_gap = gap;
  rep.kernel_matches_expected = rep.zero_count == rep.zero_count_expected &&
                                rep.kernel_dim_svd == n_expected && gap <= 1e-8;
  return rep;
}

DissipativityCheck check_dissipativity(const SpectrumReport& report) {
  DissipativityCheck out;
  out.min_real_nonzero = report.min_real_nonzero;
  out.threshold = -1e-8 * report.scale;
  out.pass = report.min_real_nonzero >= out.threshold;
  return out;
}

AxisAudit imaginary_axis_audit(const SpectrumReport& report,
                               const BlockSystem& sys) {
  AxisAudit out;
  out.near_axis = report.near_imaginary;
  out.spectral_gap = report.min_real_nonzero;
  const Vector& d = sys.coeffs.d;
  out.asserted = d.size() > 0 && d.minCoeff() > 0.0;
  if (out.asserted) {
    out.pass = out.near_axis.empty();
  }
  return out;
}

}  // namespace abcwave
