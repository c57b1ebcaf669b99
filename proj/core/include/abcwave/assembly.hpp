#pragma once

#include "abcwave/coefficients.hpp"
#include "abcwave/geometry.hpp"
#include "abcwave/linalg.hpp"
#include "abcwave/state.hpp"

namespace abcwave {

// P1 finite element matrices on the bulk mesh. mass and stiffness use exact
// triangle quadrature; weighted_mass carries a P1-interpolated weight field.
struct BulkMatrices {
  SparseMatrix mass;           // M_ij       = (phi_i, phi_j)
  SparseMatrix stiffness;      // K_ij       = (grad phi_i, grad phi_j)
  SparseMatrix weighted_mass;  // Md_ij      = (d phi_i, phi_j), d interpolated
};

// P1 matrices on the closed boundary loop, in boundary ordering. All weight
// fields enter through their edge-midpoint averages, which keeps every
// matrix symmetric and the constant-weight case exact.
struct SurfaceMatrices {
  SparseMatrix mass;            // (psi_i, psi_j)
  SparseMatrix stiffness_sigma; // (sigma psi_i', psi_j')
  SparseMatrix mass_mu;         // (mu psi_i, psi_j)
  SparseMatrix mass_delta;
  SparseMatrix mass_kappa;
};

// Identifies boundary unknowns with their bulk nodes: restrict picks the
// outer-boundary entries of a bulk vector, extend scatters a boundary vector
// into a bulk-sized vector that is zero elsewhere.
struct TraceMap {
  std::vector<int> boundary_to_bulk;  // boundary index j -> bulk node id
  int n_bulk = 0;

  int n_boundary() const { return static_cast<int>(boundary_to_bulk.size()); }
  Vector restrict_to_boundary(const Vector& bulk) const;
  Vector extend_to_bulk(const Vector& boundary) const;
};

BulkMatrices assemble_bulk(const Mesh2D& mesh, const NodalCoefficients& coeffs);
SurfaceMatrices assemble_surface(const BoundaryMesh1D& boundary,
                                 const NodalCoefficients& coeffs);
TraceMap build_trace_map(const Mesh2D& mesh, const BoundaryMesh1D& boundary);

// The two linear functionals that generate the conserved quantities:
//   l1(x) = 1^T M w + 1^T Md u - c^2 1^T MG v         (always conserved)
//   l2(x) = 1^T MGmu z + 1^T MGdelta v + rho0 1^T MG (trace u)
//                                                     (conserved iff kappa == 0)
// plus the integration covectors and total measures derived from them.
struct Functionals {
  StateCovector l1;
  StateCovector l2;
  Vector one_omega;      // M * 1, bulk integration weights
  Vector one_gamma;      // MG * 1, boundary integration weights
  double domain_mass = 0.0;    // 1^T M 1
  double boundary_mass = 0.0;  // 1^T MG 1
  double d_mass = 0.0;         // 1^T Md 1
  double delta_mass = 0.0;     // 1^T MGdelta 1
};

Functionals assemble_functionals(const BulkMatrices& bulk,
                                 const SurfaceMatrices& surface,
                                 const TraceMap& trace,
                                 const NodalCoefficients& coeffs);

}  // namespace abcwave
