#pragma once

#include <memory>
#include <optional>

#include "abcwave/assembly.hpp"
#include "abcwave/coefficients.hpp"
#include "abcwave/state.hpp"

namespace abcwave {

// First-order formulation Mblk x' = -S x of the coupled bulk/boundary wave
// system, with x = [u; v; w; z]:
//
//   Mblk = diag(M, MG, M, MGmu)
//   S    = [      0        0       -M        0      ]
//          [      0        0        0       -MG     ]
//          [   c^2 K       0        Md   -c^2 T^t MG]
//          [      0   KGsig+MGkap  rho0 MG T   MGdel]
//
// The generator is A = Mblk^{-1} S, so trajectories follow x' = -A x and
// energy is non-increasing whenever d, delta >= 0.
struct BlockSystem {
  BulkMatrices bulk;
  SurfaceMatrices surface;
  TraceMap trace;
  NodalCoefficients coeffs;

  SparseMatrix mass_block;  // Mblk
  SparseMatrix flux_block;  // S
  Functionals functionals;

  int n_bulk = 0;
  int n_boundary = 0;
  int dof() const { return 2 * (n_bulk + n_boundary); }

  // Factorization of Mblk, built once by build_generator and shared by all
  // generator applications.
  std::shared_ptr<const Factorization> mass_fact;
  const Factorization& mass_factorization() const { return *mass_fact; }
};

BlockSystem build_generator(const BulkMatrices& bulk,
                            const SurfaceMatrices& surface,
                            const TraceMap& trace,
                            const NodalCoefficients& coeffs);

// S x on packed states.
Vector apply_flux(const BlockSystem& sys, const Vector& packed);

// A x = Mblk^{-1} S x.
StateVector apply_generator(const BlockSystem& sys, const StateVector& x);

// E(x) = 1/2 ( rho0 u^T K u + rho0/c^2 w^T M w
//              + v^T KGsig v + v^T MGkap v + z^T MGmu z ).
double energy(const BlockSystem& sys, const StateVector& x);

// Energy pairing [x, y]; positive semidefinite, with [x, x] = 2 E(x).
double pseudo_inner(const BlockSystem& sys, const StateVector& x,
                    const StateVector& y);

// Both sides of the dissipation identity
//   [A x, x] = rho0/c^2 w^T Md w + z^T MGdel z;
// they agree to roundoff for every state.
struct DissipationPair {
  double lhs;
  double rhs;
};
DissipationPair dissipation_check(const BlockSystem& sys, const StateVector& x);

// Full phase-space norm: sqrt(u^T(K+M)u + v^T(KGsig+MG)v + w^T M w + z^T MG z).
// Unlike the energy seminorm this also sees constant shifts.
double state_norm(const BlockSystem& sys, const StateVector& x);

double mean_u(const BlockSystem& sys, const StateVector& x);
double mean_v(const BlockSystem& sys, const StateVector& x);

// Expected generator kernel: constants in u, plus constants in v when
// kappa == 0. Columns are unit-normalized packed states.
DenseMatrix expected_kernel(const BlockSystem& sys);

// Splitting of the state space into the generator kernel N and the
// complement M = ker l1 (kappa != 0) or ker l1 ∩ ker l2 (kappa == 0).
// project_null(x) is the large-time limit of e^{-At} x when damping is
// active somewhere.
struct ProjectorSet {
  enum class Case { ReactionPresent, ReactionAbsent };

  Case which = Case::ReactionPresent;
  int n_bulk = 0;
  int n_boundary = 0;

  // ReactionPresent: limit constant alpha(x) = l1(x) / d_mass.
  StateCovector alpha;
  // ReactionAbsent: limit constants for u and v from the 2x2 Cramer solve.
  StateCovector beta;
  StateCovector gamma;
  double det_c = 0.0;

  StateVector project_null(const StateVector& x) const;
  StateVector project_complement(const StateVector& x) const;
};

// Throws DegenerateSplitError when the relevant measure vanishes
// (d == 0 with kappa != 0, or det C == 0), because then no complement of
// the kernel is selected by the conserved functionals.
ProjectorSet build_projectors(const BlockSystem& sys);

}  // namespace abcwave
