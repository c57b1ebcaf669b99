#pragma once

#include "abcwave/system.hpp"

namespace abcwave {

// Solves (KGsig + MGkap) p = -rho0 MG 1 for the boundary profile p that a
// unit-rate linear ramp in u drags the boundary displacement to. Constant
// sigma, kappa give the constant profile p = -rho0 / kappa. Throws
// SingularSystemError when kappa == 0: the closed-loop operator is then
// singular and no such profile exists.
Vector steady_boundary_profile(const SurfaceMatrices& surface,
                               const NodalCoefficients& coeffs);

// Exact trajectory of the undamped bulk (d == 0) with boundary reaction
// present: u = rate * t (flat), v = rate * p, w = rate, z = 0. The state at
// time t; applying the system matrices to it leaves only the solver residual
// of the profile equation.
StateVector ramp_state(const BlockSystem& sys, const Vector& profile,
                       double rate, double t);

// || Mblk x'(t) + S x(t) ||_inf for the ramp trajectory; independent of t up
// to roundoff in the stiffness row sums.
double ramp_residual(const BlockSystem& sys, const Vector& profile,
                     double rate, double t = 0.0);

// Predicted large-time behaviour when the bulk is undamped (d == 0) and the
// boundary is damped (delta != 0). With reaction (kappa != 0): u_t tends to
// a constant rate and v to rate * profile. Without reaction: u_t tends to 0
// and v to a constant.
struct UndampedLimits {
  bool reaction_present = false;
  double velocity_limit = 0.0;    // limit of u_t
  double boundary_constant = 0.0; // limit of v when kappa == 0
  Vector v_limit;                 // predicted limit of v in both cases
};

// Throws InvalidSpecError when d != 0 (the bulk-damped limit is handled by
// the kernel projectors instead) or when delta == 0 as well (no damping, no
// limit).
UndampedLimits undamped_limits(const BlockSystem& sys, const StateVector& x0);

}  // namespace abcwave
