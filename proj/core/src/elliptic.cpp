#include "abcwave/elliptic.hpp"

#include <cmath>

namespace abcwave {

Vector steady_boundary_profile(const SurfaceMatrices& surface,
                               const NodalCoefficients& coeffs) {
  if (coeffs.kappa_is_zero) {
    throw SingularSystemError(
        "steady boundary profile needs kappa != 0; with kappa == 0 the "
        "surface operator annihilates constants");
  }
  const int nb = static_cast<int>(surface.mass.rows());
  SparseMatrix op = surface.stiffness_sigma + surface.mass_kappa;
  const Vector rhs = -coeffs.rho0 * (surface.mass * Vector::Ones(nb));
  return sparse_lu(op).solve(rhs);
}

StateVector ramp_state(const BlockSystem& sys, const Vector& profile,
                       double rate, double t) {
  if (profile.size() != sys.n_boundary) {
    throw DimensionMismatchError("profile has wrong length");
  }
  StateVector x = StateVector::zero(sys.n_bulk, sys.n_boundary);
  x.u.setConstant(rate * t);
  x.v = rate * profile;
  x.w.setConstant(rate);
  return x;
}

double ramp_residual(const BlockSystem& sys, const Vector& profile,
                     double rate, double t) {
  const StateVector x = ramp_state(sys, profile, rate, t);
  StateVector xdot = StateVector::zero(sys.n_bulk, sys.n_boundary);
  xdot.u.setConstant(rate);
  const Vector r = sys.mass_block * xdot.pack() + sys.flux_block * x.pack();
  return r.lpNorm<Eigen::Infinity>();
}

UndampedLimits undamped_limits(const BlockSystem& sys, const StateVector& x0) {
  const NodalCoefficients& nc = sys.coeffs;
  if (!nc.d_is_zero) {
    throw InvalidSpecError(
        "undamped limits require d == 0; with bulk damping the limit is the "
        "kernel projection instead");
  }
  if (nc.delta_is_zero) {
    throw InvalidSpecError(
        "no large-time limit without any damping (d == 0 and delta == 0)");
  }
  const Functionals& f = sys.functionals;
  const double c2 = nc.c * nc.c;
  const double l1 = f.l1(x0);

  UndampedLimits out;
  out.reaction_present = !nc.kappa_is_zero;
  if (out.reaction_present) {
    const Vector p = steady_boundary_profile(sys.surface, nc);
    const double denom = f.domain_mass - c2 * f.one_gamma.dot(p);
    if (std::abs(denom) <= 1e-14 * (f.domain_mass + std::abs(c2 * f.one_gamma.dot(p)))) {
      throw DegenerateSplitError("ramp-rate equation is singular");
    }
    out.velocity_limit = l1 / denom;
    out.v_limit = out.velocity_limit * p;
  } else {
    out.velocity_limit = 0.0;
    out.boundary_constant = -l1 / (c2 * f.boundary_mass);
    out.v_limit = Vector::Constant(sys.n_boundary, out.boundary_constant);
  }
  return out;
}

}  // namespace abcwave
