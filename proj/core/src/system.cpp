#include "abcwave/system.hpp"

#include <cmath>
#include <vector>

namespace abcwave {

namespace {

// Appends scale * B at block offset (row_off, col_off).
void add_block(std::vector<Triplet>& out, const SparseMatrix& b, int row_off,
               int col_off, double scale) {
  for (int k = 0; k < b.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(b, k); it; ++it) {
      out.emplace_back(row_off + static_cast<int>(it.row()),
                       col_off + static_cast<int>(it.col()),
                       scale * it.value());
    }
  }
}

// Appends scale * B with rows (first=true) or columns (first=false) routed
// through the trace map, i.e. the blocks T^t B and B T.
void add_block_traced(std::vector<Triplet>& out, const SparseMatrix& b,
                      const TraceMap& trace, bool route_rows, int row_off,
                      int col_off, double scale) {
  for (int k = 0; k < b.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(b, k); it; ++it) {
      const int r = static_cast<int>(it.row());
      const int c = static_cast<int>(it.col());
      if (route_rows) {
        out.emplace_back(row_off + trace.boundary_to_bulk[r], col_off + c,
                         scale * it.value());
      } else {
        out.emplace_back(row_off + r, col_off + trace.boundary_to_bulk[c],
                         scale * it.value());
      }
    }
  }
}

}  // namespace

BlockSystem build_generator(const BulkMatrices& bulk,
                            const SurfaceMatrices& surface,
                            const TraceMap& trace,
                            const NodalCoefficients& coeffs) {
  BlockSystem sys;
  sys.bulk = bulk;
  sys.surface = surface;
  sys.trace = trace;
  sys.coeffs = coeffs;
  sys.n_bulk = static_cast<int>(bulk.mass.rows());
  sys.n_boundary = static_cast<int>(surface.mass.rows());
  if (trace.n_bulk != sys.n_bulk ||
      trace.n_boundary() != sys.n_boundary) {
    throw DimensionMismatchError("trace map does not match matrix sizes");
  }

  const int n = sys.n_bulk;
  const int nb = sys.n_boundary;
  const int off_u = 0;
  const int off_v = n;
  const int off_w = n + nb;
  const int off_z = 2 * n + nb;
  const int total = 2 * (n + nb);
  const double c2 = coeffs.c * coeffs.c;

  std::vector<Triplet> tmass;
  add_block(tmass, bulk.mass, off_u, off_u, 1.0);
  add_block(tmass, surface.mass, off_v, off_v, 1.0);
  add_block(tmass, bulk.mass, off_w, off_w, 1.0);
  add_block(tmass, surface.mass_mu, off_z, off_z, 1.0);
  sys.mass_block = matrix_from_triplets(total, total, tmass);

  std::vector<Triplet> ts;
  add_block(ts, bulk.mass, off_u, off_w, -1.0);
  add_block(ts, surface.mass, off_v, off_z, -1.0);
  add_block(ts, bulk.stiffness, off_w, off_u, c2);
  add_block(ts, bulk.weighted_mass, off_w, off_w, 1.0);
  add_block_traced(ts, surface.mass, trace, /*route_rows=*/true, off_w, off_z,
                   -c2);
  add_block(ts, surface.stiffness_sigma, off_z, off_v, 1.0);
  add_block(ts, surface.mass_kappa, off_z, off_v, 1.0);
  add_block_traced(ts, surface.mass, trace, /*route_rows=*/false, off_z, off_w,
                   coeffs.rho0);
  add_block(ts, surface.mass_delta, off_z, off_z, 1.0);
  sys.flux_block = matrix_from_triplets(total, total, ts);

  sys.functionals = assemble_functionals(bulk, surface, trace, coeffs);
  sys.mass_fact = std::make_shared<const Factorization>(sys.mass_block);
  return sys;
}

Vector apply_flux(const BlockSystem& sys, const Vector& packed) {
  if (packed.size() != sys.dof()) {
    throw DimensionMismatchError("packed state has wrong size");
  }
  return sys.flux_block * packed;
}

StateVector apply_generator(const BlockSystem& sys, const StateVector& x) {
  const Vector sx = apply_flux(sys, x.pack());
  return StateVector::unpack(sys.mass_factorization().solve(sx), sys.n_bulk,
                             sys.n_boundary);
}

double energy(const BlockSystem& sys, const StateVector& x) {
  return 0.5 * pseudo_inner(sys, x, x);
}

double pseudo_inner(const BlockSystem& sys, const StateVector& x,
                    const StateVector& y) {
  const double rho0 = sys.coeffs.rho0;
  const double c2 = sys.coeffs.c * sys.coeffs.c;
  double s = 0.0;
  s += rho0 * x.u.dot(sys.bulk.stiffness * y.u);
  s += x.v.dot(sys.surface.stiffness_sigma * y.v);
  s += x.v.dot(sys.surface.mass_kappa * y.v);
  s += (rho0 / c2) * x.w.dot(sys.bulk.mass * y.w);
  s += x.z.dot(sys.surface.mass_mu * y.z);
  return s;
}

DissipationPair dissipation_check(const BlockSystem& sys, const StateVector& x) {
  const StateVector ax = apply_generator(sys, x);
  DissipationPair out;
  out.lhs = pseudo_inner(sys, ax, x);
  const double rho0 = sys.coeffs.rho0;
  const double c2 = sys.coeffs.c * sys.coeffs.c;
  out.rhs = (rho0 / c2) * x.w.dot(sys.bulk.weighted_mass * x.w) +
            x.z.dot(sys.surface.mass_delta * x.z);
  return out;
}

double state_norm(const BlockSystem& sys, const StateVector& x) {
  double s = 0.0;
  s += x.u.dot(sys.bulk.stiffness * x.u) + x.u.dot(sys.bulk.mass * x.u);
  s += x.v.dot(sys.surface.stiffness_sigma * x.v) +
       x.v.dot(sys.surface.mass * x.v);
  s += x.w.dot(sys.bulk.mass * x.w);
  s += x.z.dot(sys.surface.mass * x.z);
  return std::sqrt(s);
}

double mean_u(const BlockSystem& sys, const StateVector& x) {
  return sys.functionals.one_omega.dot(x.u) / sys.functionals.domain_mass;
}

double mean_v(const BlockSystem& sys, const StateVector& x) {
  return sys.functionals.one_gamma.dot(x.v) / sys.functionals.boundary_mass;
}

DenseMatrix expected_kernel(const BlockSystem& sys) {
  const int n = sys.n_bulk;
  const int nb = sys.n_boundary;
  const int cols = sys.coeffs.kappa_is_zero ? 2 : 1;
  DenseMatrix basis = DenseMatrix::Zero(sys.dof(), cols);
  basis.block(0, 0, n, 1).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  if (cols == 2) {
    basis.block(n, 1, nb, 1).setConstant(1.0 /
                                         std::sqrt(static_cast<double>(nb)));
  }
  return basis;
}

StateVector ProjectorSet::project_null(const StateVector& x) const {
  StateVector out = StateVector::zero(n_bulk, n_boundary);
  if (which == Case::ReactionPresent) {
    out.u.setConstant(alpha(x));
  } else {
    out.u.setConstant(beta(x));
    out.v.setConstant(gamma(x));
  }
  return out;
}

StateVector ProjectorSet::project_complement(const StateVector& x) const {
  return x - project_null(x);
}

ProjectorSet build_projectors(const BlockSystem& sys) {
  const Functionals& f = sys.functionals;
  ProjectorSet p;
  p.n_bulk = sys.n_bulk;
  p.n_boundary = sys.n_boundary;

  if (!sys.coeffs.kappa_is_zero) {
    p.which = ProjectorSet::Case::ReactionPresent;
    if (sys.coeffs.d_is_zero || f.d_mass <= 0.0) {
      throw DegenerateSplitError(
          "projector onto constants needs bulk damping when the boundary "
          "reaction is present (d_mass = 0)");
    }
    p.alpha = f.l1.scaled(1.0 / f.d_mass);
    return p;
  }

  p.which = ProjectorSet::Case::ReactionAbsent;
  const double rho0 = sys.coeffs.rho0;
  const double c2 = sys.coeffs.c * sys.coeffs.c;
  // C = [ d_mass        -c^2 |G|  ]   maps (beta, gamma) to (l1, l2) on
  //     [ rho0 |G|       delta_mass ] the constant pair (beta 1, gamma 1).
  p.det_c = f.d_mass * f.delta_mass + rho0 * c2 * f.boundary_mass * f.boundary_mass;
  if (!(p.det_c > 0.0)) {
    throw DegenerateSplitError("constant-pair system is singular (det C = 0)");
  }
  p.beta = StateCovector::combine(f.delta_mass / p.det_c, f.l1,
                                  c2 * f.boundary_mass / p.det_c, f.l2);
  p.gamma = StateCovector::combine(-rho0 * f.boundary_mass / p.det_c, f.l1,
                                   f.d_mass / p.det_c, f.l2);
  return p;
}

}  // namespace abcwave
