#include "abcwave/assembly.hpp"

#include <string>
#include <vector>

namespace abcwave {

Vector TraceMap::restrict_to_boundary(const Vector& bulk) const {
  if (bulk.size() != n_bulk) {
    throw DimensionMismatchError("trace restriction: bulk vector has size " +
                                 std::to_string(bulk.size()) + ", expected " +
                                 std::to_string(n_bulk));
  }
  Vector out(n_boundary());
  for (int j = 0; j < n_boundary(); ++j) out(j) = bulk(boundary_to_bulk[j]);
  return out;
}

Vector TraceMap::extend_to_bulk(const Vector& boundary) const {
  if (boundary.size() != n_boundary()) {
    throw DimensionMismatchError("trace extension: boundary vector has size " +
                                 std::to_string(boundary.size()) +
                                 ", expected " + std::to_string(n_boundary()));
  }
  Vector out = Vector::Zero(n_bulk);
  for (int j = 0; j < n_boundary(); ++j) out(boundary_to_bulk[j]) = boundary(j);
  return out;
}

TraceMap build_trace_map(const Mesh2D& mesh, const BoundaryMesh1D& boundary) {
  TraceMap t;
  t.n_bulk = mesh.n_nodes();
  t.boundary_to_bulk = boundary.nodes;
  for (int id : t.boundary_to_bulk) {
    if (id < 0 || id >= t.n_bulk) {
      throw DimensionMismatchError("boundary node id out of range");
    }
  }
  return t;
}

BulkMatrices assemble_bulk(const Mesh2D& mesh, const NodalCoefficients& coeffs) {
  const int n = mesh.n_nodes();
  if (coeffs.d.size() != n) {
    throw DimensionMismatchError("coefficient d has wrong length");
  }
  std::vector<Triplet> tm, tk, td;
  tm.reserve(mesh.triangles.size() * 9);
  tk.reserve(mesh.triangles.size() * 9);
  td.reserve(mesh.triangles.size() * 9);

  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    const double area = mesh.areas[t];
    const auto& p0 = mesh.nodes[tri[0]];
    const auto& p1 = mesh.nodes[tri[1]];
    const auto& p2 = mesh.nodes[tri[2]];

    // P1 gradient components: grad phi_i = (b_i, g_i) / (2 area).
    const double b[3] = {p1[1] - p2[1], p2[1] - p0[1], p0[1] - p1[1]};
    const double g[3] = {p2[0] - p1[0], p0[0] - p2[0], p1[0] - p0[0]};

    // Off-diagonal stiffness entries; diagonals are set to the negated row
    // sum so that constants lie in the kernel to the last bit.
    double koff[3][3] = {};
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        koff[i][j] = (b[i] * b[j] + g[i] * g[j]) / (4.0 * area);
      }
    }
    const double kdiag[3] = {-(koff[0][1] + koff[0][2]),
                             -(koff[0][1] + koff[1][2]),
                             -(koff[0][2] + koff[1][2])};
    for (int i = 0; i < 3; ++i) {
      tk.emplace_back(tri[i], tri[i], kdiag[i]);
      for (int j = i + 1; j < 3; ++j) {
        tk.emplace_back(tri[i], tri[j], koff[i][j]);
        tk.emplace_back(tri[j], tri[i], koff[i][j]);
      }
    }

    // Exact P1 mass: area/12 * (1 + delta_ij).
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        tm.emplace_back(tri[i], tri[j], area * (i == j ? 2.0 : 1.0) / 12.0);
      }
    }

    // Weighted mass with the P1 interpolant of d, using the exact triple
    // products int phi_a phi_b phi_c = area * {1/10, 1/30, 1/60} for
    // {a=b=c, two equal, all distinct}.
    const double dv[3] = {coeffs.d(tri[0]), coeffs.d(tri[1]), coeffs.d(tri[2])};
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3;
      const int k = (i + 2) % 3;
      const double diag =
          area * (dv[i] / 10.0 + dv[j] / 30.0 + dv[k] / 30.0);
      td.emplace_back(tri[i], tri[i], diag);
      const double off = area * (dv[i] / 30.0 + dv[j] / 30.0 + dv[k] / 60.0);
      td.emplace_back(tri[i], tri[j], off);
      td.emplace_back(tri[j], tri[i], off);
    }
  }

  BulkMatrices out;
  out.mass = matrix_from_triplets(n, n, tm);
  out.stiffness = matrix_from_triplets(n, n, tk);
  out.weighted_mass = matrix_from_triplets(n, n, td);
  return out;
}

SurfaceMatrices assemble_surface(const BoundaryMesh1D& boundary,
                                 const NodalCoefficients& coeffs) {
  const int nb = boundary.n_nodes();
  if (coeffs.mu.size() != nb || coeffs.sigma.size() != nb ||
      coeffs.delta.size() != nb || coeffs.kappa.size() != nb) {
    throw DimensionMismatchError("boundary coefficient has wrong length");
  }
  std::vector<Triplet> t_mass, t_sig, t_mu, t_del, t_kap;

  auto add_mass = [nb](std::vector<Triplet>& out, int a, int bnode, double h,
                       double wbar) {
    // Weighted P1 edge mass with the midpoint value of the weight:
    // wbar * h/6 * [[2,1],[1,2]].
    out.emplace_back(a, a, wbar * h / 3.0);
    out.emplace_back(bnode, bnode, wbar * h / 3.0);
    out.emplace_back(a, bnode, wbar * h / 6.0);
    out.emplace_back(bnode, a, wbar * h / 6.0);
  };

  for (int e = 0; e < nb; ++e) {
    const int a = e;
    const int b = (e + 1) % nb;
    const double h = boundary.edge_lengths[e];
    if (!(h > 0.0)) {
      throw DegenerateTriangleError("boundary edge " + std::to_string(e) +
                                    " has non-positive length");
    }
    add_mass(t_mass, a, b, h, 1.0);
    add_mass(t_mu, a, b, h, 0.5 * (coeffs.mu(a) + coeffs.mu(b)));
    add_mass(t_del, a, b, h, 0.5 * (coeffs.delta(a) + coeffs.delta(b)));
    add_mass(t_kap, a, b, h, 0.5 * (coeffs.kappa(a) + coeffs.kappa(b)));

    const double sbar = 0.5 * (coeffs.sigma(a) + coeffs.sigma(b));
    const double w = sbar / h;
    t_sig.emplace_back(a, a, w);
    t_sig.emplace_back(b, b, w);
    t_sig.emplace_back(a, b, -w);
    t_sig.emplace_back(b, a, -w);
  }

  SurfaceMatrices out;
  out.mass = matrix_from_triplets(nb, nb, t_mass);
  out.stiffness_sigma = matrix_from_triplets(nb, nb, t_sig);
  out.mass_mu = matrix_from_triplets(nb, nb, t_mu);
  out.mass_delta = matrix_from_triplets(nb, nb, t_del);
  out.mass_kappa = matrix_from_triplets(nb, nb, t_kap);
  return out;
}

Functionals assemble_functionals(const BulkMatrices& bulk,
                                 const SurfaceMatrices& surface,
                                 const TraceMap& trace,
                                 const NodalCoefficients& coeffs) {
  const int n = static_cast<int>(bulk.mass.rows());
  const int nb = static_cast<int>(surface.mass.rows());
  const Vector ones_bulk = Vector::Ones(n);
  const Vector ones_bdry = Vector::Ones(nb);

  Functionals f;
  f.one_omega = bulk.mass * ones_bulk;
  f.one_gamma = surface.mass * ones_bdry;
  f.domain_mass = f.one_omega.sum();
  f.boundary_mass = f.one_gamma.sum();
  f.d_mass = ones_bulk.dot(bulk.weighted_mass * ones_bulk);
  f.delta_mass = ones_bdry.dot(surface.mass_delta * ones_bdry);

  const double c2 = coeffs.c * coeffs.c;
  f.l1.on_u = bulk.weighted_mass * ones_bulk;
  f.l1.on_v = -c2 * f.one_gamma;
  f.l1.on_w = f.one_omega;
  f.l1.on_z = Vector::Zero(nb);

  f.l2.on_u = coeffs.rho0 * trace.extend_to_bulk(f.one_gamma);
  f.l2.on_v = surface.mass_delta * ones_bdry;
  f.l2.on_w = Vector::Zero(n);
  f.l2.on_z = surface.mass_mu * ones_bdry;
  return f;
}

}  // namespace abcwave
