#include "abcwave/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace abcwave {

namespace {

double distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

}  // namespace

void DomainSpec::validate() const {
  if (!(outer_radius > 0.0)) {
    throw InvalidSpecError("outer_radius must be positive");
  }
  if (kind == Kind::Disk) {
    if (inner_radius != 0.0) {
      throw InvalidSpecError("inner_radius must be 0 for a disk");
    }
  } else {
    if (!(inner_radius > 0.0) || !(inner_radius < outer_radius)) {
      throw InvalidSpecError("annulus requires 0 < inner_radius < outer_radius");
    }
  }
  if (n_theta < 3) throw InvalidSpecError("n_theta must be at least 3");
  if (n_r < 1) throw InvalidSpecError("n_r must be at least 1");
}

double triangle_area(const std::array<double, 2>& a,
                     const std::array<double, 2>& b,
                     const std::array<double, 2>& c) {
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

double Mesh2D::min_edge_length() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& t : triangles) {
    m = std::min(m, distance(nodes[t[0]], nodes[t[1]]));
    m = std::min(m, distance(nodes[t[1]], nodes[t[2]]));
    m = std::min(m, distance(nodes[t[2]], nodes[t[0]]));
  }
  return m;
}

double BoundaryMesh1D::total_length() const {
  double s = 0.0;
  for (double h : edge_lengths) s += h;
  return s;
}

double domain_measure(const Mesh2D& mesh) {
  double s = 0.0;
  for (double a : mesh.areas) s += a;
  return s;
}

double boundary_measure(const BoundaryMesh1D& boundary) {
  return boundary.total_length();
}

MeshPair build_mesh(const DomainSpec& spec) {
  spec.validate();
  const int nt = spec.n_theta;
  const int nr = spec.n_r;
  const double two_pi = 2.0 * std::numbers::pi;

  Mesh2D mesh;
  // ring_start[k] is the node id of angle index 0 on radial layer k.
  std::vector<int> ring_start;

  auto push_ring = [&](double radius) {
    ring_start.push_back(mesh.n_nodes());
    for (int i = 0; i < nt; ++i) {
      const double th = two_pi * i / nt;
      mesh.nodes.push_back({radius * std::cos(th), radius * std::sin(th)});
    }
  };
  auto ring_node = [&](int k, int i) { return ring_start[k] + (i % nt); };

  int first_quad_ring = 0;
  if (spec.kind == DomainSpec::Kind::Disk) {
    mesh.nodes.push_back({0.0, 0.0});
    for (int k = 1; k <= nr; ++k) {
      push_ring(spec.outer_radius * k / nr);
    }
    for (int i = 0; i < nt; ++i) {
      mesh.triangles.push_back({0, ring_node(0, i), ring_node(0, i + 1)});
    }
    first_quad_ring = 0;  // rings are layers 1..nr of the disk
  } else {
    for (int k = 0; k <= nr; ++k) {
      const double r =
          spec.inner_radius + (spec.outer_radius - spec.inner_radius) * k / nr;
      push_ring(r);
    }
    for (int i = 0; i < nt; ++i) {
      mesh.gamma0_nodes.push_back(ring_node(0, i));
    }
  }

  const int n_rings = static_cast<int>(ring_start.size());
  for (int k = first_quad_ring; k + 1 < n_rings; ++k) {
    for (int i = 0; i < nt; ++i) {
      const int a = ring_node(k, i);
      const int b = ring_node(k + 1, i);
      const int c = ring_node(k + 1, i + 1);
      const int d = ring_node(k, i + 1);
      mesh.triangles.push_back({a, b, c});
      mesh.triangles.push_back({a, c, d});
    }
  }

  for (int i = 0; i < nt; ++i) {
    mesh.gamma1_nodes.push_back(ring_node(n_rings - 1, i));
  }

  mesh.areas.reserve(mesh.triangles.size());
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    const double a =
        triangle_area(mesh.nodes[tri[0]], mesh.nodes[tri[1]], mesh.nodes[tri[2]]);
    if (!(a > 0.0)) {
      throw DegenerateTriangleError("triangle " + std::to_string(t) +
                                    " has non-positive area");
    }
    mesh.areas.push_back(a);
  }

  BoundaryMesh1D boundary;
  boundary.nodes = mesh.gamma1_nodes;
  const int nb = boundary.n_nodes();
  for (int j = 0; j < nb; ++j) {
    boundary.edge_lengths.push_back(distance(mesh.nodes[boundary.nodes[j]],
                                             mesh.nodes[boundary.nodes[(j + 1) % nb]]));
  }
  return MeshPair{std::move(mesh), std::move(boundary)};
}

}  // namespace abcwave
