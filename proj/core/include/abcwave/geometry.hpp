#pragma once

#include <array>
#include <string>
#include <vector>

#include "abcwave/errors.hpp"

namespace abcwave {

// Rotationally symmetric 2-D domain: a disk, or an annulus whose inner
// circle is the reflecting part of the boundary. The outer circle always
// carries the dynamic boundary condition.
struct DomainSpec {
  enum class Kind { Disk, Annulus };

  Kind kind = Kind::Disk;
  double outer_radius = 1.0;
  double inner_radius = 0.0;  // ignored for disks
  int n_theta = 32;           // angular subdivisions (>= 3)
  int n_r = 8;                // radial layers (>= 1)

  // Throws InvalidSpecError on inconsistent input (non-positive radius,
  // inner >= outer, too few subdivisions).
  void validate() const;
};

// Conforming triangle mesh with straight edges. Triangles are counter-
// clockwise. gamma1_nodes lists outer-circle nodes in cyclic order,
// gamma0_nodes the inner-circle nodes of an annulus (empty for disks).
struct Mesh2D {
  std::vector<std::array<double, 2>> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> gamma1_nodes;
  std::vector<int> gamma0_nodes;
  std::vector<double> areas;  // one per triangle, positive

  int n_nodes() const { return static_cast<int>(nodes.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
  double min_edge_length() const;
};

// Closed polygonal loop of the outer boundary, indexed by position in the
// loop; nodes[j] is the bulk node id of boundary vertex j, and edge j joins
// vertices j and (j+1) mod n.
struct BoundaryMesh1D {
  std::vector<int> nodes;
  std::vector<double> edge_lengths;

  int n_nodes() const { return static_cast<int>(nodes.size()); }
  int n_edges() const { return static_cast<int>(edge_lengths.size()); }
  double total_length() const;
};

struct MeshPair {
  Mesh2D mesh;
  BoundaryMesh1D boundary;
};

// Structured polar triangulation. Disk: a central vertex fan plus n_r - 1
// quad rings split into triangle pairs. Annulus: n_r quad rings. Throws
// DegenerateTriangleError if any signed area is non-positive.
MeshPair build_mesh(const DomainSpec& spec);

// Sum of triangle areas (measure of the polygonal approximation).
double domain_measure(const Mesh2D& mesh);

// Sum of boundary edge lengths.
double boundary_measure(const BoundaryMesh1D& boundary);

double triangle_area(const std::array<double, 2>& a,
                     const std::array<double, 2>& b,
                     const std::array<double, 2>& c);

}  // namespace abcwave
