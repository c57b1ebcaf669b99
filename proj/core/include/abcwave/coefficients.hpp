#pragma once

#include <map>
#include <string>

#include "abcwave/geometry.hpp"
#include "abcwave/linalg.hpp"

namespace abcwave {

// Scalar field on the mesh, described either in closed form (constant,
// radial, angular) or by per-node values keyed by bulk node id.
class Profile {
 public:
  enum class Kind { Constant, Radial, Angular, Nodal };

  Profile() = default;

  static Profile constant(double value);
  // a + b * r
  static Profile radial(double a, double b);
  // a + b * cos(mode * theta)
  static Profile angular(double a, double b, int mode);
  static Profile nodal(std::map<int, double> values);

  Kind kind() const { return kind_; }

  // Value at a node with the given bulk id and coordinates. Nodal profiles
  // throw InvalidSpecError when the id has no entry.
  double value_at(int node_id, const std::array<double, 2>& xy) const;

  // True only for the closed-form constant 0 profile.
  bool is_constant_zero() const {
    return kind_ == Kind::Constant && a_ == 0.0;
  }

 private:
  Kind kind_ = Kind::Constant;
  double a_ = 0.0;
  double b_ = 0.0;
  int mode_ = 0;
  std::map<int, double> values_;
};

// Coefficient fields of the model: bulk damping d, boundary inertia mu,
// boundary stiffness sigma, boundary damping delta, boundary reaction kappa,
// plus the constants rho0 (coupling density) and c (wave speed).
struct CoefficientSet {
  Profile d = Profile::constant(0.0);
  Profile mu = Profile::constant(1.0);
  Profile sigma = Profile::constant(1.0);
  Profile delta = Profile::constant(0.0);
  Profile kappa = Profile::constant(0.0);
  double rho0 = 1.0;
  double c = 1.0;
};

// Coefficients sampled at mesh nodes. Bulk fields use bulk node ordering;
// boundary fields use the cyclic boundary ordering of BoundaryMesh1D.
struct NodalCoefficients {
  Vector d;      // size mesh.n_nodes()
  Vector mu;     // size boundary.n_nodes()
  Vector sigma;
  Vector delta;
  Vector kappa;
  double rho0 = 1.0;
  double c = 1.0;

  // Exact structural zero flags; they drive the case splits downstream.
  bool d_is_zero = true;
  bool delta_is_zero = true;
  bool kappa_is_zero = true;
};

// Samples every field at the nodes and enforces the sign conditions:
// mu, sigma, rho0, c strictly positive; d, delta, kappa non-negative.
// Throws PositivityViolationError naming the offending field and node.
NodalCoefficients evaluate_coefficients(const CoefficientSet& set,
                                        const Mesh2D& mesh,
                                        const BoundaryMesh1D& boundary);

}  // namespace abcwave
