#include "abcwave/coefficients.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace abcwave {

Profile Profile::constant(double value) {
  Profile p;
  p.kind_ = Kind::Constant;
  p.a_ = value;
  return p;
}

Profile Profile::radial(double a, double b) {
  Profile p;
  p.kind_ = Kind::Radial;
  p.a_ = a;
  p.b_ = b;
  return p;
}

Profile Profile::angular(double a, double b, int mode) {
  Profile p;
  p.kind_ = Kind::Angular;
  p.a_ = a;
  p.b_ = b;
  p.mode_ = mode;
  return p;
}

Profile Profile::nodal(std::map<int, double> values) {
  Profile p;
  p.kind_ = Kind::Nodal;
  p.values_ = std::move(values);
  return p;
}

double Profile::value_at(int node_id, const std::array<double, 2>& xy) const {
  switch (kind_) {
    case Kind::Constant:
      return a_;
    case Kind::Radial:
      return a_ + b_ * std::hypot(xy[0], xy[1]);
    case Kind::Angular:
      return a_ + b_ * std::cos(mode_ * std::atan2(xy[1], xy[0]));
    case Kind::Nodal: {
      auto it = values_.find(node_id);
      if (it == values_.end()) {
        throw InvalidSpecError("nodal profile has no value for node " +
                               std::to_string(node_id));
      }
      return it->second;
    }
  }
  return a_;
}

namespace {

void check_sign(const Vector& v, bool strict, const std::string& name) {
  for (Index i = 0; i < v.size(); ++i) {
    const bool bad = strict ? !(v(i) > 0.0) : v(i) < 0.0;
    if (bad) {
      throw PositivityViolationError(
          name + " must be " + (strict ? "strictly positive" : "non-negative") +
          "; value " + std::to_string(v(i)) + " at node " + std::to_string(i));
    }
  }
}

}  // namespace

NodalCoefficients evaluate_coefficients(const CoefficientSet& set,
                                        const Mesh2D& mesh,
                                        const BoundaryMesh1D& boundary) {
  NodalCoefficients nc;
  nc.rho0 = set.rho0;
  nc.c = set.c;
  if (!(set.rho0 > 0.0)) {
    throw PositivityViolationError("rho0 must be strictly positive");
  }
  if (!(set.c > 0.0)) {
    throw PositivityViolationError("c must be strictly positive");
  }

  const int n = mesh.n_nodes();
  nc.d.resize(n);
  for (int i = 0; i < n; ++i) {
    nc.d(i) = set.d.value_at(i, mesh.nodes[i]);
  }

  const int nb = boundary.n_nodes();
  nc.mu.resize(nb);
  nc.sigma.resize(nb);
  nc.delta.resize(nb);
  nc.kappa.resize(nb);
  for (int j = 0; j < nb; ++j) {
    const auto& xy = mesh.nodes[boundary.nodes[j]];
    const int id = boundary.nodes[j];
    nc.mu(j) = set.mu.value_at(id, xy);
    nc.sigma(j) = set.sigma.value_at(id, xy);
    nc.delta(j) = set.delta.value_at(id, xy);
    nc.kappa(j) = set.kappa.value_at(id, xy);
  }

  check_sign(nc.d, false, "d");
  check_sign(nc.delta, false, "delta");
  check_sign(nc.kappa, false, "kappa");
  check_sign(nc.mu, true, "mu");
  check_sign(nc.sigma, true, "sigma");

  nc.d_is_zero = nc.d.size() == 0 || nc.d.lpNorm<Eigen::Infinity>() == 0.0;
  nc.delta_is_zero = nb == 0 || nc.delta.lpNorm<Eigen::Infinity>() == 0.0;
  nc.kappa_is_zero = nb == 0 || nc.kappa.lpNorm<Eigen::Infinity>() == 0.0;
  return nc;
}

}  // namespace abcwave
