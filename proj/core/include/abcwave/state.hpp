#pragma once

#include "abcwave/linalg.hpp"

namespace abcwave {

// First-order unknowns: u (bulk displacement), v (boundary displacement),
// w = u_t, z = v_t. Packed layout is [u; v; w; z].
struct StateVector {
  Vector u, v, w, z;

  static StateVector zero(int n_bulk, int n_boundary) {
    StateVector x;
    x.u = Vector::Zero(n_bulk);
    x.v = Vector::Zero(n_boundary);
    x.w = Vector::Zero(n_bulk);
    x.z = Vector::Zero(n_boundary);
    return x;
  }

  Vector pack() const {
    Vector p(u.size() + v.size() + w.size() + z.size());
    p << u, v, w, z;
    return p;
  }

  static StateVector unpack(const Vector& p, int n_bulk, int n_boundary) {
    if (p.size() != 2 * (n_bulk + n_boundary)) {
      throw DimensionMismatchError("packed state has wrong size");
    }
    StateVector x;
    x.u = p.segment(0, n_bulk);
    x.v = p.segment(n_bulk, n_boundary);
    x.w = p.segment(n_bulk + n_boundary, n_bulk);
    x.z = p.segment(2 * n_bulk + n_boundary, n_boundary);
    return x;
  }

  StateVector operator+(const StateVector& o) const {
    return {u + o.u, v + o.v, w + o.w, z + o.z};
  }
  StateVector operator-(const StateVector& o) const {
    return {u - o.u, v - o.v, w - o.w, z - o.z};
  }
  StateVector operator*(double s) const { return {s * u, s * v, s * w, s * z}; }
};

inline StateVector operator*(double s, const StateVector& x) { return x * s; }

// Linear functional on states, stored as one weight vector per block.
struct StateCovector {
  Vector on_u, on_v, on_w, on_z;

  double operator()(const StateVector& x) const {
    double s = 0.0;
    if (on_u.size() > 0) s += on_u.dot(x.u);
    if (on_v.size() > 0) s += on_v.dot(x.v);
    if (on_w.size() > 0) s += on_w.dot(x.w);
    if (on_z.size() > 0) s += on_z.dot(x.z);
    return s;
  }

  StateCovector scaled(double s) const {
    return {s * on_u, s * on_v, s * on_w, s * on_z};
  }

  static StateCovector combine(double a, const StateCovector& x, double b,
                               const StateCovector& y) {
    return {a * x.on_u + b * y.on_u, a * x.on_v + b * y.on_v,
            a * x.on_w + b * y.on_w, a * x.on_z + b * y.on_z};
  }
};

}  // namespace abcwave
