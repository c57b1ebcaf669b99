#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "abcwave/config.hpp"
#include "abcwave/elliptic.hpp"
#include "abcwave/spectral.hpp"
#include "abcwave/system.hpp"
#include "abcwave/timeint.hpp"

namespace abcwave {

// Everything an experiment needs, derived once from a RunConfig: the mesh,
// the sampled coefficients, the assembled block system, the initial state,
// and the configuration with dt resolved to a concrete positive value.
struct PreparedSystem {
  RunConfig cfg;
  MeshPair geometry;
  NodalCoefficients nodal;
  BlockSystem system;
  StateVector x0;
};

PreparedSystem prepare(const RunConfig& cfg);

// State with independent uniform [-1, 1] entries from a fixed-seed PRNG.
StateVector random_state(int n_bulk, int n_boundary, std::uint64_t seed);

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct CheckTable {
  std::vector<CheckResult> checks;

  void add(std::string name, bool pass, double measured, double tolerance,
           std::string detail = "");
  bool all_pass() const;
  void print(std::ostream& out) const;
};

// The full invariant suite on an assembled system: matrix structure, energy
// pairing, dissipation identity, conservation laws along a short run,
// kernel and projector algebra, and the regime-specific exact solutions.
// Checks that do not apply to the coefficient regime are skipped.
CheckTable verify_invariants(const PreparedSystem& ps, std::uint64_t seed,
                             int n_random = 20);

// Dispatches on cfg.kind, writes artifacts into cfg.output.directory, and
// returns the process exit code (0 ok, 1 failed checks).
int run_experiment(const RunConfig& cfg, std::ostream& log);

}  // namespace abcwave
