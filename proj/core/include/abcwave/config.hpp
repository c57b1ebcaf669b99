#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "abcwave/coefficients.hpp"
#include "abcwave/geometry.hpp"
#include "abcwave/timeint.hpp"

namespace abcwave {

enum class ExperimentKind {
  Simulate,
  Spectrum,
  Steady,
  Verify,
  Convergence,
  Asymptotics,
};

std::string to_string(ExperimentKind kind);

// Initial data as profiles: u0, v0 are the displacements, u1, v1 the
// velocities (they become the w and z blocks).
struct InitialDataSpec {
  Profile u0 = Profile::constant(0.0);
  Profile v0 = Profile::constant(0.0);
  Profile u1 = Profile::constant(0.0);
  Profile v1 = Profile::constant(0.0);
};

struct OutputConfig {
  std::string directory = "out";
  std::vector<double> snapshot_times;
  bool vtk = false;
  bool dump_matrices = false;
};

struct RunConfig {
  DomainSpec domain;
  CoefficientSet coefficients;
  InitialDataSpec initial;
  StepperConfig stepper;  // stepper.dt <= 0 means "derive from the mesh"
  OutputConfig output;
  ExperimentKind kind = ExperimentKind::Simulate;
  std::uint64_t seed = 0;
};

// INI-style configuration:
//   - sections [domain], [coefficients], [initial], [stepper], [output]
//   - key = value lines, '#' starts a comment
//   - scalar fields take profile strings "constant:v", "radial:a,b",
//     "angular:a,b,mode", "file:relative/path.csv"
// Unknown sections or keys are hard errors with the offending line number.
// Nodal profile files resolve relative to the configuration file.
RunConfig parse_config(const std::filesystem::path& path);

// Same grammar from an in-memory string; file profiles resolve against dir.
RunConfig parse_config_text(const std::string& text,
                            const std::filesystem::path& dir = ".");

}  // namespace abcwave
