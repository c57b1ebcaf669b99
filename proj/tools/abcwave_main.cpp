#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "abcwave/config.hpp"
#include "abcwave/errors.hpp"
#include "abcwave/experiments.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_subcommand(CLI::App& app, const std::string& name,
                    const std::string& description,
                    abcwave::ExperimentKind kind, CliOptions& opts,
                    abcwave::ExperimentKind& selected, bool& has_selected) {
  CLI::App* sub = app.add_subcommand(name, description);
  sub->add_option("--config", opts.config_path, "Path to the INI config file")
      ->required();
  sub->add_option("--out", opts.out_dir,
                  "Output directory (overrides [output] directory)");
  sub->add_option("--seed", opts.seed, "Seed for randomized checks")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  sub->callback([&selected, &has_selected, kind]() {
    selected = kind;
    has_selected = true;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulator and spectral analyzer for damped waves with dynamic "
      "non-local boundary conditions on disk and annulus domains"};
  app.require_subcommand(1);

  CliOptions opts;
  abcwave::ExperimentKind selected = abcwave::ExperimentKind::Simulate;
  bool has_selected = false;

  add_subcommand(app, "simulate", "Time-step the system and record the series",
                 abcwave::ExperimentKind::Simulate, opts, selected, has_selected);
  add_subcommand(app, "spectrum", "Dense spectrum of the generator with checks",
                 abcwave::ExperimentKind::Spectrum, opts, selected, has_selected);
  add_subcommand(app, "steady", "Steady boundary profile of the ramp solution",
                 abcwave::ExperimentKind::Steady, opts, selected, has_selected);
  add_subcommand(app, "verify", "Run the invariant check suite",
                 abcwave::ExperimentKind::Verify, opts, selected, has_selected);
  add_subcommand(app, "convergence", "Temporal and mesh refinement tables",
                 abcwave::ExperimentKind::Convergence, opts, selected,
                 has_selected);
  add_subcommand(app, "asymptotics",
                 "Compare the large-time state against its predicted limit",
                 abcwave::ExperimentKind::Asymptotics, opts, selected,
                 has_selected);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (!has_selected) return 2;

  try {
    abcwave::RunConfig cfg = abcwave::parse_config(opts.config_path);
    cfg.kind = selected;
    if (!opts.out_dir.empty()) cfg.output.directory = opts.out_dir;
    if (opts.seed_set) cfg.seed = opts.seed;
    return abcwave::run_experiment(cfg, std::cout);
  } catch (const abcwave::ConfigParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const abcwave::ConfigValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const abcwave::InvalidSpecError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const abcwave::PositivityViolationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const abcwave::CapExceededError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const abcwave::SingularSystemError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const abcwave::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
