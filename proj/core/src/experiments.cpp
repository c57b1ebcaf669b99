#include "abcwave/experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>

#include "abcwave/io.hpp"

namespace abcwave {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double inf_norm(const StateVector& x) {
  return x.pack().lpNorm<Eigen::Infinity>();
}

double asymmetry(const SparseMatrix& a) {
  const SparseMatrix d = SparseMatrix(a.transpose()) - a;
  return max_abs(d);
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

json manifest_base(const PreparedSystem& ps) {
  const RunConfig& cfg = ps.cfg;
  json j;
  j["tool"] = "abcwave";
  j["version"] = "0.1.0";
  j["experiment"] = to_string(cfg.kind);
  j["seed"] = cfg.seed;
  j["domain"] = {
      {"kind", cfg.domain.kind == DomainSpec::Kind::Disk ? "disk" : "annulus"},
      {"outer_radius", cfg.domain.outer_radius},
      {"inner_radius", cfg.domain.inner_radius},
      {"n_theta", cfg.domain.n_theta},
      {"n_r", cfg.domain.n_r},
  };
  j["mesh"] = {
      {"n_nodes", ps.geometry.mesh.n_nodes()},
      {"n_triangles", ps.geometry.mesh.n_triangles()},
      {"n_boundary", ps.geometry.boundary.n_nodes()},
      {"h_min", ps.geometry.mesh.min_edge_length()},
      {"domain_measure", domain_measure(ps.geometry.mesh)},
      {"boundary_measure", boundary_measure(ps.geometry.boundary)},
      {"dof", ps.system.dof()},
  };
  j["coefficients"] = {
      {"rho0", ps.nodal.rho0},
      {"c", ps.nodal.c},
      {"d_is_zero", ps.nodal.d_is_zero},
      {"delta_is_zero", ps.nodal.delta_is_zero},
      {"kappa_is_zero", ps.nodal.kappa_is_zero},
  };
  j["stepper"] = {
      {"dt", cfg.stepper.dt},
      {"t_end", cfg.stepper.t_end},
      {"record_every", cfg.stepper.record_every},
      {"solver_tol", cfg.stepper.solver_tol},
  };
  j["outputs"] = json::array();
  return j;
}

std::string snapshot_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "snapshot_%03d.csv", index);
  return buf;
}

}  // namespace

PreparedSystem prepare(const RunConfig& cfg) {
  PreparedSystem ps;
  ps.cfg = cfg;
  ps.geometry = build_mesh(cfg.domain);
  const Mesh2D& mesh = ps.geometry.mesh;
  const BoundaryMesh1D& boundary = ps.geometry.boundary;
  ps.nodal = evaluate_coefficients(cfg.coefficients, mesh, boundary);

  const BulkMatrices bulk = assemble_bulk(mesh, ps.nodal);
  const SurfaceMatrices surface = assemble_surface(boundary, ps.nodal);
  const TraceMap trace = build_trace_map(mesh, boundary);
  ps.system = build_generator(bulk, surface, trace, ps.nodal);

  if (ps.cfg.stepper.dt <= 0.0) {
    ps.cfg.stepper.dt = default_time_step(mesh, ps.nodal.c);
  }

  const int n = mesh.n_nodes();
  const int nb = boundary.n_nodes();
  ps.x0 = StateVector::zero(n, nb);
  for (int i = 0; i < n; ++i) {
    ps.x0.u(i) = cfg.initial.u0.value_at(i, mesh.nodes[i]);
    ps.x0.w(i) = cfg.initial.u1.value_at(i, mesh.nodes[i]);
  }
  for (int j = 0; j < nb; ++j) {
    const int id = boundary.nodes[j];
    ps.x0.v(j) = cfg.initial.v0.value_at(id, mesh.nodes[id]);
    ps.x0.z(j) = cfg.initial.v1.value_at(id, mesh.nodes[id]);
  }
  return ps;
}

StateVector random_state(int n_bulk, int n_boundary, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  StateVector x = StateVector::zero(n_bulk, n_boundary);
  for (int i = 0; i < n_bulk; ++i) x.u(i) = dist(gen);
  for (int j = 0; j < n_boundary; ++j) x.v(j) = dist(gen);
  for (int i = 0; i < n_bulk; ++i) x.w(i) = dist(gen);
  for (int j = 0; j < n_boundary; ++j) x.z(j) = dist(gen);
  return x;
}

void CheckTable::add(std::string name, bool pass, double measured,
                     double tolerance, std::string detail) {
  checks.push_back(
      {std::move(name), pass, measured, tolerance, std::move(detail)});
}

bool CheckTable::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

void CheckTable::print(std::ostream& out) const {
  int passed = 0;
  for (const auto& c : checks) {
    if (c.pass) ++passed;
    out << (c.pass ? "[PASS] " : "[FAIL] ") << std::left << std::setw(34)
        << c.name << std::right << "  measured=" << std::scientific
        << std::setprecision(3) << c.measured << "  tol=" << c.tolerance;
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << '\n';
  }
  out << passed << "/" << checks.size() << " checks passed\n";
  out.copyfmt(std::ios(nullptr));
}

CheckTable verify_invariants(const PreparedSystem& ps, std::uint64_t seed,
                             int n_random) {
  const BlockSystem& sys = ps.system;
  const NodalCoefficients& nc = ps.nodal;
  CheckTable table;

  {
    double worst = 0.0;
    for (const SparseMatrix* m :
         {&sys.bulk.mass, &sys.bulk.stiffness, &sys.bulk.weighted_mass,
          &sys.surface.mass, &sys.surface.stiffness_sigma, &sys.surface.mass_mu,
          &sys.surface.mass_delta, &sys.surface.mass_kappa}) {
      worst = std::max(worst, asymmetry(*m) / (1.0 + max_abs(*m)));
    }
    table.add("matrices_symmetric", worst <= 1e-12, worst, 1e-12);
  }

  {
    const Vector ones_b = Vector::Ones(sys.n_bulk);
    const Vector ones_g = Vector::Ones(sys.n_boundary);
    const double rk = (sys.bulk.stiffness * ones_b).lpNorm<Eigen::Infinity>() /
                      (1.0 + max_abs(sys.bulk.stiffness));
    const double rs =
        (sys.surface.stiffness_sigma * ones_g).lpNorm<Eigen::Infinity>() /
        (1.0 + max_abs(sys.surface.stiffness_sigma));
    const double worst = std::max(rk, rs);
    table.add("stiffness_annihilates_constants", worst <= 1e-12, worst, 1e-12);
  }

  {
    int mismatches = 0;
    if (nc.d_is_zero != (max_abs(sys.bulk.weighted_mass) == 0.0)) ++mismatches;
    if (nc.delta_is_zero != (max_abs(sys.surface.mass_delta) == 0.0))
      ++mismatches;
    if (nc.kappa_is_zero != (max_abs(sys.surface.mass_kappa) == 0.0))
      ++mismatches;
    table.add("zero_flags_match_matrices", mismatches == 0,
              static_cast<double>(mismatches), 0.0);
  }

  {
    double worst_pair = 0.0;
    double worst_diss = 0.0;
    for (int k = 0; k < n_random; ++k) {
      const StateVector x =
          random_state(sys.n_bulk, sys.n_boundary, seed + 100 + k);
      const double xx = pseudo_inner(sys, x, x);
      worst_pair = std::max(
          worst_pair, std::abs(xx - 2.0 * energy(sys, x)) / (1.0 + std::abs(xx)));
      const DissipationPair dp = dissipation_check(sys, x);
      worst_diss =
          std::max(worst_diss, std::abs(dp.lhs - dp.rhs) / (1.0 + dp.rhs));
    }
    table.add("pairing_matches_energy", worst_pair <= 1e-12, worst_pair, 1e-12);
    table.add("dissipation_identity", worst_diss <= 1e-10, worst_diss, 1e-10);
  }

  {
    const DenseMatrix kb = expected_kernel(sys);
    double worst_flux = 0.0;
    double worst_step = 0.0;
    const MidpointStepper stepper(sys, ps.cfg.stepper.dt,
                                  ps.cfg.stepper.solver_tol);
    for (int j = 0; j < kb.cols(); ++j) {
      const Vector b = kb.col(j);
      worst_flux = std::max(worst_flux,
                            (sys.flux_block * b).lpNorm<Eigen::Infinity>() /
                                (1.0 + max_abs(sys.flux_block)));
      const StateVector xb = StateVector::unpack(b, sys.n_bulk, sys.n_boundary);
      const StateVector stepped = stepper.step(xb);
      worst_step = std::max(worst_step,
                            inf_norm(stepped - xb) / (1.0 + inf_norm(xb)));
    }
    table.add("flux_annihilates_kernel", worst_flux <= 1e-12, worst_flux, 1e-12);
    table.add("kernel_states_stationary", worst_step <= 1e-10, worst_step, 1e-10);
  }

  {
    StateVector x_run = ps.x0;
    if (inf_norm(x_run) == 0.0) {
      x_run = random_state(sys.n_bulk, sys.n_boundary, seed + 7);
    }
    StepperConfig sc = ps.cfg.stepper;
    sc.t_end = std::min(sc.t_end, 400.0 * sc.dt);
    sc.record_every = 1;
    const RunResult rr = run(sys, x_run, sc);
    const double e0 = energy(sys, x_run);

    const double r_ident = rr.max_identity_residual / (1.0 + e0);
    table.add("energy_identity_run", r_ident <= 1e-10, r_ident, 1e-10,
              std::to_string(rr.steps_taken) + " steps");

    const double r_l1 =
        rr.max_l1_drift / (1.0 + std::abs(sys.functionals.l1(x_run)));
    table.add("l1_conserved_run", r_l1 <= 1e-10, r_l1, 1e-10);

    if (nc.kappa_is_zero) {
      const double r_l2 =
          rr.max_l2_drift / (1.0 + std::abs(sys.functionals.l2(x_run)));
      table.add("l2_conserved_run", r_l2 <= 1e-10, r_l2, 1e-10);
    }

    double worst_rise = 0.0;
    for (size_t i = 1; i < rr.series.size(); ++i) {
      worst_rise = std::max(
          worst_rise, (rr.series[i].energy - rr.series[i - 1].energy) / (1.0 + e0));
    }
    table.add("energy_monotone_run", worst_rise <= 1e-12, worst_rise, 1e-12);

    if (nc.d_is_zero && nc.delta_is_zero) {
      const int n_steps = std::min(200, rr.steps_taken);
      const MidpointStepper fwd(sys, sc.dt, sc.solver_tol);
      const MidpointStepper bwd(sys, -sc.dt, sc.solver_tol);
      StateVector x = x_run;
      for (int k = 0; k < n_steps; ++k) x = fwd.step(x);
      for (int k = 0; k < n_steps; ++k) x = bwd.step(x);
      const double r = inf_norm(x - x_run) / (1.0 + inf_norm(x_run));
      table.add("time_reversal", r <= 1e-8, r, 1e-8,
                std::to_string(n_steps) + " steps each way");
    }
  }

  if (nc.kappa_is_zero || !nc.d_is_zero) {
    const ProjectorSet proj = build_projectors(sys);
    double worst_idem = 0.0;
    double worst_l = 0.0;
    for (int k = 0; k < n_random; ++k) {
      const StateVector x =
          random_state(sys.n_bulk, sys.n_boundary, seed + 500 + k);
      const StateVector pn = proj.project_null(x);
      worst_idem = std::max(worst_idem, inf_norm(proj.project_null(pn) - pn) /
                                            (1.0 + inf_norm(pn)));
      const StateVector pm = proj.project_complement(x);
      worst_l = std::max(worst_l, std::abs(sys.functionals.l1(pm)) /
                                      (1.0 + std::abs(sys.functionals.l1(x))));
      if (nc.kappa_is_zero) {
        worst_l = std::max(worst_l, std::abs(sys.functionals.l2(pm)) /
                                        (1.0 + std::abs(sys.functionals.l2(x))));
      }
    }
    table.add("projector_idempotent", worst_idem <= 1e-12, worst_idem, 1e-12);
    table.add("projector_kills_invariants", worst_l <= 1e-12, worst_l, 1e-12);

    const DenseMatrix kb = expected_kernel(sys);
    double worst_fix = 0.0;
    for (int j = 0; j < kb.cols(); ++j) {
      const StateVector b =
          StateVector::unpack(kb.col(j), sys.n_bulk, sys.n_boundary);
      worst_fix = std::max(worst_fix, inf_norm(proj.project_null(b) - b));
    }
    table.add("projector_fixes_kernel", worst_fix <= 1e-12, worst_fix, 1e-12);
  }

  if (nc.d_is_zero && !nc.kappa_is_zero) {
    const Vector p = steady_boundary_profile(sys.surface, nc);
    const double r = ramp_residual(sys, p, 1.0) / (1.0 + nc.rho0);
    table.add("ramp_solution_residual", r <= 1e-12, r, 1e-12);
  }

  if (!nc.kappa_is_zero && nc.kappa.maxCoeff() == nc.kappa.minCoeff() &&
      nc.sigma.maxCoeff() == nc.sigma.minCoeff()) {
    const Vector p = steady_boundary_profile(sys.surface, nc);
    const double expected = -nc.rho0 / nc.kappa(0);
    const double r = (p.array() - expected).abs().maxCoeff() /
                     (1.0 + std::abs(expected));
    table.add("steady_profile_constant", r <= 1e-12, r, 1e-12);
  }

  return table;
}

namespace {

int run_simulate(const PreparedSystem& ps, std::ostream& log) {
  const fs::path out_dir(ps.cfg.output.directory);
  ensure_directory(out_dir);
  const BlockSystem& sys = ps.system;

  json manifest = manifest_base(ps);
  write_mesh_csv(out_dir, ps.geometry.mesh, ps.geometry.boundary);
  for (const char* f : {"nodes.csv", "triangles.csv", "gamma1.csv"}) {
    manifest["outputs"].push_back(f);
  }

  std::vector<double> times = ps.cfg.output.snapshot_times;
  std::sort(times.begin(), times.end());
  size_t next = 0;
  int written = 0;
  json snaps = json::array();
  const double half_dt = 0.5 * ps.cfg.stepper.dt;
  auto maybe_snapshot = [&](double t, const StateVector& x) {
    while (next < times.size() && times[next] <= t + half_dt) {
      const std::string name = snapshot_name(written);
      write_snapshot_csv(out_dir / name, sys.trace, x);
      snaps.push_back(
          {{"file", name}, {"requested_t", times[next]}, {"t", t}});
      manifest["outputs"].push_back(name);
      ++next;
      ++written;
    }
  };
  maybe_snapshot(0.0, ps.x0);

  RunOptions opts;
  opts.on_step = maybe_snapshot;
  const RunResult rr = run(sys, ps.x0, ps.cfg.stepper, opts);

  write_time_series_csv(out_dir / "series.csv", rr.series);
  manifest["outputs"].push_back("series.csv");

  if (ps.cfg.output.vtk) {
    const StateVector& xe = rr.final_state;
    write_mesh_vtk(out_dir / "mesh.vtk", ps.geometry.mesh,
                   {{"u", xe.u},
                    {"v", sys.trace.extend_to_bulk(xe.v)},
                    {"w", xe.w},
                    {"z", sys.trace.extend_to_bulk(xe.z)}});
    manifest["outputs"].push_back("mesh.vtk");
  }
  if (ps.cfg.output.dump_matrices) {
    write_coordinate_matrix(out_dir / "mass_block.coo", sys.mass_block);
    write_coordinate_matrix(out_dir / "flux_block.coo", sys.flux_block);
    manifest["outputs"].push_back("mass_block.coo");
    manifest["outputs"].push_back("flux_block.coo");
  }

  manifest["snapshots"] = snaps;
  manifest["run"] = {
      {"steps", rr.steps_taken},
      {"final_time", rr.final_time},
      {"energy_initial", energy(sys, ps.x0)},
      {"energy_final", energy(sys, rr.final_state)},
      {"max_identity_residual", rr.max_identity_residual},
      {"max_l1_drift", rr.max_l1_drift},
      {"max_l2_drift", rr.max_l2_drift},
  };
  write_json(out_dir / "manifest.json", manifest);

  log << "simulate: " << rr.steps_taken << " steps to t=" << rr.final_time
      << ", E " << energy(sys, ps.x0) << " -> " << energy(sys, rr.final_state)
      << ", max identity residual " << rr.max_identity_residual << "\n";
  log << "simulate: wrote " << out_dir.string() << "/series.csv and "
      << written << " snapshot(s)\n";
  return 0;
}

int run_spectrum(const PreparedSystem& ps, std::ostream& log) {
  const fs::path out_dir(ps.cfg.output.directory);
  ensure_directory(out_dir);
  const BlockSystem& sys = ps.system;

  const SpectrumReport rep = analyze_spectrum(sys);
  const DissipativityCheck diss = check_dissipativity(rep);
  const AxisAudit audit = imaginary_axis_audit(rep, sys);

  write_spectrum_csv(out_dir / "spectrum.csv", rep.eigenvalues);

  json near = json::array();
  for (const auto& ev : rep.near_imaginary) {
    near.push_back({{"re", ev.real()}, {"im", ev.imag()}});
  }
  json summary = {
      {"dof", sys.dof()},
      {"scale", rep.scale},
      {"tol_zero", rep.tol_zero},
      {"tol_axis", rep.tol_axis},
      {"zero_count", rep.zero_count},
      {"zero_count_expected", rep.zero_count_expected},
      {"kernel_dim_svd", rep.kernel_dim_svd},
      {"kernel_dim_expected", rep.kernel_dim_expected},
      {"kernel_matches_expected", rep.kernel_matches_expected},
      {"kernel_ambiguous", rep.kernel_ambiguous},
      {"kernel_span_gap", rep.kernel_span_gap},
      {"min_real_nonzero", rep.min_real_nonzero},
      {"dissipative", diss.pass},
      {"dissipative_threshold", diss.threshold},
      {"near_imaginary", near},
      {"axis_audit_asserted", audit.asserted},
      {"axis_audit_pass", audit.pass},
      {"spectral_gap", audit.spectral_gap},
      {"max_eigen_residual", rep.max_eigen_residual},
  };
  write_json(out_dir / "summary.json", summary);

  json manifest = manifest_base(ps);
  manifest["outputs"].push_back("spectrum.csv");
  manifest["outputs"].push_back("summary.json");
  write_json(out_dir / "manifest.json", manifest);

  log << "spectrum: " << rep.eigenvalues.size() << " eigenvalues, "
      << rep.zero_count << " at zero (expected " << rep.zero_count_expected
      << "), kernel dim " << rep.kernel_dim_svd << " (expected "
      << rep.kernel_dim_expected << "), min Re nonzero "
      << rep.min_real_nonzero << ", " << rep.near_imaginary.size()
      << " near-imaginary\n";

  const bool ok =
      diss.pass && rep.kernel_matches_expected && (!audit.asserted || audit.pass);
  if (!ok) log << "spectrum: FAILED model checks\n";
  return ok ? 0 : 1;
}

int run_steady(const PreparedSystem& ps, std::ostream& log) {
  const fs::path out_dir(ps.cfg.output.directory);
  ensure_directory(out_dir);
  const BlockSystem& sys = ps.system;

  const Vector p = steady_boundary_profile(sys.surface, ps.nodal);
  const Vector resid =
      (sys.surface.stiffness_sigma + sys.surface.mass_kappa) * p +
      ps.nodal.rho0 * (sys.surface.mass * Vector::Ones(sys.n_boundary));
  const double r = resid.lpNorm<Eigen::Infinity>() / (1.0 + ps.nodal.rho0);
  const bool ok = r <= 1e-10;

  write_boundary_profile_csv(out_dir / "steady_profile.csv",
                             ps.geometry.boundary, p);
  json summary = {
      {"residual", r},
      {"tolerance", 1e-10},
      {"pass", ok},
      {"min", p.minCoeff()},
      {"max", p.maxCoeff()},
  };
  if (!ps.nodal.kappa_is_zero &&
      ps.nodal.kappa.maxCoeff() == ps.nodal.kappa.minCoeff()) {
    summary["constant_expected"] = -ps.nodal.rho0 / ps.nodal.kappa(0);
  }
  write_json(out_dir / "summary.json", summary);

  json manifest = manifest_base(ps);
  manifest["outputs"].push_back("steady_profile.csv");
  manifest["outputs"].push_back("summary.json");
  write_json(out_dir / "manifest.json", manifest);

  log << "steady: profile in [" << p.minCoeff() << ", " << p.maxCoeff()
      << "], residual " << r << (ok ? "" : " FAILED") << "\n";
  return ok ? 0 : 1;
}

int run_verify(const PreparedSystem& ps, std::ostream& log) {
  const fs::path out_dir(ps.cfg.output.directory);
  ensure_directory(out_dir);

  const CheckTable table = verify_invariants(ps, ps.cfg.seed);
  table.print(log);

  json checks = json::array();
  for (const auto& c : table.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"measured", c.measured},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail}});
  }
  json summary = {{"all_pass", table.all_pass()}, {"checks", checks}};
  write_json(out_dir / "verify.json", summary);

  json manifest = manifest_base(ps);
  manifest["outputs"].push_back("verify.json");
  write_json(out_dir / "manifest.json", manifest);
  return table.all_pass() ? 0 : 1;
}

std::pair<double, double> limit_constants(const PreparedSystem& ps) {
  const BlockSystem& sys = ps.system;
  const NodalCoefficients& nc = ps.nodal;
  try {
    if (!nc.kappa_is_zero && !nc.d_is_zero) {
      const ProjectorSet proj = build_projectors(sys);
      return {proj.alpha(ps.x0), kNaN};
    }
    if (nc.kappa_is_zero && (!nc.d_is_zero || !nc.delta_is_zero)) {
      const ProjectorSet proj = build_projectors(sys);
      return {proj.beta(ps.x0), proj.gamma(ps.x0)};
    }
    if (nc.d_is_zero && !nc.kappa_is_zero && !nc.delta_is_zero) {
      const UndampedLimits ul = undamped_limits(sys, ps.x0);
      return {ul.velocity_limit, kNaN};
    }
  } catch (const Error&) {
  }
  return {kNaN, kNaN};
}

int run_convergence(const RunConfig& cfg, std::ostream& log) {
  const fs::path out_dir(cfg.output.directory);
  ensure_directory(out_dir);

  PreparedSystem ps = prepare(cfg);
  const BlockSystem& sys = ps.system;

  // Temporal order: halve dt twice, compare consecutive final states at the
  // same end time in the phase-space norm.
  const double dt0 = ps.cfg.stepper.dt;
  const long n0 = std::max<long>(
      1, std::lround(std::ceil(std::min(ps.cfg.stepper.t_end, 10.0) / dt0)));
  const double t_cmp = static_cast<double>(n0) * dt0;
  StateVector finals[3] = {ps.x0, ps.x0, ps.x0};
  for (int k = 0; k < 3; ++k) {
    StepperConfig sc = ps.cfg.stepper;
    sc.dt = dt0 / (1 << k);
    sc.t_end = t_cmp;
    sc.record_every = 1 << 28;
    finals[k] = run(sys, ps.x0, sc).final_state;
  }
  const double err01 = state_norm(sys, finals[0] - finals[1]);
  const double err12 = state_norm(sys, finals[1] - finals[2]);
  const double order = std::log2(err01 / err12);

  {
    std::ofstream out(out_dir / "convergence_dt.csv");
    out << "dt,steps,diff_to_half_dt,order_estimate\n";
    out << std::scientific << std::setprecision(12);
    out << dt0 << ',' << n0 << ',' << err01 << ',' << order << '\n';
    out << dt0 / 2 << ',' << 2 * n0 << ',' << err12 << ',' << "nan" << '\n';
  }

  // Mesh refinement: discrete measures and predicted limit constants on
  // refinements of the configured mesh.
  json mesh_rows = json::array();
  {
    std::ofstream out(out_dir / "convergence_mesh.csv");
    out << "level,n_theta,n_r,n_nodes,h_min,domain_measure,boundary_measure,"
           "limit_const_1,limit_const_2\n";
    out << std::scientific << std::setprecision(12);
    for (int level = 0; level < 3; ++level) {
      const int m = 1 << level;
      RunConfig rc = cfg;
      rc.domain.n_theta = cfg.domain.n_theta * m;
      rc.domain.n_r = cfg.domain.n_r * m;
      const PreparedSystem rps = prepare(rc);
      const auto [c1, c2] = limit_constants(rps);
      out << level << ',' << rc.domain.n_theta << ',' << rc.domain.n_r << ','
          << rps.geometry.mesh.n_nodes() << ','
          << rps.geometry.mesh.min_edge_length() << ','
          << domain_measure(rps.geometry.mesh) << ','
          << boundary_measure(rps.geometry.boundary) << ',' << c1 << ',' << c2
          << '\n';
      mesh_rows.push_back({{"level", level},
                           {"n_nodes", rps.geometry.mesh.n_nodes()},
                           {"domain_measure", domain_measure(rps.geometry.mesh)},
                           {"boundary_measure",
                            boundary_measure(rps.geometry.boundary)},
                           {"limit_const_1", c1},
                           {"limit_const_2", c2}});
    }
  }

  json summary = {
      {"temporal", {{"dt", dt0}, {"t_compare", t_cmp}, {"diff_dt_half", err01},
                    {"diff_half_quarter", err12}, {"order_estimate", order}}},
      {"mesh_levels", mesh_rows},
  };
  write_json(out_dir / "summary.json", summary);

  json manifest = manifest_base(ps);
  for (const char* f :
       {"convergence_dt.csv", "convergence_mesh.csv", "summary.json"}) {
    manifest["outputs"].push_back(f);
  }
  write_json(out_dir / "manifest.json", manifest);

  log << "convergence: temporal order estimate " << order << " (diffs " << err01
      << ", " << err12 << ")\n";
  return std::isfinite(order) ? 0 : 1;
}

int run_asymptotics(const PreparedSystem& ps, std::ostream& log) {
  const fs::path out_dir(ps.cfg.output.directory);
  ensure_directory(out_dir);
  const BlockSystem& sys = ps.system;
  const NodalCoefficients& nc = ps.nodal;
  if (nc.d_is_zero && nc.delta_is_zero) {
    throw InvalidSpecError(
        "asymptotics requires damping somewhere (d != 0 or delta != 0)");
  }

  const double e0 = energy(sys, ps.x0);
  const double nx0 = state_norm(sys, ps.x0);
  const double stop_tol = 1e-12 * (1.0 + e0);

  json summary;
  RunOptions opts;
  StateVector target = StateVector::zero(sys.n_bulk, sys.n_boundary);
  bool ramp_case = false;
  Vector v_lim;
  double w_lim = 0.0;

  if (!nc.d_is_zero || nc.kappa_is_zero) {
    const ProjectorSet proj = build_projectors(sys);
    target = proj.project_null(ps.x0);
    summary["case"] = "kernel_projection";
    if (proj.which == ProjectorSet::Case::ReactionPresent) {
      summary["predicted"] = {{"u_const", proj.alpha(ps.x0)}};
    } else {
      summary["predicted"] = {{"u_const", proj.beta(ps.x0)},
                              {"v_const", proj.gamma(ps.x0)},
                              {"det_c", proj.det_c}};
    }
    opts.stop_when = [&sys, stop_tol](double, const StateVector& x) {
      return energy(sys, x) <= stop_tol;
    };
  } else {
    // d == 0, kappa != 0, delta != 0: velocity locks to a constant rate and
    // the boundary displacement to rate * profile, while u itself ramps.
    ramp_case = true;
    const UndampedLimits ul = undamped_limits(sys, ps.x0);
    v_lim = ul.v_limit;
    w_lim = ul.velocity_limit;
    summary["case"] = "ramp_limit";
    summary["predicted"] = {{"velocity", ul.velocity_limit}};
    opts.stop_when = [&sys, v_lim = ul.v_limit, w_lim, stop_tol](
                         double, const StateVector& x) {
      StateVector dev = x;
      dev.v -= v_lim;
      dev.w.array() -= w_lim;
      return energy(sys, dev) <= stop_tol;
    };
  }

  const RunResult rr = run(sys, ps.x0, ps.cfg.stepper, opts);
  write_time_series_csv(out_dir / "series.csv", rr.series);

  const StateVector& xe = rr.final_state;
  if (!ramp_case) {
    const double gap = state_norm(sys, xe - target);
    summary["measured"] = {
        {"mean_u", mean_u(sys, xe)},
        {"mean_v", mean_v(sys, xe)},
        {"gap_norm", gap},
        {"gap_relative", nx0 > 0 ? gap / nx0 : gap},
    };
  } else {
    const double w_meas = sys.functionals.one_omega.dot(xe.w) /
                          sys.functionals.domain_mass;
    StateVector dev = xe;
    dev.v -= v_lim;
    dev.w.array() -= w_lim;
    summary["measured"] = {
        {"velocity", w_meas},
        {"velocity_error", std::abs(w_meas - w_lim)},
        {"v_profile_error", (xe.v - v_lim).lpNorm<Eigen::Infinity>()},
        {"deviation_energy", energy(sys, dev)},
    };
  }
  summary["run"] = {{"steps", rr.steps_taken},
                    {"final_time", rr.final_time},
                    {"stopped_early", rr.stopped_early},
                    {"energy_initial", e0},
                    {"energy_final", energy(sys, xe)}};
  write_json(out_dir / "summary.json", summary);

  json manifest = manifest_base(ps);
  manifest["outputs"].push_back("series.csv");
  manifest["outputs"].push_back("summary.json");
  write_json(out_dir / "manifest.json", manifest);

  log << "asymptotics[" << summary["case"].get<std::string>() << "]: "
      << rr.steps_taken << " steps to t=" << rr.final_time
      << (rr.stopped_early ? " (stopped early)" : "") << "\n";
  log << "asymptotics: " << summary["measured"].dump() << "\n";
  return 0;
}

}  // namespace

int run_experiment(const RunConfig& cfg, std::ostream& log) {
  if (cfg.kind == ExperimentKind::Convergence) {
    return run_convergence(cfg, log);
  }
  const PreparedSystem ps = prepare(cfg);
  switch (cfg.kind) {
    case ExperimentKind::Simulate:
      return run_simulate(ps, log);
    case ExperimentKind::Spectrum:
      return run_spectrum(ps, log);
    case ExperimentKind::Steady:
      return run_steady(ps, log);
    case ExperimentKind::Verify:
      return run_verify(ps, log);
    case ExperimentKind::Asymptotics:
      return run_asymptotics(ps, log);
    case ExperimentKind::Convergence:
      break;
  }
  throw Error("unhandled experiment kind");
}

}  // namespace abcwave
