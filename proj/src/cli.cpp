#include "bargmann/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "bargmann/batch.hpp"
#include "bargmann/quantum.hpp"
#include "bargmann/symmetry.hpp"

namespace bargmann {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

CheckResult make_check(std::string_view name, double value, double tolerance, bool passed,
                       std::string detail, const Stopwatch& clock) {
  CheckResult c;
  c.name = std::string(name);
  c.value = value;
  c.tolerance = tolerance;
  c.passed = passed && std::isfinite(value);
  c.detail = std::move(detail);
  c.runtime_seconds = clock.seconds();
  return c;
}

std::vector<std::string> selected_checks(const Scenario& sc, Command command) {
  const std::vector<std::string_view> trajectory_checks = {kCheckProjection, kCheckVertical,
                                                           kCheckConstraint, kCheckCharges};
  std::vector<std::string> out;
  switch (command) {
    case Command::kSimulate:
      for (auto c : trajectory_checks) {
        if (sc.wants(c)) out.emplace_back(c);
      }
      break;
    case Command::kCheckSymmetries:
      out.emplace_back(kCheckSymmetries);
      break;
    case Command::kCheckQuantum:
      out.emplace_back(kCheckQuantum);
      break;
    case Command::kCheckAll:
      if (!sc.checks.empty()) return sc.checks;
      for (auto c : trajectory_checks) out.emplace_back(c);
      out.emplace_back(kCheckSymmetries);
      if (sc.potential.family == "free" || sc.potential.family == "harmonic") {
        out.emplace_back(kCheckQuantum);
      }
      break;
  }
  return out;
}

// Random sample points for pointwise checks; keeps away from the Kepler
// centre where the softened potential has a kink.
std::vector<ExtendedPoint> sample_points(const Scenario& sc) {
  std::mt19937_64 rng(sc.seed);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  std::uniform_real_distribution<double> time(sc.t0, sc.t_end);
  std::uniform_real_distribution<double> vertical(-1.0, 1.0);
  std::vector<ExtendedPoint> pts;
  pts.reserve(static_cast<std::size_t>(sc.sample_points));
  while (pts.size() < static_cast<std::size_t>(sc.sample_points)) {
    ExtendedPoint p;
    p.t = time(rng);
    p.r = Vec3(box(rng), box(rng), box(rng));
    p.s = vertical(rng);
    if (sc.potential.family == "kepler" && p.r.norm() < 0.25) continue;
    pts.push_back(p);
  }
  return pts;
}

CheckResult symmetries_check(const Scenario& sc, const BargmannMetric& metric) {
  Stopwatch clock;
  const std::vector<ExtendedPoint> pts = sample_points(sc);
  double worst_residual = 0.0;
  double worst_lambda = 0.0;
  double worst_commutation = 0.0;
  std::string worst_name = "none";
  auto consider = [&](const std::string& name, const SweepStats& st) {
    if (st.max_residual >= worst_residual) {
      worst_residual = st.max_residual;
      worst_name = name;
    }
    worst_lambda = std::max(worst_lambda, st.max_lambda_error);
    worst_commutation = std::max(worst_commutation, st.max_commutation);
  };
  std::size_t count = 0;
  try {
    for (const NamedGenerator& gen : applicable_generators(sc.potential)) {
      const SchrodingerParams params = gen.params;
      consider(gen.name, conformal_sweep(metric, schrodinger_generator(params), pts,
                                         [params](const ExtendedPoint& p) {
                                           return expected_lambda(params, p);
                                         }));
      ++count;
    }
    consider("xi", conformal_sweep(metric, vertical_killing_field(), pts, {}));
    ++count;
  } catch (const std::exception& e) {
    return make_check(kCheckSymmetries, kNaN, sc.tolerances.symmetries, false, e.what(), clock);
  }
  const bool ok = worst_residual < sc.tolerances.symmetries &&
                  worst_lambda < sc.tolerances.symmetries &&
                  worst_commutation < sc.tolerances.commutation;
  std::ostringstream detail;
  detail << count << " generators at " << pts.size() << " points; worst residual from " << worst_name
         << "; max lambda error " << fmt_short(worst_lambda) << "; max [Y,xi] "
         << fmt_short(worst_commutation);
  return make_check(kCheckSymmetries, worst_residual, sc.tolerances.symmetries, ok, detail.str(),
                    clock);
}

CheckResult quantum_check(const Scenario& sc, const BargmannMetric& metric) {
  Stopwatch clock;
  std::vector<SchrodingerSolution> solutions;
  if (sc.potential.family == "harmonic") {
    solutions.push_back(harmonic_ground_state(sc.potential.omega, sc.mass, sc.hbar));
  } else {
    solutions.push_back(plane_wave(sc.mass * sc.v0, sc.mass, sc.hbar));
    solutions.push_back(gaussian_packet(1.0, sc.mass, sc.hbar));
  }
  const std::vector<ExtendedPoint> pts = sample_points(sc);
  const double scale = 2.0 * sc.mass / (sc.hbar * sc.hbar);
  double worst = 0.0;
  std::string worst_name = solutions.front().label;
  try {
    for (const SchrodingerSolution& psi : solutions) {
      for (const ExtendedPoint& p : pts) {
        const LiftComparison cmp = lift_equivalence_check(metric, psi, p);
        const double v = std::max(cmp.lifted, scale * cmp.residual);
        if (!(v <= worst)) {
          worst = v;
          worst_name = psi.label;
        }
      }
    }
  } catch (const std::exception& e) {
    return make_check(kCheckQuantum, kNaN, sc.tolerances.quantum, false, e.what(), clock);
  }
  std::ostringstream detail;
  detail << solutions.size() << " solutions at " << pts.size() << " points; worst " << worst_name;
  return make_check(kCheckQuantum, worst, sc.tolerances.quantum, worst < sc.tolerances.quantum,
                    detail.str(), clock);
}

}  // namespace

Scenario apply_overrides(Scenario scenario, const RunOptions& options) {
  if (options.format) scenario.output_format = *options.format;
  if (options.dt) scenario.dt_step = *options.dt;
  if (options.t_end) scenario.t_end = *options.t_end;
  if (options.plot_data) scenario.plot_data = true;
  validate_scenario(scenario, "command line");
  return scenario;
}

ScenarioRun run_scenario(const Scenario& sc, Command command) {
  ScenarioRun run{sc, {}, std::nullopt, {}};
  run.report.scenario = sc.to_json();
  run.report.versions = build_versions();
  run.report.seed = sc.seed;

  const BargmannMetric metric = sc.metric();
  const std::vector<std::string> checks = selected_checks(sc, command);
  const bool needs_trajectory = command == Command::kSimulate || command == Command::kCheckAll;

  std::string trajectory_failure;
  if (needs_trajectory) {
    const ExtendedPoint p0{sc.t0, sc.r0, sc.s0};
    try {
      run.trajectory = integrate_null_geodesic(metric, p0, sc.v0, sc.dt_step, sc.t_end);
    } catch (const NonFiniteState& e) {
      trajectory_failure = e.what();
      run.trajectory = Trajectory{e.partial_samples(), sc.dt_step, metric};
    } catch (const std::exception& e) {
      trajectory_failure = e.what();
    }
  }

  for (const std::string& name : checks) {
    Stopwatch clock;
    const Tolerances& tol = sc.tolerances;
    const bool trajectory_check = name == kCheckProjection || name == kCheckVertical ||
                                  name == kCheckConstraint || name == kCheckCharges;
    if (trajectory_check && !trajectory_failure.empty()) {
      const double limit = name == kCheckProjection ? tol.projection
                           : name == kCheckVertical ? tol.vertical
                           : name == kCheckConstraint ? tol.constraint
                                                      : tol.charges;
      run.report.checks.push_back(make_check(name, kNaN, limit, false, trajectory_failure, clock));
      continue;
    }
    try {
      if (name == kCheckProjection) {
        const NewtonianTrajectory oracle =
            newtonian_oracle(metric.potential(), sc.r0, sc.v0, sc.t0, sc.dt_step, sc.t_end);
        const double dev = projection_deviation(*run.trajectory, oracle);
        run.report.checks.push_back(make_check(name, dev, tol.projection, dev < tol.projection,
                                               "max |r_geodesic - r_newton|", clock));
      } else if (name == kCheckVertical) {
        const double dev = vertical_check(*run.trajectory, sc.mass);
        run.report.checks.push_back(make_check(name, dev, tol.vertical, dev < tol.vertical,
                                               "max |s - (s0 - int L dt / m)|", clock));
      } else if (name == kCheckConstraint) {
        const double dev = constraint_drift(*run.trajectory);
        run.report.checks.push_back(
            make_check(name, dev, tol.constraint, dev < tol.constraint, "max |h0|", clock));
      } else if (name == kCheckCharges) {
        double worst = 0.0;
        std::string worst_name = "none";
        for (const NamedGenerator& gen : applicable_generators(sc.potential)) {
          ChargeSeries series{gen.name, charge_series(*run.trajectory,
                                                      schrodinger_generator(gen.params), sc.mass)};
          const auto [lo, hi] = std::minmax_element(series.values.begin(), series.values.end());
          const double drift = *hi - *lo;
          if (!(drift <= worst)) {
            worst = drift;
            worst_name = gen.name;
          }
          run.charges.push_back(std::move(series));
        }
        ChargeSeries xi{"xi", charge_series(*run.trajectory, vertical_killing_field(), sc.mass)};
        bool xi_exact = true;
        for (double c : xi.values) xi_exact = xi_exact && c == sc.mass;
        run.charges.push_back(std::move(xi));
        std::ostringstream detail;
        detail << run.charges.size() << " charges; worst drift from " << worst_name
               << "; xi charge " << (xi_exact ? "equals" : "DIFFERS FROM") << " m at every sample";
        run.report.checks.push_back(
            make_check(name, worst, tol.charges, worst < tol.charges && xi_exact, detail.str(), clock));
      } else if (name == kCheckSymmetries) {
        run.report.checks.push_back(symmetries_check(sc, metric));
      } else if (name == kCheckQuantum) {
        run.report.checks.push_back(quantum_check(sc, metric));
      }
    } catch (const std::exception& e) {
      const double limit = name == kCheckProjection ? tol.projection : tol.charges;
      run.report.checks.push_back(make_check(name, kNaN, limit, false, e.what(), clock));
    }
  }
  return run;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,x,y,z,s,dx,dy,dz,ds,h0\n";
  for (const PathSample& smp : traj.samples) {
    double h0 = kNaN;
    try {
      h0 = internal_energy(traj.metric, smp.point, smp.velocity);
    } catch (const EvaluationError&) {
    }
    const double cols[10] = {smp.point.t,       smp.point.r.x(),    smp.point.r.y(),
                             smp.point.r.z(),   smp.point.s,        smp.velocity.dr.x(),
                             smp.velocity.dr.y(), smp.velocity.dr.z(), smp.velocity.ds,
                             h0};
    for (int i = 0; i < 10; ++i) {
      if (i) out += ',';
      out += fmt17(cols[i]);
    }
    out += '\n';
  }
  return out;
}

std::string trajectory_json(const Trajectory& traj) {
  nlohmann::ordered_json j;
  j["columns"] = {"t", "x", "y", "z", "s", "dx", "dy", "dz", "ds", "h0"};
  j["rows"] = nlohmann::ordered_json::array();
  for (const PathSample& smp : traj.samples) {
    double h0 = kNaN;
    try {
      h0 = internal_energy(traj.metric, smp.point, smp.velocity);
    } catch (const EvaluationError&) {
    }
    nlohmann::ordered_json row = {smp.point.t,         smp.point.r.x(),     smp.point.r.y(),
                                  smp.point.r.z(),     smp.point.s,         smp.velocity.dr.x(),
                                  smp.velocity.dr.y(), smp.velocity.dr.z(), smp.velocity.ds};
    if (std::isfinite(h0)) {
      row.push_back(h0);
    } else {
      row.push_back(nullptr);
    }
    j["rows"].push_back(std::move(row));
  }
  return j.dump() + "\n";
}

std::string charge_csv(const Trajectory& traj, const ChargeSeries& series) {
  if (series.values.size() != traj.samples.size()) {
    throw GridError("charge_csv: series length differs from trajectory");
  }
  std::string out = "t," + series.name + "\n";
  for (std::size_t k = 0; k < series.values.size(); ++k) {
    out += fmt17(traj.samples[k].point.t);
    out += ',';
    out += fmt17(series.values[k]);
    out += '\n';
  }
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError(path.string() + ": write failed");
}

}  // namespace

std::vector<std::filesystem::path> emit_outputs(const ScenarioRun& run,
                                                const std::filesystem::path& directory,
                                                const RunOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw IoError(directory.string() + ": " + ec.message());

  const std::string& name = run.scenario.name;
  std::vector<std::filesystem::path> written;
  if (run.trajectory) {
    if (run.scenario.output_format == "json") {
      written.push_back(directory / (name + ".trajectory.json"));
      write_file(written.back(), trajectory_json(*run.trajectory));
    } else {
      written.push_back(directory / (name + ".trajectory.csv"));
      write_file(written.back(), trajectory_csv(*run.trajectory));
    }
    if (run.scenario.plot_data) {
      for (const ChargeSeries& series : run.charges) {
        written.push_back(directory / (name + ".charge." + series.name + ".csv"));
        write_file(written.back(), charge_csv(*run.trajectory, series));
      }
    }
  }
  written.push_back(directory / (name + ".report.json"));
  write_file(written.back(), dump_report(run.report, options.timings));
  return written;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Bargmann-lift mechanics: null geodesics, symmetries and Noether charges"};
  app.require_subcommand(1);

  std::vector<std::string> configs;
  std::string output;
  std::string format;
  double dt = 0.0;
  double t_end = 0.0;
  RunOptions options;

  struct Sub {
    const char* name;
    const char* help;
    Command command;
    CLI::App* app = nullptr;
  };
  std::vector<Sub> subs = {
      {"simulate", "Integrate the null geodesic and run the trajectory checks", Command::kSimulate},
      {"check-symmetries", "Verify the conformal Killing conditions", Command::kCheckSymmetries},
      {"check-quantum", "Verify the lifted wave equation on analytic solutions", Command::kCheckQuantum},
      {"check-all", "Run every requested check", Command::kCheckAll},
  };
  for (Sub& s : subs) {
    s.app = app.add_subcommand(s.name, s.help);
    s.app->add_option("--config", configs, "Scenario file (repeat for a parallel batch)")
        ->required()
        ->check(CLI::ExistingFile);
    s.app->add_option("--output", output, "Output directory");
    s.app->add_option("--format", format, "Trajectory format")->check(CLI::IsMember({"csv", "json"}));
    s.app->add_option("--dt", dt, "Override dt_step");
    s.app->add_option("--t-end", t_end, "Override t_end");
    s.app->add_flag("--plot-data", options.plot_data, "Also write per-charge time series");
    s.app->add_flag("--timings", options.timings, "Record check runtimes in the JSON report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  Command command = Command::kCheckAll;
  CLI::App* active = nullptr;
  for (const Sub& s : subs) {
    if (s.app->parsed()) {
      command = s.command;
      active = s.app;
    }
  }
  if (active->count("--output")) options.output_dir = output;
  if (active->count("--format")) options.format = format;
  if (active->count("--dt")) options.dt = dt;
  if (active->count("--t-end")) options.t_end = t_end;

  std::vector<Scenario> scenarios;
  try {
    std::set<std::string> names;
    for (const std::string& path : configs) {
      Scenario sc = apply_overrides(load_scenario(path), options);
      if (command == Command::kCheckQuantum && sc.potential.family != "free" &&
          sc.potential.family != "harmonic") {
        throw ConfigError(path + ": field 'potential.family' has no builtin Schrodinger solutions");
      }
      if (!names.insert(sc.name).second) {
        throw ConfigError(path + ": field 'name' duplicates another scenario in this batch");
      }
      scenarios.push_back(std::move(sc));
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  std::vector<ScenarioRun> runs(scenarios.size(), ScenarioRun{{}, {}, std::nullopt, {}});
  const auto n = static_cast<std::ptrdiff_t>(scenarios.size());
#pragma omp parallel for schedule(dynamic) if (n > 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    runs[static_cast<std::size_t>(i)] = run_scenario(scenarios[static_cast<std::size_t>(i)], command);
  }

  bool all_passed = true;
  try {
    for (const ScenarioRun& run : runs) {
      const std::filesystem::path dir =
          options.output_dir ? *options.output_dir
                             : (run.scenario.output_path.empty() ? std::filesystem::path(".")
                                                                 : std::filesystem::path(run.scenario.output_path));
      emit_outputs(run, dir, options);
      for (const CheckResult& c : run.report.checks) {
        std::cout << (c.passed ? "[pass] " : "[FAIL] ") << run.scenario.name << '/' << c.name
                  << " value=" << fmt_short(c.value) << " tol=" << fmt_short(c.tolerance) << "  "
                  << c.detail << "\n";
      }
      all_passed = all_passed && run.report.passed();
    }
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return all_passed ? kExitPass : kExitCheckFailure;
}

}  // namespace bargmann
