#pragma once

// Data-parallel sweeps over many independent trajectories or sample points.
// Each kernel has an OpenMP version and a plain serial reference; they must
// agree exactly, since every item is computed independently and the
// reductions are max/min only.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bargmann/dynamics.hpp"
#include "bargmann/geometry.hpp"
#include "bargmann/symmetry.hpp"

namespace bargmann {

struct InitialCondition {
  Vec3 r0 = Vec3::Zero();
  Vec3 v0 = Vec3::Zero();
  double t0 = 0.0;
  double s0 = 0.0;
  double t_end = 1.0;
};

// Diagnostics of one geodesic run checked against the Newtonian oracle.
struct ProjectionRun {
  bool ok = false;
  std::string error;
  std::size_t samples = 0;
  double projection = 0.0;
  double constraint = 0.0;
  double vertical = 0.0;
};

[[nodiscard]] ProjectionRun run_projection(const BargmannMetric& metric, const InitialCondition& ic,
                                           double dt_step);

[[nodiscard]] std::vector<ProjectionRun> run_projection_batch_serial(
    const BargmannMetric& metric, std::span<const InitialCondition> ics, double dt_step);

[[nodiscard]] std::vector<ProjectionRun> run_projection_batch(const BargmannMetric& metric,
                                                              std::span<const InitialCondition> ics,
                                                              double dt_step);

struct SweepStats {
  std::size_t points = 0;
  double max_residual = 0.0;
  // max |lambda_hat - expected_lambda(p)|
  double max_lambda_error = 0.0;
  double max_commutation = 0.0;
};

using LambdaFn = std::function<double(const ExtendedPoint&)>;

[[nodiscard]] SweepStats conformal_sweep_serial(const BargmannMetric& metric,
                                                const ConformalVectorField& field,
                                                std::span<const ExtendedPoint> points,
                                                const LambdaFn& expected_lambda,
                                                double commutation_step = 1e-3);

[[nodiscard]] SweepStats conformal_sweep(const BargmannMetric& metric,
                                         const ConformalVectorField& field,
                                         std::span<const ExtendedPoint> points,
                                         const LambdaFn& expected_lambda,
                                         double commutation_step = 1e-3);

// Number of OpenMP threads the parallel kernels will use.
[[nodiscard]] int parallel_threads();

}  // namespace bargmann
