#include "bargmann/batch.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include <omp.h>

namespace bargmann {

namespace {

struct PointResult {
  double residual;
  double lambda_error;
  double commutation;
};

PointResult evaluate_point(const BargmannMetric& metric, const ConformalVectorField& field,
                           const ExtendedPoint& p, const LambdaFn& expected_lambda,
                           double commutation_step) {
  const ConformalResidual cr = conformal_residual(metric, field, p);
  const double expected = expected_lambda ? expected_lambda(p) : 0.0;
  return {cr.residual, std::abs(cr.lambda_hat - expected),
          vertical_commutation_check(field, p, commutation_step)};
}

void accumulate(SweepStats& stats, const PointResult& r) {
  stats.max_residual = std::max(stats.max_residual, r.residual);
  stats.max_lambda_error = std::max(stats.max_lambda_error, r.lambda_error);
  stats.max_commutation = std::max(stats.max_commutation, r.commutation);
}

}  // namespace

ProjectionRun run_projection(const BargmannMetric& metric, const InitialCondition& ic,
                             double dt_step) {
  ProjectionRun run;
  try {
    const ExtendedPoint p0{ic.t0, ic.r0, ic.s0};
    const Trajectory traj = integrate_null_geodesic(metric, p0, ic.v0, dt_step, ic.t_end);
    const NewtonianTrajectory oracle =
        newtonian_oracle(metric.potential(), ic.r0, ic.v0, ic.t0, dt_step, ic.t_end);
    run.samples = traj.size();
    run.projection = projection_deviation(traj, oracle);
    run.constraint = constraint_drift(traj);
    run.vertical = vertical_check(traj, metric.mass());
    run.ok = true;
  } catch (const std::exception& e) {
    run.ok = false;
    run.error = e.what();
  }
  return run;
}

std::vector<ProjectionRun> run_projection_batch_serial(const BargmannMetric& metric,
                                                       std::span<const InitialCondition> ics,
                                                       double dt_step) {
  std::vector<ProjectionRun> out;
  out.reserve(ics.size());
  for (const InitialCondition& ic : ics) out.push_back(run_projection(metric, ic, dt_step));
  return out;
}

std::vector<ProjectionRun> run_projection_batch(const BargmannMetric& metric,
                                                std::span<const InitialCondition> ics,
                                                double dt_step) {
  std::vector<ProjectionRun> out(ics.size());
  const auto n = static_cast<std::ptrdiff_t>(ics.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = run_projection(metric, ics[static_cast<std::size_t>(i)], dt_step);
  }
  return out;
}

SweepStats conformal_sweep_serial(const BargmannMetric& metric, const ConformalVectorField& field,
                                  std::span<const ExtendedPoint> points,
                                  const LambdaFn& expected_lambda, double commutation_step) {
  SweepStats stats;
  stats.points = points.size();
  for (const ExtendedPoint& p : points) {
    accumulate(stats, evaluate_point(metric, field, p, expected_lambda, commutation_step));
  }
  return stats;
}

SweepStats conformal_sweep(const BargmannMetric& metric, const ConformalVectorField& field,
                           std::span<const ExtendedPoint> points, const LambdaFn& expected_lambda,
                           double commutation_step) {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  double residual = 0.0;
  double lambda_error = 0.0;
  double commutation = 0.0;
  // Evaluation errors cannot cross the parallel region; keep the first one.
  std::exception_ptr failure;
#pragma omp parallel for schedule(static) reduction(max : residual, lambda_error, commutation)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const PointResult r = evaluate_point(metric, field, points[static_cast<std::size_t>(i)],
                                           expected_lambda, commutation_step);
      residual = std::max(residual, r.residual);
      lambda_error = std::max(lambda_error, r.lambda_error);
      commutation = std::max(commutation, r.commutation);
    } catch (...) {
#pragma omp critical(bargmann_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return SweepStats{points.size(), residual, lambda_error, commutation};
}

int parallel_threads() { return omp_get_max_threads(); }

}  // namespace bargmann
