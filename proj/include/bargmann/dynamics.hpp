#pragma once

// Null geodesics of the Bargmann metric, parametrized by coordinate time.
//
// Every Christoffel symbol with upper index t vanishes for this metric, so t
// is an affine parameter along any geodesic and the velocity component dt
// can be fixed to 1. The remaining equations are
//
//   r'' = -grad U,     s'' = dU/dt + 2 grad U . r'.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bargmann/geometry.hpp"

namespace bargmann {

struct Trajectory {
  std::vector<PathSample> samples;
  double step = 0.0;
  BargmannMetric metric;

  [[nodiscard]] std::size_t size() const { return samples.size(); }
};

struct NewtonianSample {
  double t = 0.0;
  Vec3 r = Vec3::Zero();
  Vec3 v = Vec3::Zero();
};

struct NewtonianTrajectory {
  std::vector<NewtonianSample> samples;
  double step = 0.0;
};

// The state left the finite range (typically a Kepler collision). Carries
// the samples integrated so far; partial_samples.back() is the last valid one.
class NonFiniteState : public std::runtime_error {
 public:
  NonFiniteState(const std::string& what, std::size_t last_valid_index,
                 std::vector<PathSample> partial_samples)
      : std::runtime_error(what),
        last_valid_index_(last_valid_index),
        partial_(std::move(partial_samples)) {}

  [[nodiscard]] std::size_t last_valid_index() const { return last_valid_index_; }
  [[nodiscard]] const std::vector<PathSample>& partial_samples() const { return partial_; }

 private:
  std::size_t last_valid_index_;
  std::vector<PathSample> partial_;
};

// Geodesic acceleration -Gamma^a_bc v^b v^c.
[[nodiscard]] TangentVector geodesic_rhs(const BargmannMetric& metric, const ExtendedPoint& p,
                                         const TangentVector& v);

// Number of steps of size dt_step that best covers [t0, t_end]. Throws
// std::invalid_argument on a non-positive step or empty interval.
[[nodiscard]] std::size_t step_count(double t0, double t_end, double dt_step);

// Classical RK4 on the geodesic equation, starting from the null completion
// of (dt = 1, dr0) at p0. Samples every step, including p0.
[[nodiscard]] Trajectory integrate_null_geodesic(const BargmannMetric& metric,
                                                 const ExtendedPoint& p0, const Vec3& dr0,
                                                 double dt_step, double t_end);

// Independent reference: r'' = -grad U integrated with the three-stage
// fourth-order Runge-Kutta-Nystrom scheme. Shares nothing with the
// geodesic path except the Potential.
[[nodiscard]] NewtonianTrajectory newtonian_oracle(const Potential& potential, const Vec3& r0,
                                                   const Vec3& v0, double t0, double dt_step,
                                                   double t_end);

// max_k |r_geodesic(t_k) - r_oracle(t_k)|; throws GridError when the grids differ.
[[nodiscard]] double projection_deviation(const Trajectory& traj,
                                          const NewtonianTrajectory& oracle);

// Cumulative composite Simpson integral of f sampled on a uniform grid of
// spacing h. Odd samples use the three-point half-interval rule; an odd
// number of intervals closes with Simpson's 3/8 rule. Needs >= 3 samples.
[[nodiscard]] std::vector<double> cumulative_simpson(const std::vector<double>& f, double h);

// max_k |s(t_k) - (s0 - (1/m) int_{t0}^{t_k} L dt)| with L = m |r'|^2 / 2 - m U.
[[nodiscard]] double vertical_check(const Trajectory& traj, double mass);

// max_k |h0| along the trajectory.
[[nodiscard]] double constraint_drift(const Trajectory& traj);

}  // namespace bargmann
