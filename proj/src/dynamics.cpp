#include "bargmann/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bargmann {

namespace {

// (r, s, r', s') with t as the independent variable.
using State = Eigen::Matrix<double, 8, 1>;

State pack(const ExtendedPoint& p, const TangentVector& v) {
  State y;
  y << p.r, p.s, v.dr, v.ds;
  return y;
}

PathSample unpack(double t, const State& y) {
  PathSample out;
  out.point = ExtendedPoint{t, y.head<3>(), y[3]};
  out.velocity = TangentVector{1.0, y.segment<3>(4), y[7]};
  return out;
}

State derivative(const BargmannMetric& metric, double t, const State& y) {
  const PathSample here = unpack(t, y);
  const TangentVector acc = geodesic_rhs(metric, here.point, here.velocity);
  State dy;
  dy << y.segment<3>(4), y[7], acc.dr, acc.ds;
  return dy;
}

}  // namespace

TangentVector geodesic_rhs(const BargmannMetric& metric, const ExtendedPoint& p,
                           const TangentVector& v) {
  const Christoffel gamma = christoffel(metric, p);
  const Vec5 vc = v.coords();
  Vec5 acc;
  for (int a = 0; a < 5; ++a) acc[a] = -vc.dot(gamma[a] * vc);
  return TangentVector::from_coords(acc);
}

std::size_t step_count(double t0, double t_end, double dt_step) {
  if (!(dt_step > 0.0) || !std::isfinite(dt_step)) {
    throw std::invalid_argument("dt_step must be positive and finite");
  }
  if (!(t_end > t0) || !std::isfinite(t_end) || !std::isfinite(t0)) {
    throw std::invalid_argument("t_end must be finite and greater than t0");
  }
  const auto n = static_cast<long long>(std::llround((t_end - t0) / dt_step));
  return static_cast<std::size_t>(std::max<long long>(n, 1));
}

Trajectory integrate_null_geodesic(const BargmannMetric& metric, const ExtendedPoint& p0,
                                   const Vec3& dr0, double dt_step, double t_end) {
  const std::size_t n = step_count(p0.t, t_end, dt_step);
  const double h = dt_step;

  Trajectory traj{{}, h, metric};
  traj.samples.reserve(n + 1);

  auto fail = [&](std::size_t k, const char* why) -> NonFiniteState {
    std::ostringstream os;
    os << "non-finite state after step " << k << " (t=" << p0.t + static_cast<double>(k) * h
       << "): " << why;
    const std::size_t last = traj.samples.empty() ? 0 : traj.samples.size() - 1;
    return NonFiniteState(os.str(), last, traj.samples);
  };

  TangentVector v0;
  try {
    v0 = null_completion(metric, p0, dr0, 1.0);
  } catch (const EvaluationError& e) {
    throw fail(0, e.what());
  }
  State y = pack(p0, v0);
  if (!y.allFinite()) throw fail(0, "initial data");
  traj.samples.push_back(unpack(p0.t, y));

  for (std::size_t k = 0; k < n; ++k) {
    const double t = p0.t + static_cast<double>(k) * h;
    try {
      const State k1 = derivative(metric, t, y);
      const State k2 = derivative(metric, t + 0.5 * h, y + 0.5 * h * k1);
      const State k3 = derivative(metric, t + 0.5 * h, y + 0.5 * h * k2);
      const State k4 = derivative(metric, t + h, y + h * k3);
      y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } catch (const EvaluationError& e) {
      throw fail(k + 1, e.what());
    }
    if (!y.allFinite()) throw fail(k + 1, "state overflow");
    traj.samples.push_back(unpack(p0.t + static_cast<double>(k + 1) * h, y));
  }
  return traj;
}

NewtonianTrajectory newtonian_oracle(const Potential& potential, const Vec3& r0, const Vec3& v0,
                                     double t0, double dt_step, double t_end) {
  const std::size_t n = step_count(t0, t_end, dt_step);
  const double h = dt_step;
  auto force = [&potential](const Vec3& r, double t) -> Vec3 { return -potential.grad(r, t); };

  NewtonianTrajectory out;
  out.step = h;
  out.samples.reserve(n + 1);
  Vec3 r = r0;
  Vec3 v = v0;
  out.samples.push_back({t0, r, v});
  for (std::size_t k = 0; k < n; ++k) {
    const double t = t0 + static_cast<double>(k) * h;
    const Vec3 f1 = force(r, t);
    const Vec3 f2 = force(r + 0.5 * h * v + (h * h / 8.0) * f1, t + 0.5 * h);
    const Vec3 f3 = force(r + h * v + (h * h / 2.0) * f2, t + h);
    r += h * v + (h * h / 6.0) * (f1 + 2.0 * f2);
    v += (h / 6.0) * (f1 + 4.0 * f2 + f3);
    if (!r.allFinite() || !v.allFinite()) {
      std::ostringstream os;
      os << "newtonian_oracle: non-finite state after step " << k + 1;
      throw NonFiniteState(os.str(), out.samples.size() - 1, {});
    }
    out.samples.push_back({t0 + static_cast<double>(k + 1) * h, r, v});
  }
  return out;
}

double projection_deviation(const Trajectory& traj, const NewtonianTrajectory& oracle) {
  if (traj.samples.size() != oracle.samples.size()) {
    throw GridError("projection_deviation: sample counts differ");
  }
  const double tol = 1e-9 * std::max(traj.step, oracle.step);
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    const PathSample& a = traj.samples[k];
    const NewtonianSample& b = oracle.samples[k];
    if (std::abs(a.point.t - b.t) > tol) {
      std::ostringstream os;
      os << "projection_deviation: sample " << k << " at t=" << a.point.t << " vs " << b.t;
      throw GridError(os.str());
    }
    worst = std::max(worst, (a.point.r - b.r).norm());
  }
  return worst;
}

std::vector<double> cumulative_simpson(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  if (n < 3) throw PathError("cumulative_simpson: need at least three samples");
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 2; k < n; k += 2) {
    out[k] = out[k - 2] + (h / 3.0) * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
  }
  for (std::size_t k = 1; k < n; k += 2) {
    if (k + 1 < n) {
      // Integral over [t_{k-1}, t_k] from the parabola through k-1, k, k+1.
      out[k] = out[k - 1] + (h / 12.0) * (5.0 * f[k - 1] + 8.0 * f[k] - f[k + 1]);
    } else {
      out[k] = out[k - 3] + (3.0 * h / 8.0) * (f[k - 3] + 3.0 * f[k - 2] + 3.0 * f[k - 1] + f[k]);
    }
  }
  return out;
}

double vertical_check(const Trajectory& traj, double mass) {
  if (traj.samples.size() < 3) throw PathError("vertical_check: need at least three samples");
  const Potential& pot = traj.metric.potential();
  std::vector<double> lagrangian(traj.samples.size());
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    const PathSample& smp = traj.samples[k];
    lagrangian[k] = mass * (0.5 * smp.velocity.dr.squaredNorm() - pot.value(smp.point.r, smp.point.t));
  }
  const std::vector<double> action = cumulative_simpson(lagrangian, traj.step);
  const double s0 = traj.samples.front().point.s;
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    worst = std::max(worst, std::abs(traj.samples[k].point.s - (s0 - action[k] / mass)));
  }
  return worst;
}

double constraint_drift(const Trajectory& traj) {
  double worst = 0.0;
  for (const PathSample& smp : traj.samples) {
    worst = std::max(worst, std::abs(internal_energy(traj.metric, smp.point, smp.velocity)));
  }
  return worst;
}

}  // namespace bargmann
