#include "bargmann/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Geometry>

namespace bargmann {

namespace {

Matrix3 cross_matrix(const Vec3& w) {
  Matrix3 m;
  m << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return m;
}

ExtendedPoint shifted(const ExtendedPoint& p, int axis, double delta) {
  Vec5 x = p.coords();
  x[axis] += delta;
  return ExtendedPoint::from_coords(x);
}

double charge_value(double mass, double u, const Vec5& y, const TangentVector& v) {
  if (v.dt != 1.0) throw std::invalid_argument("noether_charge: expects t-parametrized velocity");
  const Vec3 x(y[kX], y[kY], y[kZ]);
  const double energy = 0.5 * mass * v.dr.squaredNorm() + mass * u;
  return mass * v.dr.dot(x) - energy * y[kT] + mass * y[kS];
}

}  // namespace

SchrodingerParams operator+(const SchrodingerParams& a, const SchrodingerParams& b) {
  SchrodingerParams c;
  c.omega = a.omega + b.omega;
  c.beta = a.beta + b.beta;
  c.gamma = a.gamma + b.gamma;
  c.epsilon = a.epsilon + b.epsilon;
  c.eta = a.eta + b.eta;
  c.delta = a.delta + b.delta;
  c.kappa = a.kappa + b.kappa;
  return c;
}

SchrodingerParams operator*(double k, const SchrodingerParams& a) {
  SchrodingerParams c;
  c.omega = k * a.omega;
  c.beta = k * a.beta;
  c.gamma = k * a.gamma;
  c.epsilon = k * a.epsilon;
  c.eta = k * a.eta;
  c.delta = k * a.delta;
  c.kappa = k * a.kappa;
  return c;
}

const std::array<NamedGenerator, 13>& unit_generators() {
  static const std::array<NamedGenerator, 13> table = [] {
    std::array<NamedGenerator, 13> t;
    const char* axes[3] = {"x", "y", "z"};
    for (int i = 0; i < 3; ++i) {
      t[i].name = std::string("rotation_") + axes[i];
      t[i].params.omega[i] = 1.0;
      t[3 + i].name = std::string("boost_") + axes[i];
      t[3 + i].params.beta[i] = 1.0;
      t[6 + i].name = std::string("translation_") + axes[i];
      t[6 + i].params.gamma[i] = 1.0;
    }
    t[9].name = "time_translation";
    t[9].params.epsilon = 1.0;
    t[10].name = "vertical_translation";
    t[10].params.eta = 1.0;
    t[11].name = "dilatation";
    t[11].params.delta = 1.0;
    t[12].name = "expansion";
    t[12].params.kappa = 1.0;
    return t;
  }();
  return table;
}

Matrix5 ConformalVectorField::jacobian_at(const ExtendedPoint& p, double fd_step) const {
  if (jacobian) return jacobian(p);
  Matrix5 j;
  for (int b = 0; b < 5; ++b) {
    j.col(b) = (eval(shifted(p, b, fd_step)) - eval(shifted(p, b, -fd_step))) / (2.0 * fd_step);
  }
  return j;
}

ConformalVectorField schrodinger_generator(const SchrodingerParams& q) {
  ConformalVectorField field;
  field.eval = [q](const ExtendedPoint& p) -> Vec5 {
    const Vec3 x = q.omega.cross(p.r) + (0.5 * q.delta + q.kappa * p.t) * p.r + q.beta * p.t + q.gamma;
    Vec5 y;
    y << x, q.kappa * p.t * p.t + q.delta * p.t + q.epsilon,
        -(0.5 * q.kappa * p.r.squaredNorm() + q.beta.dot(p.r) + q.eta);
    return y;
  };
  field.jacobian = [q](const ExtendedPoint& p) -> Matrix5 {
    Matrix5 j = Matrix5::Zero();
    j.topLeftCorner<3, 3>() =
        cross_matrix(q.omega) + (0.5 * q.delta + q.kappa * p.t) * Matrix3::Identity();
    j.block<3, 1>(0, kT) = q.kappa * p.r + q.beta;
    j(kT, kT) = 2.0 * q.kappa * p.t + q.delta;
    j.block<1, 3>(kS, 0) = -(q.kappa * p.r + q.beta).transpose();
    return j;
  };
  return field;
}

ConformalVectorField vertical_killing_field() {
  ConformalVectorField field;
  field.eval = [](const ExtendedPoint&) -> Vec5 {
    Vec5 y = Vec5::Zero();
    y[kS] = 1.0;
    return y;
  };
  field.jacobian = [](const ExtendedPoint&) -> Matrix5 { return Matrix5::Zero(); };
  return field;
}

Matrix5 lie_derivative_metric(const BargmannMetric& metric, const ConformalVectorField& field,
                              const ExtendedPoint& p) {
  const Matrix5 g = metric_components(metric, p);
  const MetricDerivatives dg = metric_derivatives(metric, p);
  const Vec5 y = field(p);
  const Matrix5 j = field.jacobian_at(p);
  Matrix5 lie = Matrix5::Zero();
  for (int c = 0; c < 5; ++c) lie += y[c] * dg[c];
  // g_cb d_a Y^c = (J^T g)_ab, and its transpose.
  const Matrix5 jt_g = j.transpose() * g;
  lie += jt_g + jt_g.transpose();
  return lie;
}

Matrix5 lie_derivative_metric_fd(const BargmannMetric& metric, const ConformalVectorField& field,
                                 const ExtendedPoint& p, double step) {
  const Matrix5 g = metric_components(metric, p);
  const Vec5 y = field(p);
  Matrix5 lie = Matrix5::Zero();
  Matrix5 j;
  for (int c = 0; c < 5; ++c) {
    const ExtendedPoint up = shifted(p, c, step);
    const ExtendedPoint dn = shifted(p, c, -step);
    const Matrix5 dgc = (metric_components(metric, up) - metric_components(metric, dn)) / (2.0 * step);
    lie += y[c] * dgc;
    j.col(c) = (field(up) - field(dn)) / (2.0 * step);
  }
  const Matrix5 jt_g = j.transpose() * g;
  lie += jt_g + jt_g.transpose();
  return lie;
}

ConformalResidual conformal_residual(const BargmannMetric& metric, const ConformalVectorField& field,
                                     const ExtendedPoint& p) {
  const Matrix5 g = metric_components(metric, p);
  const Matrix5 gi = inverse_metric_components(metric, p);
  const Matrix5 lie = lie_derivative_metric(metric, field, p);
  ConformalResidual out;
  out.lambda_hat = (gi * lie).trace() / 5.0;
  out.residual = (lie - out.lambda_hat * g).cwiseAbs().maxCoeff();
  return out;
}

double vertical_commutation_check(const ConformalVectorField& field, const ExtendedPoint& p,
                                  double step) {
  if (!(step > 0.0)) throw std::invalid_argument("vertical_commutation_check: step must be positive");
  return (field(shifted(p, kS, step)) - field(p)).cwiseAbs().maxCoeff() / step;
}

double noether_charge(const BargmannMetric& metric, const ConformalVectorField& field,
                      const ExtendedPoint& p, const TangentVector& v) {
  return charge_value(metric.mass(), metric.potential_at(p), field(p), v);
}

ChargeTable standard_charges(const ExtendedPoint& p, const TangentVector& v, double mass,
                             double potential_value) {
  if (v.dt != 1.0) throw std::invalid_argument("standard_charges: expects t-parametrized velocity");
  ChargeTable c;
  c.momentum = mass * v.dr;
  c.angular_momentum = p.r.cross(c.momentum);
  c.center_of_mass = mass * p.r - c.momentum * p.t;
  c.energy = 0.5 * mass * v.dr.squaredNorm() + mass * potential_value;
  c.mass = mass;
  c.dilatation = 0.5 * c.momentum.dot(p.r) - p.t * c.energy;
  c.expansion = p.t * p.t * c.energy + 2.0 * p.t * c.dilatation - 0.5 * mass * p.r.squaredNorm();
  return c;
}

std::vector<double> charge_series(const Trajectory& traj, const ConformalVectorField& field,
                                  double mass) {
  std::vector<double> out;
  out.reserve(traj.samples.size());
  for (const PathSample& smp : traj.samples) {
    out.push_back(charge_value(mass, traj.metric.potential_at(smp.point), field(smp.point),
                               smp.velocity));
  }
  return out;
}

double charge_drift(const Trajectory& traj, const ConformalVectorField& field, double mass) {
  const std::vector<double> series = charge_series(traj, field, mass);
  if (series.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  return *hi - *lo;
}

Vec5 lie_bracket(const ConformalVectorField& y1, const ConformalVectorField& y2,
                 const ExtendedPoint& p) {
  return y2.jacobian_at(p) * y1(p) - y1.jacobian_at(p) * y2(p);
}

ExtendedPoint flow(const ConformalVectorField& field, const ExtendedPoint& p, double tau,
                   int substeps) {
  if (substeps < 1) throw std::invalid_argument("flow: substeps must be >= 1");
  const double h = tau / substeps;
  auto f = [&field](const Vec5& x) { return field(ExtendedPoint::from_coords(x)); };
  Vec5 x = p.coords();
  for (int k = 0; k < substeps; ++k) {
    const Vec5 k1 = f(x);
    const Vec5 k2 = f(x + 0.5 * h * k1);
    const Vec5 k3 = f(x + 0.5 * h * k2);
    const Vec5 k4 = f(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return ExtendedPoint::from_coords(x);
}

Vec5 flow_commutator(const ConformalVectorField& y1, const ConformalVectorField& y2,
                     const ExtendedPoint& p, double eps) {
  ExtendedPoint q = flow(y1, p, eps);
  q = flow(y2, q, eps);
  q = flow(y1, q, -eps);
  q = flow(y2, q, -eps);
  return (q.coords() - p.coords()) / (eps * eps);
}

}  // namespace bargmann
