#pragma once

// Conformal symmetries of the Bargmann metric that commute with the vertical
// Killing vector, the thirteen-parameter Schrodinger algebra of the free
// particle, and the Noether charges they generate.
//
// Charge sign dictionary (unit parameter -> Noether charge):
//   rotation omega       ->  omega . L
//   boost beta           -> -beta . g
//   translation gamma    ->  gamma . p
//   time translation     -> -E
//   vertical eta         -> -m
//   dilatation delta     ->  D
//   expansion kappa      ->  K
//   xi = d/ds            -> +m

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "bargmann/dynamics.hpp"
#include "bargmann/geometry.hpp"

namespace bargmann {

struct SchrodingerParams {
  Vec3 omega = Vec3::Zero();
  Vec3 beta = Vec3::Zero();
  Vec3 gamma = Vec3::Zero();
  double epsilon = 0.0;
  double eta = 0.0;
  double delta = 0.0;
  double kappa = 0.0;

  friend SchrodingerParams operator+(const SchrodingerParams& a, const SchrodingerParams& b);
  friend SchrodingerParams operator*(double k, const SchrodingerParams& a);
};

struct NamedGenerator {
  std::string name;
  SchrodingerParams params;
};

// The 13 unit generators in the order rotation_{x,y,z}, boost_{x,y,z},
// translation_{x,y,z}, time_translation, vertical_translation, dilatation,
// expansion.
[[nodiscard]] const std::array<NamedGenerator, 13>& unit_generators();

// Y = (X^x, X^y, X^z, X^t, Y^s) as a function of the base point, with an
// optional analytic jacobian J(a, b) = d Y^a / d x^b.
struct ConformalVectorField {
  std::function<Vec5(const ExtendedPoint&)> eval;
  std::function<Matrix5(const ExtendedPoint&)> jacobian;

  [[nodiscard]] Vec5 operator()(const ExtendedPoint& p) const { return eval(p); }
  // Analytic jacobian when present, else central differences of step fd_step.
  [[nodiscard]] Matrix5 jacobian_at(const ExtendedPoint& p, double fd_step = 1e-5) const;
};

[[nodiscard]] ConformalVectorField schrodinger_generator(const SchrodingerParams& params);

// xi = d/ds.
[[nodiscard]] ConformalVectorField vertical_killing_field();

// (L_Y g)_ab = Y^c d_c g_ab + g_cb d_a Y^c + g_ac d_b Y^c, using analytic
// metric derivatives and the field's jacobian.
[[nodiscard]] Matrix5 lie_derivative_metric(const BargmannMetric& metric,
                                            const ConformalVectorField& field,
                                            const ExtendedPoint& p);

// Same tensor built purely from central differences of metric_components
// and of field.eval.
[[nodiscard]] Matrix5 lie_derivative_metric_fd(const BargmannMetric& metric,
                                               const ConformalVectorField& field,
                                               const ExtendedPoint& p, double step = 1e-5);

struct ConformalResidual {
  double lambda_hat = 0.0;
  double residual = 0.0;
};

// lambda_hat = tr(g^-1 L_Y g) / 5, residual = max |L_Y g - lambda_hat g|.
[[nodiscard]] ConformalResidual conformal_residual(const BargmannMetric& metric,
                                                   const ConformalVectorField& field,
                                                   const ExtendedPoint& p);

// max_a |Y^a(p + step e_s) - Y^a(p)| / step.
[[nodiscard]] double vertical_commutation_check(const ConformalVectorField& field,
                                                const ExtendedPoint& p, double step);

// C = (dL/dx'^a) Y^a for the homogeneous Lagrangian at dt = 1:
// C = m dr.X - E X^t + m Y^s with E = m |dr|^2 / 2 + m U.
[[nodiscard]] double noether_charge(const BargmannMetric& metric, const ConformalVectorField& field,
                                    const ExtendedPoint& p, const TangentVector& v);

struct ChargeTable {
  Vec3 angular_momentum = Vec3::Zero();
  Vec3 center_of_mass = Vec3::Zero();
  Vec3 momentum = Vec3::Zero();
  double energy = 0.0;
  double mass = 0.0;
  double dilatation = 0.0;
  double expansion = 0.0;
};

[[nodiscard]] ChargeTable standard_charges(const ExtendedPoint& p, const TangentVector& v,
                                           double mass, double potential_value);

// Per-sample Noether charge along a trajectory, using the given mass.
[[nodiscard]] std::vector<double> charge_series(const Trajectory& traj,
                                                const ConformalVectorField& field, double mass);

// max - min of the Noether charge over the samples.
[[nodiscard]] double charge_drift(const Trajectory& traj, const ConformalVectorField& field,
                                  double mass);

// [Y1, Y2]^a = Y1^c d_c Y2^a - Y2^c d_c Y1^a from the jacobians.
[[nodiscard]] Vec5 lie_bracket(const ConformalVectorField& y1, const ConformalVectorField& y2,
                               const ExtendedPoint& p);

// Flow of the field for parameter time tau, RK4 with the given substeps.
[[nodiscard]] ExtendedPoint flow(const ConformalVectorField& field, const ExtendedPoint& p,
                                 double tau, int substeps = 32);

// (phi2_{-eps} phi1_{-eps} phi2_{eps} phi1_{eps}(p) - p) / eps^2, which tends
// to [Y1, Y2](p) as eps -> 0.
[[nodiscard]] Vec5 flow_commutator(const ConformalVectorField& y1, const ConformalVectorField& y2,
                                   const ExtendedPoint& p, double eps);

}  // namespace bargmann
