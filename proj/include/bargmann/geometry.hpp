#pragma once

// Five-dimensional Bargmann metric built from a Newtonian potential.
//
// Coordinates are ordered (x, y, z, t, s) everywhere. The line element is
//
//   ds^2 = dx^2 + dy^2 + dz^2 + 2 ds dt - 2 U(r, t) dt^2
//
// with a flat spatial block. s is the vertical (fiber) coordinate; the
// Killing vector d/ds is null and covariantly constant.

#include <array>
#include <functional>
#include <string>

#include <Eigen/Core>

#include "bargmann/errors.hpp"

namespace bargmann {

using Vec3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Matrix5 = Eigen::Matrix<double, 5, 5>;

// Index layout of 5-vectors and 5x5 matrices.
inline constexpr int kX = 0;
inline constexpr int kY = 1;
inline constexpr int kZ = 2;
inline constexpr int kT = 3;
inline constexpr int kS = 4;

struct ExtendedPoint {
  double t = 0.0;
  Vec3 r = Vec3::Zero();
  double s = 0.0;

  [[nodiscard]] Vec5 coords() const;
  static ExtendedPoint from_coords(const Vec5& x);
  [[nodiscard]] bool finite() const;
};

struct TangentVector {
  double dt = 0.0;
  Vec3 dr = Vec3::Zero();
  double ds = 0.0;

  [[nodiscard]] Vec5 coords() const;
  static TangentVector from_coords(const Vec5& v);
  [[nodiscard]] bool finite() const;
};

// A point on an extended path together with its velocity.
struct PathSample {
  ExtendedPoint point;
  TangentVector velocity;
};

// U(r, t) with analytic spatial gradient and time derivative.
class Potential {
 public:
  using ValueFn = std::function<double(const Vec3&, double)>;
  using GradFn = std::function<Vec3(const Vec3&, double)>;

  Potential(std::string label, ValueFn value, GradFn grad, ValueFn time_deriv);

  static Potential free();
  // U = g . r
  static Potential uniform(const Vec3& g);
  // U = omega^2 |r|^2 / 2
  static Potential harmonic(double omega);
  // U = -k / max(|r|, softening)
  static Potential kepler(double k, double softening = 1e-9);
  // U = u everywhere; handy for pointwise checks.
  static Potential constant(double u);

  [[nodiscard]] double value(const Vec3& r, double t) const { return value_(r, t); }
  [[nodiscard]] Vec3 grad(const Vec3& r, double t) const { return grad_(r, t); }
  [[nodiscard]] double time_deriv(const Vec3& r, double t) const { return time_deriv_(r, t); }
  [[nodiscard]] const std::string& label() const { return label_; }

 private:
  std::string label_;
  ValueFn value_;
  GradFn grad_;
  ValueFn time_deriv_;
};

class BargmannMetric {
 public:
  explicit BargmannMetric(Potential potential, double mass = 1.0, double hbar = 1.0);

  [[nodiscard]] const Potential& potential() const { return potential_; }
  [[nodiscard]] double mass() const { return mass_; }
  [[nodiscard]] double hbar() const { return hbar_; }

  // U at p, throwing EvaluationError when it is not finite.
  [[nodiscard]] double potential_at(const ExtendedPoint& p) const;

 private:
  Potential potential_;
  double mass_;
  double hbar_;
};

// Gamma[a](b, c) holds the Christoffel symbol with upper index a.
using Christoffel = std::array<Matrix5, 5>;
// dG[c](a, b) holds the partial derivative of g_ab along coordinate c.
using MetricDerivatives = std::array<Matrix5, 5>;

[[nodiscard]] Matrix5 metric_components(const BargmannMetric& metric, const ExtendedPoint& p);
[[nodiscard]] Matrix5 inverse_metric_components(const BargmannMetric& metric,
                                                const ExtendedPoint& p);
[[nodiscard]] MetricDerivatives metric_derivatives(const BargmannMetric& metric,
                                                   const ExtendedPoint& p);
[[nodiscard]] Christoffel christoffel(const BargmannMetric& metric, const ExtendedPoint& p);

// h0 = g_ab v^a v^b. Null geodesics have h0 = 0.
[[nodiscard]] double internal_energy(const BargmannMetric& metric, const ExtendedPoint& p,
                                     const TangentVector& v);

// Solve h0 = 0 for ds: ds = U dt - |dr|^2 / (2 dt). Throws NoTimeFlow when dt == 0.
[[nodiscard]] TangentVector null_completion(const BargmannMetric& metric, const ExtendedPoint& p,
                                            const Vec3& dr, double dt);

}  // namespace bargmann
