#pragma once

// The Bargmann group: the central extension of the Galilei group by vertical
// translations, acting on extended spacetime (t, r, s).

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "bargmann/geometry.hpp"

namespace bargmann {

using Complex = std::complex<double>;

// Element (A, b, c, e, h): rotation, boost, space translation, time
// translation and vertical translation.
class BargmannElement {
 public:
  // Identity.
  BargmannElement();
  // Throws std::invalid_argument unless A is a proper rotation to 1e-12.
  BargmannElement(const Matrix3& rotation, const Vec3& boost, const Vec3& translation,
                  double time_shift, double vertical_shift);

  static BargmannElement identity() { return {}; }
  static BargmannElement boost(const Vec3& b);
  static BargmannElement translation(const Vec3& c);
  static BargmannElement rotation(const Matrix3& a);
  static BargmannElement time_shift(double e);
  static BargmannElement vertical_shift(double h);

  [[nodiscard]] const Matrix3& rotation() const { return a_; }
  [[nodiscard]] const Vec3& boost() const { return b_; }
  [[nodiscard]] const Vec3& translation() const { return c_; }
  [[nodiscard]] double time_shift() const { return e_; }
  [[nodiscard]] double vertical_shift() const { return h_; }

 private:
  Matrix3 a_;
  Vec3 b_;
  Vec3 c_;
  double e_;
  double h_;
};

// r* = A r + b t + c,  t* = t + e,  s* = s - b.(A r) - t |b|^2 / 2 - h
[[nodiscard]] ExtendedPoint act_point(const BargmannElement& g, const ExtendedPoint& p);

// Tangent map of act_point; it does not depend on the base point.
[[nodiscard]] TangentVector act_tangent(const BargmannElement& g, const TangentVector& v);

// Left action: act_point(compose(g1, g2), p) == act_point(g1, act_point(g2, p)).
// The vertical part carries the cocycle b1.(A1 c2) + e2 |b1|^2 / 2.
[[nodiscard]] BargmannElement compose(const BargmannElement& g1, const BargmannElement& g2);

[[nodiscard]] BargmannElement inverse(const BargmannElement& g);

using Wavefunction = std::function<Complex(const Vec3& r, double t)>;
using LiftedFunction = std::function<Complex(const ExtendedPoint&)>;

// psi*(r, t) = exp(-(i m / hbar)(b.(A r) + |b|^2 t / 2)) psi(r*, t*).
// Acting with g1 and then g2 equals acting with compose(g2, g1) up to the
// constant phase exp(-(i m / hbar) cocycle).
[[nodiscard]] Wavefunction act_wavefunction(const BargmannElement& g, Wavefunction psi, double mass,
                                            double hbar);

// Psi(t, r, s) = exp(i m s / hbar) psi(r, t).
[[nodiscard]] LiftedFunction lift_wavefunction(Wavefunction psi, double mass, double hbar);

// Constant phase relating act_wavefunction(g1, act_wavefunction(g2, psi)) to
// act_wavefunction(compose(g2, g1), psi): the former equals the latter times
// exp(i * returned value).
[[nodiscard]] double projective_phase(const BargmannElement& g1, const BargmannElement& g2,
                                      double mass, double hbar);

// Central-difference velocities of a sampled extended path (second-order
// one-sided stencils at the ends). Throws PathError for fewer than three
// samples or non-advancing time.
[[nodiscard]] std::vector<PathSample> finite_difference_path(std::span<const ExtendedPoint> points);

// Free Lagrangian per the extended form: m |r'|^2 / 2 + m ds/dt, with
// primes meaning d/dt along the path.
[[nodiscard]] double extended_free_lagrangian(const TangentVector& v, double mass);

// Max |L0(image) - L0(path)| when g maps the path with velocities pushed
// forward through act_tangent. Throws PathError on a sample with dt == 0.
[[nodiscard]] double verify_lagrangian_invariance(const BargmannElement& g,
                                                  std::span<const PathSample> path,
                                                  double mass = 1.0);

// Same check, but both the path and its image get finite-difference
// velocities from their sampled points.
[[nodiscard]] double verify_lagrangian_invariance(const BargmannElement& g,
                                                  std::span<const ExtendedPoint> points,
                                                  double mass = 1.0);

}  // namespace bargmann
