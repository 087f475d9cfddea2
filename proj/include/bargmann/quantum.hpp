#pragma once

// The Schrodinger equation as a wave equation on the Bargmann manifold.
//
// For the metric with inverse g^ij = delta_ij, g^ts = 1, g^ss = 2U and
// det g = -1, the Laplace-Beltrami operator has no first-order part:
//
//   Delta_g = d_x^2 + d_y^2 + d_z^2 + 2 d_t d_s + 2 U d_s^2.
//
// On an equivariant lift Psi = exp(i m s / hbar) psi this gives
//
//   Delta_g Psi = -(2m / hbar^2) exp(i m s / hbar) [ -hbar^2/(2m) lap psi + m U psi - i hbar d_t psi ],
//
// so Delta_g Psi = 0 exactly when psi solves the Schrodinger equation.

#include <functional>
#include <optional>
#include <string>

#include "bargmann/geometry.hpp"
#include "bargmann/group.hpp"

namespace bargmann {

// psi(r, t) with the analytic derivatives the residual needs.
struct SchrodingerSolution {
  std::string label;
  std::function<Complex(const Vec3&, double)> value;
  std::function<Complex(const Vec3&, double)> laplacian;
  std::function<Complex(const Vec3&, double)> time_deriv;
};

// exp(i (p.r - E t) / hbar), E = |p|^2 / 2m + energy_offset. A non-zero
// offset makes a deliberately wrong solution.
[[nodiscard]] SchrodingerSolution plane_wave(const Vec3& momentum, double mass, double hbar,
                                             double energy_offset = 0.0);

// exp(-m omega |r|^2 / 2 hbar) exp(-i 3 omega t / 2) for U = omega^2 |r|^2 / 2.
[[nodiscard]] SchrodingerSolution harmonic_ground_state(double omega, double mass, double hbar);

// Spreading free Gaussian of initial width sigma centred at the origin.
[[nodiscard]] SchrodingerSolution gaussian_packet(double sigma, double mass, double hbar);

struct LiftedSecondDerivatives {
  Complex spatial_laplacian;
  Complex dt_ds;
  Complex ds_ds;
};

struct LiftedWavefunction {
  std::function<Complex(const ExtendedPoint&)> eval;
  // Optional; when empty every derivative is taken by finite differences.
  std::function<LiftedSecondDerivatives(const ExtendedPoint&)> second;
};

[[nodiscard]] LiftedWavefunction lift(const SchrodingerSolution& psi, double mass, double hbar);

enum class DerivativeMode { kAuto, kFiniteDifference };

// Delta_g Psi at p. kAuto uses the analytic derivatives when supplied,
// otherwise central differences of step fd_step.
[[nodiscard]] Complex laplacian_5d(const BargmannMetric& metric, const LiftedWavefunction& psi,
                                   const ExtendedPoint& p, double fd_step = 1e-3,
                                   DerivativeMode mode = DerivativeMode::kAuto);

// (-hbar^2 / 2m) lap psi + m U psi - i hbar d_t psi at (r, t).
[[nodiscard]] Complex schrodinger_residual(const SchrodingerSolution& psi, const Potential& potential,
                                           double mass, double hbar, const Vec3& r, double t);

struct LiftComparison {
  double lifted = 0.0;    // |Delta_g Psi|
  double residual = 0.0;  // |Schrodinger residual|
  // | |Delta_g Psi| - (2m / hbar^2) |residual| |
  double mismatch = 0.0;
  // |Delta_g Psi| / |residual|; NaN when the residual vanishes.
  double ratio = 0.0;
};

// Both sides of the lift identity at p, with mass, hbar and potential taken
// from the metric.
[[nodiscard]] LiftComparison lift_equivalence_check(const BargmannMetric& metric,
                                                    const SchrodingerSolution& psi,
                                                    const ExtendedPoint& p, double fd_step = 1e-3,
                                                    DerivativeMode mode = DerivativeMode::kAuto);

}  // namespace bargmann
