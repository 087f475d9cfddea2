#include "bargmann/quantum.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bargmann {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

ExtendedPoint shifted(const ExtendedPoint& p, int axis, double delta) {
  Vec5 x = p.coords();
  x[axis] += delta;
  return ExtendedPoint::from_coords(x);
}

ExtendedPoint shifted(const ExtendedPoint& p, int a, double da, int b, double db) {
  Vec5 x = p.coords();
  x[a] += da;
  x[b] += db;
  return ExtendedPoint::from_coords(x);
}

LiftedSecondDerivatives finite_difference_second(const LiftedWavefunction& psi,
                                                 const ExtendedPoint& p, double h) {
  const Complex f0 = psi.eval(p);
  LiftedSecondDerivatives d{};
  for (int i = 0; i < 3; ++i) {
    d.spatial_laplacian += (psi.eval(shifted(p, i, h)) - 2.0 * f0 + psi.eval(shifted(p, i, -h))) / (h * h);
  }
  d.dt_ds = (psi.eval(shifted(p, kT, h, kS, h)) - psi.eval(shifted(p, kT, h, kS, -h)) -
             psi.eval(shifted(p, kT, -h, kS, h)) + psi.eval(shifted(p, kT, -h, kS, -h))) /
            (4.0 * h * h);
  d.ds_ds = (psi.eval(shifted(p, kS, h)) - 2.0 * f0 + psi.eval(shifted(p, kS, -h))) / (h * h);
  return d;
}

}  // namespace

SchrodingerSolution plane_wave(const Vec3& momentum, double mass, double hbar, double energy_offset) {
  require_positive(mass, "plane_wave: mass");
  require_positive(hbar, "plane_wave: hbar");
  const double energy = momentum.squaredNorm() / (2.0 * mass) + energy_offset;
  const double k2 = momentum.squaredNorm() / (hbar * hbar);
  auto value = [momentum, energy, hbar](const Vec3& r, double t) {
    return std::polar(1.0, (momentum.dot(r) - energy * t) / hbar);
  };
  std::ostringstream label;
  label.precision(17);
  label << "plane_wave(" << momentum.x() << ',' << momentum.y() << ',' << momentum.z()
        << ";offset=" << energy_offset << ')';
  return {label.str(), value,
          [value, k2](const Vec3& r, double t) { return -k2 * value(r, t); },
          [value, energy, hbar](const Vec3& r, double t) { return -kI * (energy / hbar) * value(r, t); }};
}

SchrodingerSolution harmonic_ground_state(double omega, double mass, double hbar) {
  require_positive(omega, "harmonic_ground_state: omega");
  require_positive(mass, "harmonic_ground_state: mass");
  require_positive(hbar, "harmonic_ground_state: hbar");
  const double a = mass * omega / (2.0 * hbar);
  const double energy = 1.5 * hbar * omega;
  auto value = [a, energy, hbar](const Vec3& r, double t) {
    return std::exp(-a * r.squaredNorm()) * std::polar(1.0, -energy * t / hbar);
  };
  std::ostringstream label;
  label.precision(17);
  label << "harmonic_ground_state(" << omega << ')';
  return {label.str(), value,
          [value, a](const Vec3& r, double t) {
            return (4.0 * a * a * r.squaredNorm() - 6.0 * a) * value(r, t);
          },
          [value, energy, hbar](const Vec3& r, double t) { return -kI * (energy / hbar) * value(r, t); }};
}

SchrodingerSolution gaussian_packet(double sigma, double mass, double hbar) {
  require_positive(sigma, "gaussian_packet: sigma");
  require_positive(mass, "gaussian_packet: mass");
  require_positive(hbar, "gaussian_packet: hbar");
  const double s2 = sigma * sigma;
  // Complex width a(t) = sigma^2 + i hbar t / m.
  auto width = [s2, hbar, mass](double t) { return Complex(s2, hbar * t / mass); };
  auto value = [s2, width](const Vec3& r, double t) {
    const Complex a = width(t);
    return std::pow(s2 / a, 1.5) * std::exp(-r.squaredNorm() / (2.0 * a));
  };
  std::ostringstream label;
  label.precision(17);
  label << "gaussian_packet(" << sigma << ')';
  return {label.str(), value,
          [value, width](const Vec3& r, double t) {
            const Complex a = width(t);
            return (r.squaredNorm() / (a * a) - 3.0 / a) * value(r, t);
          },
          [value, width, hbar, mass](const Vec3& r, double t) {
            const Complex a = width(t);
            const Complex adot = kI * hbar / mass;
            return adot * (r.squaredNorm() / (2.0 * a * a) - 1.5 / a) * value(r, t);
          }};
}

LiftedWavefunction lift(const SchrodingerSolution& psi, double mass, double hbar) {
  require_positive(hbar, "lift: hbar");
  const double k = mass / hbar;
  LiftedWavefunction out;
  out.eval = [value = psi.value, k](const ExtendedPoint& p) {
    return std::polar(1.0, k * p.s) * value(p.r, p.t);
  };
  out.second = [psi, k](const ExtendedPoint& p) {
    const Complex phase = std::polar(1.0, k * p.s);
    LiftedSecondDerivatives d;
    d.spatial_laplacian = phase * psi.laplacian(p.r, p.t);
    d.dt_ds = kI * k * phase * psi.time_deriv(p.r, p.t);
    d.ds_ds = -k * k * phase * psi.value(p.r, p.t);
    return d;
  };
  return out;
}

Complex laplacian_5d(const BargmannMetric& metric, const LiftedWavefunction& psi,
                     const ExtendedPoint& p, double fd_step, DerivativeMode mode) {
  const double u = metric.potential_at(p);
  LiftedSecondDerivatives d;
  if (mode == DerivativeMode::kAuto && psi.second) {
    d = psi.second(p);
  } else {
    if (!(fd_step > 0.0)) throw std::invalid_argument("laplacian_5d: fd_step must be positive");
    d = finite_difference_second(psi, p, fd_step);
  }
  const Complex out = d.spatial_laplacian + 2.0 * d.dt_ds + 2.0 * u * d.ds_ds;
  if (!std::isfinite(out.real()) || !std::isfinite(out.imag())) {
    throw EvaluationError("laplacian_5d: non-finite result");
  }
  return out;
}

Complex schrodinger_residual(const SchrodingerSolution& psi, const Potential& potential, double mass,
                             double hbar, const Vec3& r, double t) {
  return (-hbar * hbar / (2.0 * mass)) * psi.laplacian(r, t) +
         mass * potential.value(r, t) * psi.value(r, t) - kI * hbar * psi.time_deriv(r, t);
}

LiftComparison lift_equivalence_check(const BargmannMetric& metric, const SchrodingerSolution& psi,
                                      const ExtendedPoint& p, double fd_step, DerivativeMode mode) {
  const double m = metric.mass();
  const double hbar = metric.hbar();
  LiftComparison out;
  out.lifted = std::abs(laplacian_5d(metric, lift(psi, m, hbar), p, fd_step, mode));
  out.residual = std::abs(schrodinger_residual(psi, metric.potential(), m, hbar, p.r, p.t));
  out.mismatch = std::abs(out.lifted - (2.0 * m / (hbar * hbar)) * out.residual);
  out.ratio = out.residual > 0.0 ? out.lifted / out.residual
                                 : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace bargmann
