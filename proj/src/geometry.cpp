#include "bargmann/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace bargmann {

namespace {

std::string format_label(const std::string& family, std::initializer_list<double> params) {
  std::ostringstream os;
  os.precision(17);
  os << family;
  if (params.size() != 0) {
    os << '(';
    bool first = true;
    for (double v : params) {
      if (!first) os << ',';
      os << v;
      first = false;
    }
    os << ')';
  }
  return os.str();
}

}  // namespace

Vec5 ExtendedPoint::coords() const {
  Vec5 x;
  x << r.x(), r.y(), r.z(), t, s;
  return x;
}

ExtendedPoint ExtendedPoint::from_coords(const Vec5& x) {
  return ExtendedPoint{x[kT], Vec3(x[kX], x[kY], x[kZ]), x[kS]};
}

bool ExtendedPoint::finite() const {
  return std::isfinite(t) && std::isfinite(s) && r.allFinite();
}

Vec5 TangentVector::coords() const {
  Vec5 v;
  v << dr.x(), dr.y(), dr.z(), dt, ds;
  return v;
}

TangentVector TangentVector::from_coords(const Vec5& v) {
  return TangentVector{v[kT], Vec3(v[kX], v[kY], v[kZ]), v[kS]};
}

bool TangentVector::finite() const {
  return std::isfinite(dt) && std::isfinite(ds) && dr.allFinite();
}

Potential::Potential(std::string label, ValueFn value, GradFn grad, ValueFn time_deriv)
    : label_(std::move(label)),
      value_(std::move(value)),
      grad_(std::move(grad)),
      time_deriv_(std::move(time_deriv)) {}

Potential Potential::free() {
  return Potential(
      "free", [](const Vec3&, double) { return 0.0; },
      [](const Vec3&, double) { return Vec3::Zero().eval(); }, [](const Vec3&, double) { return 0.0; });
}

Potential Potential::uniform(const Vec3& g) {
  return Potential(
      format_label("uniform", {g.x(), g.y(), g.z()}),
      [g](const Vec3& r, double) { return g.dot(r); }, [g](const Vec3&, double) { return g; },
      [](const Vec3&, double) { return 0.0; });
}

Potential Potential::harmonic(double omega) {
  const double w2 = omega * omega;
  return Potential(
      format_label("harmonic", {omega}),
      [w2](const Vec3& r, double) { return 0.5 * w2 * r.squaredNorm(); },
      [w2](const Vec3& r, double) { return (w2 * r).eval(); },
      [](const Vec3&, double) { return 0.0; });
}

Potential Potential::kepler(double k, double softening) {
  return Potential(
      format_label("kepler", {k, softening}),
      [k, softening](const Vec3& r, double) { return -k / std::max(r.norm(), softening); },
      [k, softening](const Vec3& r, double) -> Vec3 {
        const double rn = r.norm();
        if (rn <= softening) return Vec3::Zero();
        return (k / (rn * rn * rn)) * r;
      },
      [](const Vec3&, double) { return 0.0; });
}

Potential Potential::constant(double u) {
  return Potential(
      format_label("constant", {u}), [u](const Vec3&, double) { return u; },
      [](const Vec3&, double) { return Vec3::Zero().eval(); }, [](const Vec3&, double) { return 0.0; });
}

BargmannMetric::BargmannMetric(Potential potential, double mass, double hbar)
    : potential_(std::move(potential)), mass_(mass), hbar_(hbar) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("BargmannMetric: mass must be positive and finite");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw std::invalid_argument("BargmannMetric: hbar must be positive and finite");
  }
}

double BargmannMetric::potential_at(const ExtendedPoint& p) const {
  const double u = potential_.value(p.r, p.t);
  if (!std::isfinite(u)) {
    std::ostringstream os;
    os << "potential " << potential_.label() << " is not finite at t=" << p.t;
    throw EvaluationError(os.str());
  }
  return u;
}

Matrix5 metric_components(const BargmannMetric& metric, const ExtendedPoint& p) {
  const double u = metric.potential_at(p);
  Matrix5 g = Matrix5::Zero();
  g(kX, kX) = g(kY, kY) = g(kZ, kZ) = 1.0;
  g(kT, kS) = g(kS, kT) = 1.0;
  g(kT, kT) = -2.0 * u;
  return g;
}

Matrix5 inverse_metric_components(const BargmannMetric& metric, const ExtendedPoint& p) {
  const double u = metric.potential_at(p);
  Matrix5 gi = Matrix5::Zero();
  gi(kX, kX) = gi(kY, kY) = gi(kZ, kZ) = 1.0;
  gi(kT, kS) = gi(kS, kT) = 1.0;
  gi(kS, kS) = 2.0 * u;
  return gi;
}

MetricDerivatives metric_derivatives(const BargmannMetric& metric, const ExtendedPoint& p) {
  const Vec3 du = metric.potential().grad(p.r, p.t);
  const double dtu = metric.potential().time_deriv(p.r, p.t);
  if (!du.allFinite() || !std::isfinite(dtu)) {
    throw EvaluationError("potential derivatives are not finite");
  }
  MetricDerivatives d;
  for (auto& m : d) m.setZero();
  // Only g_tt = -2U depends on the coordinates.
  for (int i = 0; i < 3; ++i) d[i](kT, kT) = -2.0 * du[i];
  d[kT](kT, kT) = -2.0 * dtu;
  return d;
}

Christoffel christoffel(const BargmannMetric& metric, const ExtendedPoint& p) {
  const Vec3 du = metric.potential().grad(p.r, p.t);
  const double dtu = metric.potential().time_deriv(p.r, p.t);
  if (!du.allFinite() || !std::isfinite(dtu)) {
    throw EvaluationError("potential derivatives are not finite");
  }
  Christoffel gamma;
  for (auto& m : gamma) m.setZero();
  for (int i = 0; i < 3; ++i) {
    gamma[i](kT, kT) = du[i];
    gamma[kS](kT, i) = gamma[kS](i, kT) = -du[i];
  }
  gamma[kS](kT, kT) = -dtu;
  return gamma;
}

double internal_energy(const BargmannMetric& metric, const ExtendedPoint& p,
                       const TangentVector& v) {
  const double u = metric.potential_at(p);
  return v.dr.squaredNorm() + 2.0 * v.ds * v.dt - 2.0 * u * v.dt * v.dt;
}

TangentVector null_completion(const BargmannMetric& metric, const ExtendedPoint& p,
                              const Vec3& dr, double dt) {
  if (dt == 0.0) {
    throw NoTimeFlow("null_completion: dt must be non-zero (vertical null rays are excluded)");
  }
  const double u = metric.potential_at(p);
  return TangentVector{dt, dr, u * dt - dr.squaredNorm() / (2.0 * dt)};
}

}  // namespace bargmann
