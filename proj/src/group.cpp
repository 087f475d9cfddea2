#include "bargmann/group.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/LU>

namespace bargmann {

namespace {

constexpr double kRotationTolerance = 1e-12;

void validate_rotation(const Matrix3& a) {
  if (!a.allFinite()) throw std::invalid_argument("BargmannElement: rotation is not finite");
  const double orth = (a.transpose() * a - Matrix3::Identity()).cwiseAbs().maxCoeff();
  if (orth > kRotationTolerance) {
    throw std::invalid_argument("BargmannElement: rotation is not orthogonal");
  }
  if (std::abs(a.determinant() - 1.0) > kRotationTolerance) {
    throw std::invalid_argument("BargmannElement: rotation must have determinant +1");
  }
}

// b.(A r) + t |b|^2 / 2, the exponent shared by the s-shift and the phase.
double galilean_exponent(const BargmannElement& g, const Vec3& r, double t) {
  return g.boost().dot(g.rotation() * r) + 0.5 * t * g.boost().squaredNorm();
}

}  // namespace

BargmannElement::BargmannElement()
    : a_(Matrix3::Identity()), b_(Vec3::Zero()), c_(Vec3::Zero()), e_(0.0), h_(0.0) {}

BargmannElement::BargmannElement(const Matrix3& rotation, const Vec3& boost, const Vec3& translation,
                                 double time_shift, double vertical_shift)
    : a_(rotation), b_(boost), c_(translation), e_(time_shift), h_(vertical_shift) {
  validate_rotation(a_);
  if (!b_.allFinite() || !c_.allFinite() || !std::isfinite(e_) || !std::isfinite(h_)) {
    throw std::invalid_argument("BargmannElement: parameters must be finite");
  }
}

BargmannElement BargmannElement::boost(const Vec3& b) {
  return {Matrix3::Identity(), b, Vec3::Zero(), 0.0, 0.0};
}

BargmannElement BargmannElement::translation(const Vec3& c) {
  return {Matrix3::Identity(), Vec3::Zero(), c, 0.0, 0.0};
}

BargmannElement BargmannElement::rotation(const Matrix3& a) {
  return {a, Vec3::Zero(), Vec3::Zero(), 0.0, 0.0};
}

BargmannElement BargmannElement::time_shift(double e) {
  return {Matrix3::Identity(), Vec3::Zero(), Vec3::Zero(), e, 0.0};
}

BargmannElement BargmannElement::vertical_shift(double h) {
  return {Matrix3::Identity(), Vec3::Zero(), Vec3::Zero(), 0.0, h};
}

ExtendedPoint act_point(const BargmannElement& g, const ExtendedPoint& p) {
  ExtendedPoint q;
  q.r = g.rotation() * p.r + g.boost() * p.t + g.translation();
  q.t = p.t + g.time_shift();
  q.s = p.s - galilean_exponent(g, p.r, p.t) - g.vertical_shift();
  return q;
}

TangentVector act_tangent(const BargmannElement& g, const TangentVector& v) {
  const Vec3 adr = g.rotation() * v.dr;
  TangentVector w;
  w.dt = v.dt;
  w.dr = adr + g.boost() * v.dt;
  w.ds = v.ds - g.boost().dot(adr) - 0.5 * g.boost().squaredNorm() * v.dt;
  return w;
}

BargmannElement compose(const BargmannElement& g1, const BargmannElement& g2) {
  const Matrix3& a1 = g1.rotation();
  const Vec3& b1 = g1.boost();
  const Matrix3 a = a1 * g2.rotation();
  const Vec3 b = a1 * g2.boost() + b1;
  const Vec3 c = a1 * g2.translation() + b1 * g2.time_shift() + g1.translation();
  const double e = g1.time_shift() + g2.time_shift();
  const double h = g1.vertical_shift() + g2.vertical_shift() + b1.dot(a1 * g2.translation()) +
                   0.5 * g2.time_shift() * b1.squaredNorm();
  return {a, b, c, e, h};
}

BargmannElement inverse(const BargmannElement& g) {
  const Matrix3 at = g.rotation().transpose();
  const Vec3& b = g.boost();
  const Vec3& c = g.translation();
  const double e = g.time_shift();
  return {at, -(at * b), at * (b * e - c), -e,
          -g.vertical_shift() + b.dot(c) - 0.5 * e * b.squaredNorm()};
}

Wavefunction act_wavefunction(const BargmannElement& g, Wavefunction psi, double mass,
                              double hbar) {
  return [g, psi = std::move(psi), k = mass / hbar](const Vec3& r, double t) -> Complex {
    const double phase = -k * galilean_exponent(g, r, t);
    const Vec3 rs = g.rotation() * r + g.boost() * t + g.translation();
    return std::polar(1.0, phase) * psi(rs, t + g.time_shift());
  };
}

LiftedFunction lift_wavefunction(Wavefunction psi, double mass, double hbar) {
  if (!std::isfinite(mass) || !std::isfinite(hbar) || !(hbar > 0.0)) {
    throw std::invalid_argument("lift_wavefunction: need finite mass and hbar > 0");
  }
  return [psi = std::move(psi), k = mass / hbar](const ExtendedPoint& p) -> Complex {
    return std::polar(1.0, k * p.s) * psi(p.r, p.t);
  };
}

double projective_phase(const BargmannElement& g1, const BargmannElement& g2, double mass,
                        double hbar) {
  // Acting with g1 then g2 reads psi at g2(g1(r, t)); the accumulated exponent
  // differs from that of compose(g2, g1) by its cocycle term.
  const BargmannElement g21 = compose(g2, g1);
  const double cocycle = g21.vertical_shift() - g1.vertical_shift() - g2.vertical_shift();
  return -(mass / hbar) * cocycle;
}

std::vector<PathSample> finite_difference_path(std::span<const ExtendedPoint> points) {
  const std::size_t n = points.size();
  if (n < 3) throw PathError("finite_difference_path: need at least three samples");
  for (std::size_t k = 1; k < n; ++k) {
    if (!(points[k].t > points[k - 1].t)) {
      throw PathError("finite_difference_path: time must strictly increase");
    }
  }
  std::vector<PathSample> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Vec5 d;
    if (k == 0) {
      const double h1 = points[1].t - points[0].t;
      const double h2 = points[2].t - points[1].t;
      const Vec5 x0 = points[0].coords(), x1 = points[1].coords(), x2 = points[2].coords();
      // Second-order one-sided stencil on a possibly non-uniform grid.
      d = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * x0 + (h1 + h2) / (h1 * h2) * x1 -
          h1 / (h2 * (h1 + h2)) * x2;
    } else if (k == n - 1) {
      const double h1 = points[n - 2].t - points[n - 3].t;
      const double h2 = points[n - 1].t - points[n - 2].t;
      const Vec5 x0 = points[n - 3].coords(), x1 = points[n - 2].coords(),
                 x2 = points[n - 1].coords();
      d = h2 / (h1 * (h1 + h2)) * x0 - (h1 + h2) / (h1 * h2) * x1 +
          (2.0 * h2 + h1) / (h2 * (h1 + h2)) * x2;
    } else {
      const double h1 = points[k].t - points[k - 1].t;
      const double h2 = points[k + 1].t - points[k].t;
      const Vec5 x0 = points[k - 1].coords(), x1 = points[k].coords(), x2 = points[k + 1].coords();
      d = -h2 / (h1 * (h1 + h2)) * x0 + (h2 - h1) / (h1 * h2) * x1 + h1 / (h2 * (h1 + h2)) * x2;
    }
    out[k].point = points[k];
    out[k].velocity = TangentVector::from_coords(d);
    out[k].velocity.dt = 1.0;
  }
  return out;
}

double extended_free_lagrangian(const TangentVector& v, double mass) {
  if (v.dt == 0.0) throw PathError("extended_free_lagrangian: dt must be non-zero");
  const Vec3 rp = v.dr / v.dt;
  return 0.5 * mass * rp.squaredNorm() + mass * v.ds / v.dt;
}

double verify_lagrangian_invariance(const BargmannElement& g, std::span<const PathSample> path,
                                    double mass) {
  double worst = 0.0;
  for (const PathSample& sample : path) {
    const double before = extended_free_lagrangian(sample.velocity, mass);
    const double after = extended_free_lagrangian(act_tangent(g, sample.velocity), mass);
    worst = std::max(worst, std::abs(after - before));
  }
  return worst;
}

double verify_lagrangian_invariance(const BargmannElement& g, std::span<const ExtendedPoint> points,
                                    double mass) {
  std::vector<ExtendedPoint> image;
  image.reserve(points.size());
  for (const ExtendedPoint& p : points) image.push_back(act_point(g, p));
  const auto original = finite_difference_path(points);
  const auto mapped = finite_difference_path(image);
  double worst = 0.0;
  for (std::size_t k = 0; k < original.size(); ++k) {
    const double before = extended_free_lagrangian(original[k].velocity, mass);
    const double after = extended_free_lagrangian(mapped[k].velocity, mass);
    worst = std::max(worst, std::abs(after - before));
  }
  return worst;
}

}  // namespace bargmann
