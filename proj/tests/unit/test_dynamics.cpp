#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "bargmann/dynamics.hpp"

using namespace bargmann;

namespace {

double kepler_period(double k, const Vec3& r0, const Vec3& v0) {
  const double energy = 0.5 * v0.squaredNorm() - k / r0.norm();
  const double a = -k / (2.0 * energy);
  return 2.0 * std::numbers::pi * std::sqrt(a * a * a / k);
}

}  // namespace

TEST_CASE("geodesic acceleration examples") {
  const ExtendedPoint origin{};
  const TangentVector moving{1.0, Vec3(0.3, -0.1, 2.0), 0.7};

  const TangentVector free_acc = geodesic_rhs(BargmannMetric(Potential::free()), origin, moving);
  CHECK(free_acc.coords().cwiseAbs().maxCoeff() == 0.0);

  const TangentVector fall =
      geodesic_rhs(BargmannMetric(Potential::uniform(Vec3(0, 0, 9.8))), origin, moving);
  CHECK(fall.dr.z() == -9.8);
  CHECK(fall.dr.x() == 0.0);
  CHECK(fall.dt == 0.0);

  const TangentVector osc = geodesic_rhs(BargmannMetric(Potential::harmonic(1.0)),
                                         ExtendedPoint{0.0, Vec3(1, 0, 0), 0.0},
                                         TangentVector{1.0, Vec3(0, 1, 0), 0.0});
  CHECK(osc.dr == Vec3(-1, 0, 0));
  CHECK(osc.ds == 0.0);
  CHECK(osc.dt == 0.0);
}

TEST_CASE("step count rounds to the nearest step") {
  CHECK(step_count(0.0, 10.0, 1e-3) == 10000);
  CHECK(step_count(0.0, 0.0031, 1e-3) == 3);
  CHECK(step_count(1.0, 1.0004, 1e-3) == 1);
  CHECK_THROWS_AS((void)step_count(0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)step_count(1.0, 1.0, 0.1), std::invalid_argument);
}

TEST_CASE("free null geodesics are straight lines") {
  const BargmannMetric metric(Potential::free());
  const Vec3 v(0.4, -1.3, 0.25);
  const Trajectory traj = integrate_null_geodesic(metric, ExtendedPoint{}, v, 1e-3, 10.0);
  CHECK(traj.size() == 10001);
  double worst = 0.0;
  for (const PathSample& smp : traj.samples) {
    worst = std::max(worst, (smp.point.r - v * smp.point.t).norm() / (1.0 + smp.point.r.norm()));
    CHECK(smp.velocity.dt == 1.0);
  }
  CHECK(worst < 1e-12);
  CHECK(constraint_drift(traj) < 1e-12);
}

TEST_CASE("harmonic geodesic projects to cos t") {
  const BargmannMetric metric(Potential::harmonic(1.0));
  const Trajectory traj =
      integrate_null_geodesic(metric, ExtendedPoint{0.0, Vec3(1, 0, 0), 0.0}, Vec3::Zero(), 1e-3, 10.0);
  double worst = 0.0;
  for (const PathSample& smp : traj.samples) {
    worst = std::max(worst, (smp.point.r - Vec3(std::cos(smp.point.t), 0, 0)).norm());
  }
  CHECK(worst < 1e-8);
  CHECK(constraint_drift(traj) < 1e-9);
}

TEST_CASE("uniform field geodesic is a parabola") {
  const double g = 9.8;
  const BargmannMetric metric(Potential::uniform(Vec3(0, 0, g)));
  const Vec3 r0(0.5, 0, 2.0), v0(1.0, 0.0, 3.0);
  const Trajectory traj = integrate_null_geodesic(metric, ExtendedPoint{0.0, r0, 0.0}, v0, 1e-3, 2.0);
  double worst = 0.0;
  for (const PathSample& smp : traj.samples) {
    const double t = smp.point.t;
    worst = std::max(worst, std::abs(smp.point.r.z() - (r0.z() + v0.z() * t - 0.5 * g * t * t)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("time is affine along every geodesic") {
  const BargmannMetric metric(Potential::kepler(1.0));
  const Trajectory traj =
      integrate_null_geodesic(metric, ExtendedPoint{0.5, Vec3(1, 0, 0), 0.0}, Vec3(0, 1.1, 0.1), 1e-2, 3.0);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const PathSample& smp = traj.samples[k];
    CHECK(smp.velocity.dt == 1.0);
    CHECK(smp.point.t == 0.5 + static_cast<double>(k) * 1e-2);
    CHECK(geodesic_rhs(metric, smp.point, smp.velocity).dt == 0.0);
  }
}

TEST_CASE("newtonian oracle reference solutions") {
  SUBCASE("free") {
    const Vec3 r0(1, 2, 3), v0(-0.5, 0.25, 1.0);
    const NewtonianTrajectory tr = newtonian_oracle(Potential::free(), r0, v0, 0.0, 1e-3, 10.0);
    double worst = 0.0;
    for (const auto& s : tr.samples) {
      worst = std::max(worst, (s.r - (r0 + v0 * s.t)).norm() / (1.0 + s.r.norm()));
    }
    CHECK(worst < 1e-12);
  }
  SUBCASE("harmonic") {
    const NewtonianTrajectory tr =
        newtonian_oracle(Potential::harmonic(1.0), Vec3(1, 0, 0), Vec3::Zero(), 0.0, 1e-3, 10.0);
    double worst = 0.0;
    for (const auto& s : tr.samples) worst = std::max(worst, (s.r - Vec3(std::cos(s.t), 0, 0)).norm());
    CHECK(worst < 1e-8);
  }
  SUBCASE("kepler circular orbit") {
    const NewtonianTrajectory tr = newtonian_oracle(Potential::kepler(1.0), Vec3(1, 0, 0), Vec3(0, 1, 0),
                                                    0.0, 1e-3, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (const auto& s : tr.samples) worst = std::max(worst, std::abs(s.r.norm() - 1.0));
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("projection deviation") {
  SUBCASE("free") {
    const BargmannMetric metric(Potential::free());
    const Vec3 r0(0.1, 0.2, 0.3), v0(1, -1, 0.5);
    const Trajectory traj = integrate_null_geodesic(metric, ExtendedPoint{0.0, r0, 0.0}, v0, 1e-3, 10.0);
    CHECK(projection_deviation(traj, newtonian_oracle(metric.potential(), r0, v0, 0.0, 1e-3, 10.0)) < 1e-12);
  }
  SUBCASE("harmonic") {
    const BargmannMetric metric(Potential::harmonic(1.0));
    const Vec3 r0(1, 0, 0), v0(0, 0.5, 0);
    const Trajectory traj = integrate_null_geodesic(metric, ExtendedPoint{0.0, r0, 0.0}, v0, 1e-3, 10.0);
    CHECK(projection_deviation(traj, newtonian_oracle(metric.potential(), r0, v0, 0.0, 1e-3, 10.0)) < 1e-8);
  }
  SUBCASE("kepler ellipse over one period") {
    const BargmannMetric metric(Potential::kepler(1.0));
    const Vec3 r0(1, 0, 0), v0(0, 1.2, 0);
    const double period = kepler_period(1.0, r0, v0);
    const Trajectory traj = integrate_null_geodesic(metric, ExtendedPoint{0.0, r0, 0.0}, v0, 1e-3, period);
    const auto oracle = newtonian_oracle(metric.potential(), r0, v0, 0.0, 1e-3, period);
    CHECK(projection_deviation(traj, oracle) < 1e-6);
    CHECK(constraint_drift(traj) < 1e-7);
    // One period later the orbit closes on itself.
    CHECK((traj.samples.back().point.r - r0).norm() < 1e-3);
  }
  SUBCASE("grid mismatch") {
    const BargmannMetric metric(Potential::free());
    const Trajectory traj = integrate_null_geodesic(metric, ExtendedPoint{}, Vec3(1, 0, 0), 1e-2, 1.0);
    CHECK_THROWS_AS((void)projection_deviation(traj, newtonian_oracle(metric.potential(), Vec3::Zero(),
                                                                      Vec3(1, 0, 0), 0.0, 1e-2, 2.0)),
                    GridError);
    CHECK_THROWS_AS((void)projection_deviation(traj, newtonian_oracle(metric.potential(), Vec3::Zero(),
                                                                      Vec3(1, 0, 0), 0.5, 1e-2, 1.5)),
                    GridError);
  }
}

TEST_CASE("projection deviation converges at fourth order") {
  // Both integrators are fourth order but with different error constants, so
  // their difference shrinks like h^4.
  const Vec3 r0(1, 0, 0), v0(0, 1.2, 0);
  const double period = kepler_period(1.0, r0, v0);
  const BargmannMetric kepler(Potential::kepler(1.0));
  const BargmannMetric harmonic(Potential::harmonic(1.3));
  for (const BargmannMetric* metric : {&kepler, &harmonic}) {
    CAPTURE(metric->potential().label());
    const double t_end = metric == &kepler ? period : 10.0;
    auto deviation = [&](double h) {
      const Trajectory traj = integrate_null_geodesic(*metric, ExtendedPoint{0.0, r0, 0.0}, v0, h, t_end);
      return projection_deviation(traj, newtonian_oracle(metric->potential(), r0, v0, 0.0, h, t_end));
    };
    // t_end must land on both grids for the comparison to be like for like.
    const double coarse = deviation(4e-3);
    const double fine = deviation(2e-3);
    CHECK(coarse / fine >= 12.0);
  }
}

TEST_CASE("constraint drift scales like h^4") {
  const BargmannMetric metric(Potential::harmonic(2.0));
  auto drift = [&](double h) {
    return constraint_drift(
        integrate_null_geodesic(metric, ExtendedPoint{0.0, Vec3(1, 0.5, 0), 0.0}, Vec3(0, 1, -1), h, 8.0));
  };
  const double ratio = drift(1e-2) / drift(5e-3);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("cumulative simpson is exact for low-order polynomials") {
  // Even nodes and the 3/8 closure are exact for cubics; the half-interval
  // rule at odd nodes only for quadratics.
  auto cubic = [](double t) { return 1.0 + 2.0 * t - 3.0 * t * t + t * t * t; };
  auto cubic_int = [](double t) { return t + t * t - t * t * t + 0.25 * t * t * t * t; };
  auto quad = [](double t) { return 0.5 - t + 4.0 * t * t; };
  auto quad_int = [](double t) { return 0.5 * t - 0.5 * t * t + 4.0 / 3.0 * t * t * t; };
  const double h = 0.37;
  for (std::size_t n : {3u, 4u, 7u, 10u, 101u}) {
    CAPTURE(n);
    std::vector<double> fc(n), fq(n);
    for (std::size_t k = 0; k < n; ++k) {
      fc[k] = cubic(static_cast<double>(k) * h);
      fq[k] = quad(static_cast<double>(k) * h);
    }
    const auto ic = cumulative_simpson(fc, h);
    const auto iq = cumulative_simpson(fq, h);
    for (std::size_t k = 0; k < n; ++k) {
      const double t = static_cast<double>(k) * h;
      CHECK(iq[k] == doctest::Approx(quad_int(t)).epsilon(1e-12));
      if (k % 2 == 0 || k == n - 1) CHECK(ic[k] == doctest::Approx(cubic_int(t)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS((void)cumulative_simpson({1.0, 2.0}, 0.1), PathError);
}

TEST_CASE("vertical coordinate follows minus the action") {
  SUBCASE("free particle") {
    const BargmannMetric metric(Potential::free());
    const Vec3 v(1.0, 2.0, -0.5);
    const Trajectory traj = integrate_null_geodesic(metric, ExtendedPoint{0.0, Vec3::Zero(), 0.3}, v, 1e-3, 10.0);
    CHECK(vertical_check(traj, 1.0) < 1e-10);
    CHECK(traj.samples.back().point.s == doctest::Approx(0.3 - 0.5 * v.squaredNorm() * 10.0).epsilon(1e-12));
  }
  SUBCASE("harmonic: s = s0 + sin(2t)/4") {
    const BargmannMetric metric(Potential::harmonic(1.0));
    const double s0 = -0.2;
    const Trajectory traj =
        integrate_null_geodesic(metric, ExtendedPoint{0.0, Vec3(1, 0, 0), s0}, Vec3::Zero(), 1e-3, 10.0);
    CHECK(vertical_check(traj, 2.0) < 1e-8);
    double worst = 0.0;
    for (const auto& smp : traj.samples) {
      worst = std::max(worst, std::abs(smp.point.s - (s0 + 0.25 * std::sin(2.0 * smp.point.t))));
    }
    CHECK(worst < 1e-8);
  }
  SUBCASE("at rest in the free potential") {
    const BargmannMetric metric(Potential::free());
    const Trajectory traj = integrate_null_geodesic(metric, ExtendedPoint{0.0, Vec3(1, 1, 1), 4.0},
                                                    Vec3::Zero(), 0.1, 1.0);
    for (const auto& smp : traj.samples) CHECK(smp.point.s == 4.0);
    CHECK(vertical_check(traj, 1.0) == 0.0);
  }
  SUBCASE("too short") {
    const BargmannMetric metric(Potential::free());
    const Trajectory traj = integrate_null_geodesic(metric, ExtendedPoint{}, Vec3::Zero(), 0.1, 0.1);
    CHECK(traj.size() == 2);
    CHECK_THROWS_AS((void)vertical_check(traj, 1.0), PathError);
  }
}

TEST_CASE("non-finite states abort with the partial trajectory") {
  // Finite for x < 1, NaN beyond: the particle accelerates into the wall.
  const Potential wall(
      "wall",
      [](const Vec3& r, double) { return r.x() < 1.0 ? -r.x() : std::numeric_limits<double>::quiet_NaN(); },
      [](const Vec3& r, double) -> Vec3 {
        return r.x() < 1.0 ? Vec3(-1, 0, 0) : Vec3::Constant(std::numeric_limits<double>::quiet_NaN());
      },
      [](const Vec3&, double) { return 0.0; });
  const BargmannMetric metric(wall);
  try {
    (void)integrate_null_geodesic(metric, ExtendedPoint{}, Vec3::Zero(), 1e-2, 5.0);
    FAIL("expected NonFiniteState");
  } catch (const NonFiniteState& e) {
    REQUIRE(!e.partial_samples().empty());
    CHECK(e.last_valid_index() == e.partial_samples().size() - 1);
    CHECK(e.partial_samples().back().point.r.x() < 1.0);
    CHECK(e.partial_samples().back().point.finite());
  }
}
