#include <cmath>
#include <random>

#include "doctest.h"
#include "iipg/case_study.hpp"
#include "iipg/error.hpp"
#include "iipg/guidance.hpp"

using namespace iipg;
using doctest::Approx;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an iipg::Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("arc direction on the equator") {
  const ArcDirection a = arc_direction(Vec3::UnitX(), {Vec3::UnitY()}, 1e-9);
  CHECK((a.i_q - Vec3::UnitZ()).norm() < 1e-15);
  CHECK((a.i_u - Vec3::UnitY()).norm() < 1e-15);

  const double eps = 1e-3;
  const ArcDirection b =
      arc_direction(Vec3::UnitX(), {Vec3(std::cos(eps), std::sin(eps), 0)}, 1e-9);
  CHECK((b.i_u - Vec3::UnitY()).norm() < 1e-6);
  CHECK((b.i_q - Vec3::UnitZ()).norm() < 1e-6);
}

TEST_CASE("arc direction frame is orthonormal") {
  const Vec3 p = Vec3(0.3, -0.8, 0.5).normalized();
  const Vec3 t = Vec3(0.2, -0.7, 0.6).normalized();
  const ArcDirection a = arc_direction(p, {t}, 1e-9);
  CHECK(a.i_u.dot(p) == Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(a.i_q.dot(p) == Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(a.i_q.dot(t) == Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(a.i_u.dot(t) > 0.0);
}

TEST_CASE("arc direction errors") {
  CHECK(kind_of([] { arc_direction(Vec3::UnitX(), {Vec3::UnitX()}, 1e-9); }) ==
        ErrorKind::Converged);
  CHECK(kind_of([] { arc_direction(Vec3::UnitX(), {-Vec3::UnitX()}, 1e-9); }) ==
        ErrorKind::Antipodal);
}

TEST_CASE("P_CG hand cases") {
  SUBCASE("objective already feasible") {
    const PcgSolution s = solve_pcg(Vec3(1, 0, 0), Vec3(0, 1, 0), 2.0);
    CHECK(s.lambda2 == 0.0);
    CHECK((s.x - Vec3(2, 0, 0)).norm() < 1e-15);
    CHECK_FALSE(s.unconstrained);
  }
  SUBCASE("objective projected onto the constraint plane") {
    const PcgSolution s = solve_pcg(Vec3(1, 1, 0), Vec3(0, 1, 0), 1.0);
    CHECK(s.lambda2 == Approx(-1.0));
    CHECK((s.x - Vec3(1, 0, 0)).norm() < 1e-15);
    CHECK(Vec3(1, 1, 0).dot(s.x) == Approx(1.0));
  }
}

TEST_CASE("P_CG solution is feasible, optimal and scale invariant") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  for (int i = 0; i < 200; ++i) {
    const Vec3 c(n01(rng), n01(rng), n01(rng));
    const Vec3 f(n01(rng), n01(rng), n01(rng));
    const double a_m = 1.0 + 30.0 * std::abs(n01(rng));
    const PcgSolution s = solve_pcg(c, f, a_m);
    CHECK(std::abs(s.x.norm() - a_m) / a_m < 1e-12);
    CHECK(std::abs(f.dot(s.x)) / (f.norm() * a_m) < 1e-12);
    CHECK(s.lambda1 < 0.0);

    const Vec3 proj = c - c.dot(f) / f.squaredNorm() * f;
    CHECK(c.dot(s.x) == Approx(a_m * proj.norm()).epsilon(1e-12));

    const PcgSolution scaled = solve_pcg(3.5 * c, 0.01 * f, a_m);
    CHECK((scaled.x - s.x).norm() < 1e-12 * a_m);
  }
}

TEST_CASE("P_CG degenerate inputs") {
  CHECK(kind_of([] { solve_pcg(Vec3(0, 2, 0), Vec3(0, 1, 0), 1.0); }) ==
        ErrorKind::DegenerateObjective);
  const PcgSolution s = solve_pcg(Vec3(3, 4, 0), Vec3::Zero(), 10.0);
  CHECK(s.unconstrained);
  CHECK((s.x - Vec3(6, 8, 0)).norm() < 1e-14);
  CHECK(kind_of([] { solve_pcg(Vec3(1, 0, 0), Vec3(0, 1, 0), 0.0); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("guidance step at the current IIP is converged with a zero command") {
  const EarthModel earth = case_study::earth();
  const StateVector s = case_study::initial_state();
  const TargetIip here{predict(s, earth).i_p_ecef};
  const GuidanceCommand cmd = guidance_step(s, here, 30.0, earth);
  CHECK(cmd.converged);
  CHECK(cmd.a_eci.norm() == 0.0);
  CHECK(cmd.a_r == 0.0);
  CHECK(cmd.a_theta == 0.0);
  CHECK(cmd.a_h == 0.0);
}

TEST_CASE("guidance step commands full thrust toward the target arc") {
  const EarthModel earth = case_study::earth();
  const StateVector s = case_study::initial_state();
  const double a_m = 35.0;
  const TargetIip target = target_from_offsets(s, 200.0, 0.0, earth);
  const GuidanceCommand cmd = guidance_step(s, target, a_m, earth);
  CHECK_FALSE(cmd.converged);
  CHECK(cmd.a_eci.norm() == Approx(a_m).epsilon(1e-12));
  CHECK(std::hypot(cmd.a_r, cmd.a_theta, cmd.a_h) == Approx(a_m).epsilon(1e-12));
  CHECK(cmd.distance_to_target == Approx(200e3).epsilon(1e-6));

  // The achieved IIP velocity points along the arc toward the target.
  const ImpactPrediction p = predict(s, earth);
  const IipRateBasis b = compute_rate_basis(s, p, earth);
  const Vec3 rate = cmd.a_r * b.ecef.d_r + cmd.a_theta * b.ecef.d_theta + cmd.a_h * b.ecef.d_h;
  const ArcDirection arc = arc_direction(p.i_p_ecef, target, 1e-12);
  CHECK(rate.normalized().dot(arc.i_u) == Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(rate.dot(arc.i_q)) / rate.norm() < 1e-9);
  CHECK(cmd.iip_speed == Approx(rate.norm()).epsilon(1e-9));
}

TEST_CASE("downrange target on a still Earth needs no out-of-plane thrust") {
  EarthModel earth = case_study::earth();
  earth.omega_e = 0.0;
  const StateVector s = case_study::initial_state();
  for (double dr : {-150.0, 120.0}) {
    const TargetIip target = target_from_offsets(s, dr, 0.0, earth);
    const GuidanceCommand cmd = guidance_step(s, target, 30.0, earth);
    CHECK(std::abs(cmd.a_h) < 1e-9 * 30.0);
  }
}

TEST_CASE("crossrange target needs out-of-plane thrust") {
  const EarthModel earth = case_study::earth();
  const StateVector s = case_study::initial_state();
  const GuidanceCommand cmd =
      guidance_step(s, target_from_offsets(s, 0.0, 150.0, earth), 30.0, earth);
  CHECK(std::abs(cmd.a_h) > 1.0);
}
