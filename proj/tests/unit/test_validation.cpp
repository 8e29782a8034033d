#include <cmath>
#include <random>

#include "doctest.h"
#include "iipg/case_study.hpp"
#include "iipg/error.hpp"
#include "iipg/guidance.hpp"
#include "iipg/rates.hpp"
#include "iipg/validation.hpp"

using namespace iipg;
using namespace iipg::validation;
using doctest::Approx;

TEST_CASE("free fall from the case-study state") {
  const EarthModel earth = case_study::earth();
  const StateVector s = case_study::initial_state();
  const FreeFallImpact ff = free_fall_impact(s, earth);
  const ImpactPrediction p = predict(s, earth);
  CHECK(great_circle_distance(ff.i_p, p.i_p, earth) < 1000.0);
  CHECK(std::abs(ff.t_f - p.t_f) < 0.5);
  CHECK(ff.energy_drift < 1e-12);
}

TEST_CASE("free fall starting on the surface while descending") {
  const EarthModel earth;
  StateVector s;
  s.r = Vec3(0, earth.r_e, 0);
  s.v = Vec3(1000, -300, 0);
  const FreeFallImpact ff = free_fall_impact(s, earth);
  CHECK(ff.t_f == 0.0);
  CHECK((ff.i_p - Vec3::UnitY()).norm() < 1e-15);
}

TEST_CASE("free fall from an orbit that misses the surface") {
  const EarthModel earth;
  StateVector s;
  s.r = Vec3(7e6, 0, 0);
  s.v = Vec3(0, 7546.0, 0);
  CHECK_THROWS_AS(free_fall_impact(s, earth), Error);
}

TEST_CASE("coast matches the analytic flight time") {
  const EarthModel earth = case_study::earth();
  const StateVector s = case_study::initial_state();
  const StateVector later = coast(s, 50.0, earth);
  CHECK(later.t == Approx(s.t + 50.0));
  CHECK(predict(later, earth).t_f == Approx(predict(s, earth).t_f - 50.0).epsilon(1e-9));
}

TEST_CASE("finite-difference rates match the analytic basis") {
  const EarthModel earth = case_study::earth();
  const StateVector s = case_study::initial_state();
  const ImpactPrediction p = predict(s, earth);
  const IipRateBasis b = compute_rate_basis(s, p, earth);

  const FdRate fh = fd_iip_rate(s, Axis::Normal, earth);
  CHECK((fh.eci - b.eci.d_h).norm() / b.eci.d_h.norm() < 1e-3);
  CHECK((fh.ecef - b.ecef.d_h).norm() / b.ecef.d_h.norm() < 2e-3);
  const FdRate fr = fd_iip_rate(s, Axis::Radial, earth);
  CHECK((fr.eci - b.eci.d_r).norm() / b.eci.d_r.norm() < 1e-3);
  CHECK((fr.ecef - b.ecef.d_r).norm() / b.ecef.d_r.norm() < 2e-3);
  CHECK(fr.tf == Approx(b.tof.dtf_dar).epsilon(1e-3));
  const FdRate ft = fd_iip_rate(s, Axis::Transverse, earth);
  CHECK((ft.eci - b.eci.d_theta).norm() / b.eci.d_theta.norm() < 1e-3);
  CHECK(ft.tf == Approx(b.tof.dtf_datheta).epsilon(1e-3));

  const FdRate zero = fd_iip_rate(s, Axis::Radial, earth, 1e-3, 0.0);
  CHECK(zero.eci.norm() == 0.0);
  CHECK(zero.ecef.norm() == 0.0);
  CHECK(zero.tf == 0.0);
}

TEST_CASE("sphere search") {
  SUBCASE("hand case") {
    const SphereSearch s = sphere_search_pcg(Vec3(1, 0, 0), Vec3(0, 1, 0), 1.0, 0.25);
    CHECK(central_angle(s.x.normalized(), Vec3::UnitX()) < 0.5 * 3.14159265358979 / 180.0);
    CHECK(s.objective == Approx(1.0).epsilon(1e-4));
    CHECK(s.candidates > 0);
  }
  SUBCASE("c parallel to f") {
    const SphereSearch s = sphere_search_pcg(Vec3(0, 0, 2), Vec3(0, 0, 1), 1.0, 0.5);
    CHECK(std::abs(s.objective) < 1e-12);
  }
  SUBCASE("never beats the analytic optimum") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n01;
    for (int i = 0; i < 10; ++i) {
      const Vec3 c(n01(rng), n01(rng), n01(rng));
      const Vec3 f(n01(rng), n01(rng), n01(rng));
      const double a_m = 2.0;
      const PcgSolution x = solve_pcg(c, f, a_m);
      const SphereSearch s = sphere_search_pcg(c, f, a_m, 0.5);
      CHECK(s.objective <= c.dot(x.x) + 1e-12 * c.norm() * a_m);
      CHECK(s.objective >= c.dot(x.x) - 1e-3 * c.norm() * a_m);
    }
  }
}

TEST_CASE("fibonacci sphere spacing") {
  const auto pts = fibonacci_sphere(1.0);
  CHECK(pts.size() > 40000);
  for (const Vec3& p : pts) CHECK(p.norm() == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("rocket equation cross-checks of the published cases") {
  const VehicleModel veh = case_study::vehicle();
  const double m0 = veh.initial_mass();
  const OracleReport c4 = rocket_equation_check(14.7e3, 627.0, m0, veh, 0.01);
  CHECK(c4.pass);
  CHECK(c4.error < 0.01);
  CHECK(rocket_equation_check(11.2e3, 465.0, m0, veh, 0.02).pass);
  const OracleReport zero = rocket_equation_check(0.0, 0.0, m0, veh, 1e-12);
  CHECK(zero.pass);
  CHECK(zero.oracle.at(0) == 0.0);
  CHECK_FALSE(rocket_equation_check(14.7e3, 900.0, m0, veh, 0.02).pass);
  CHECK(burn_time_check(14.7e3, 16.4, veh, 0.02).pass);
}

TEST_CASE("random states land inside the boostback envelope") {
  const EarthModel earth = case_study::earth();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const StateVector s = random_suborbital_state(rng, earth);
    const double alt = s.r.norm() - earth.r_e;
    CHECK(alt >= 50e3 - 1e-6);
    CHECK(alt <= 300e3 + 1e-6);
    CHECK(s.v.norm() >= 500.0 - 1e-9);
    CHECK(s.v.norm() <= 3000.0 + 1e-9);
    CHECK_NOTHROW(predict(s, earth));
  }
}

TEST_CASE("oracle suite is deterministic and passes") {
  const EarthModel earth = case_study::earth();
  SuiteOptions opt;
  opt.samples = 6;
  opt.seed = 123;
  const auto a = run_oracle_suite(earth, opt);
  opt.threads = 1;
  const auto b = run_oracle_suite(earth, opt);
  REQUIRE(a.size() == 6);
  REQUIRE(b.size() == 6);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].index == i);
    CHECK(a[i].pass());
    REQUIRE(a[i].reports.size() == b[i].reports.size());
    for (std::size_t k = 0; k < a[i].reports.size(); ++k) {
      CHECK(a[i].reports[k].quantity == b[i].reports[k].quantity);
      CHECK(a[i].reports[k].error == b[i].reports[k].error);
    }
  }
}
