#include <cmath>
#include <numbers>

#include "doctest.h"
#include "iipg/case_study.hpp"
#include "iipg/error.hpp"
#include "iipg/geo.hpp"

using namespace iipg;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

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

TEST_CASE("unit_triad on an axis-aligned circular geometry") {
  const Triad t = unit_triad(Vec3(7e6, 0, 0), Vec3(0, 7500, 0));
  CHECK((t.i_r - Vec3::UnitX()).norm() < 1e-15);
  CHECK((t.i_theta - Vec3::UnitY()).norm() < 1e-15);
  CHECK((t.i_h - Vec3::UnitZ()).norm() < 1e-15);
}

TEST_CASE("unit_triad rejects r parallel to v") {
  CHECK(kind_of([] { unit_triad(Vec3(0, 7e6, 0), Vec3(0, 10, 0)); }) ==
        ErrorKind::DegenerateAngularMomentum);
  CHECK(kind_of([] { unit_triad(Vec3(7e6, 0, 0), Vec3::Zero()); }) ==
        ErrorKind::DegenerateAngularMomentum);
}

TEST_CASE("unit_triad of the case-study state is orthonormal and right-handed") {
  const StateVector s = case_study::initial_state();
  const Triad t = unit_triad(s.r, s.v);
  CHECK(std::abs(t.i_r.dot(t.i_theta)) < 1e-14);
  CHECK(std::abs(t.i_r.dot(t.i_h)) < 1e-14);
  CHECK(std::abs(t.i_theta.dot(t.i_h)) < 1e-14);
  CHECK(t.i_r.norm() == Approx(1.0).epsilon(1e-15));
  CHECK((t.i_h.cross(t.i_r) - t.i_theta).norm() < 1e-14);
  CHECK(t.i_theta.dot(s.v) > 0.0);
}

TEST_CASE("gravity at the surface") {
  const EarthModel earth;
  const Vec3 g = gravity(Vec3(earth.r_e, 0, 0), earth);
  CHECK(g.x() == Approx(-earth.mu / (earth.r_e * earth.r_e)).epsilon(1e-15));
  CHECK(g.x() == Approx(-9.798).epsilon(1e-4));
  CHECK(g.y() == 0.0);
  CHECK(g.z() == 0.0);
}

TEST_CASE("earth model validation") {
  EarthModel e;
  CHECK_NOTHROW(e.validate());
  e.mu = 0.0;
  CHECK(kind_of([&] { e.validate(); }) == ErrorKind::InvalidArgument);
  e = EarthModel{};
  e.omega_e = -1.0;
  CHECK(kind_of([&] { e.validate(); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("eci_to_ecef_matrix") {
  const EarthModel earth;
  CHECK((eci_to_ecef_matrix(0.0, earth) - Mat3::Identity()).norm() == 0.0);

  const double quarter = (kPi / 2.0) / earth.omega_e;
  const Vec3 x = eci_to_ecef_matrix(quarter, earth) * Vec3::UnitX();
  CHECK((x - Vec3(0, -1, 0)).norm() < 1e-12);

  const Mat3 t = eci_to_ecef_matrix(1234.5, earth);
  CHECK((t * t.transpose() - Mat3::Identity()).norm() < 1e-15);
  CHECK(t.determinant() == Approx(1.0));
}

TEST_CASE("latlon_from_unit") {
  const LatLon pole = latlon_from_unit(Vec3::UnitZ());
  CHECK(pole.lat == Approx(kPi / 2));
  CHECK(pole.lon == 0.0);

  const LatLon x = latlon_from_unit(Vec3::UnitX());
  CHECK(x.lat == 0.0);
  CHECK(x.lon == 0.0);

  const LatLon y = latlon_from_unit(Vec3::UnitY());
  CHECK(y.lat == 0.0);
  CHECK(y.lon == Approx(kPi / 2));

  CHECK(kind_of([] { latlon_from_unit(Vec3(2, 0, 0)); }) == ErrorKind::NotUnit);
}

TEST_CASE("latlon round trip") {
  for (double lat = -1.5; lat <= 1.5; lat += 0.25) {
    for (double lon = -3.0; lon <= 3.0; lon += 0.5) {
      const LatLon ll = latlon_from_unit(unit_from_latlon({lat, lon}));
      CHECK(ll.lat == Approx(lat).epsilon(1e-13));
      CHECK(ll.lon == Approx(lon).epsilon(1e-13));
    }
  }
}

TEST_CASE("great_circle_distance") {
  const EarthModel earth;
  CHECK(great_circle_distance(Vec3::UnitX(), Vec3::UnitX(), earth) == 0.0);
  CHECK(great_circle_distance(Vec3::UnitX(), Vec3::UnitY(), earth) ==
        Approx(earth.r_e * kPi / 2));
  CHECK(great_circle_distance(Vec3::UnitX(), Vec3::UnitY(), earth) / 1e3 ==
        Approx(10018.75).epsilon(1e-6));
  CHECK(great_circle_distance(Vec3::UnitX(), -Vec3::UnitX(), earth) == Approx(earth.r_e * kPi));

  // Resolves metre-scale separations where acos would lose them.
  const Vec3 u = unit_from_latlon({0.0, 1.0 / earth.r_e});
  CHECK(great_circle_distance(Vec3::UnitX(), u, earth) == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("rotate_about_axis") {
  const Vec3 u = Vec3(1, 2, 3).normalized();
  CHECK((rotate_about_axis(u, Vec3::UnitZ(), 0.0) - u).norm() == 0.0);
  CHECK((rotate_about_axis(Vec3::UnitX(), Vec3::UnitZ(), kPi / 2) - Vec3::UnitY()).norm() <
        1e-15);
  const Vec3 axis = Vec3(-1, 0.5, 2).normalized();
  const Vec3 w = rotate_about_axis(u, axis, 0.7);
  CHECK(w.norm() == Approx(1.0).epsilon(1e-15));
  CHECK(w.dot(axis) == Approx(u.dot(axis)).epsilon(1e-14));
}
