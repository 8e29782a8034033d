#include "iipg/case_study.hpp"

#include <string>

#include "iipg/error.hpp"

namespace iipg::case_study {

VehicleModel vehicle() {
  VehicleModel v;
  v.dry_mass = 22.2e3;
  v.propellant_mass = 57.0e3;
  v.thrust = 279.6e3 * kStandardGravity;
  v.isp = 311.0;
  return v;
}

EarthModel earth() {
  EarthModel e;
  e.t_ref = -240.0;
  return e;
}

StateVector initial_state() {
  StateVector s;
  s.t = 0.0;
  s.r = Vec3(1164.0e3, -5507.0e3, 3258.0e3);
  s.v = Vec3(1337.0, 743.0, 1029.0);
  s.m = vehicle().initial_mass();
  return s;
}

Scenario scenario(int id, double dt) {
  if (id < 1 || id > static_cast<int>(kCases.size())) {
    throw Error(ErrorKind::InvalidArgument, "case id must be 1..5, got " + std::to_string(id));
  }
  const CaseSpec& c = kCases[static_cast<std::size_t>(id - 1)];
  Scenario sc;
  sc.earth = earth();
  sc.vehicle = vehicle();
  sc.initial = initial_state();
  sc.target = target_from_offsets(sc.initial, c.downrange_km, c.crossrange_km, sc.earth);
  sc.dt = dt;
  sc.max_time = 120.0;
  return sc;
}

}  // namespace iipg::case_study
