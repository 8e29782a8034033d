#pragma once

#include "iipg/geo.hpp"

namespace iipg {

/// Angle of flight and the conic-intersection coefficients that produced it.
struct FlightAngles {
  double phi = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

/// Keplerian impact point of the current state and everything derived on the way.
struct ImpactPrediction {
  Vec3 i_p = Vec3::Zero();       ///< impact direction, ECI
  double lat_p = 0.0;            ///< [rad]
  double lon_p = 0.0;            ///< ECI longitude [rad]
  double lon_p_ecef = 0.0;       ///< ECEF longitude at impact [rad]
  Vec3 i_p_ecef = Vec3::Zero();  ///< impact direction, ECEF
  double t_f = 0.0;              ///< remaining flight time [s]
  double delta_t = 0.0;          ///< t - t_ref + t_f [s]
  double gamma0 = 0.0;           ///< flight path angle [rad]
  double phi = 0.0;              ///< angle of flight [rad]
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double lambda_cap = 0.0;       ///< r v^2 / mu
};

double flight_path_angle(const StateVector& state);

/// Angle of flight to the first descending crossing of r = r_e.
///
/// The closed-form root (positive square-root branch of the quadratic in
/// sin(phi)) is tried first; asin only resolves [-pi/2, pi/2], so the
/// supplementary angle is also considered and the candidate that satisfies
/// the conic impact condition with a descending radial rate is returned.
/// Throws NoImpact when the conic never reaches the surface.
FlightAngles angle_of_flight(const StateVector& state, const EarthModel& earth);

Vec3 iip_unit_vector(const StateVector& state, double gamma0, double phi);

double time_of_flight(const StateVector& state, double gamma0, double phi,
                      const EarthModel& earth);

ImpactPrediction predict(const StateVector& state, const EarthModel& earth);

}  // namespace iipg
