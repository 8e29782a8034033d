#pragma once

#include <Eigen/Dense>

namespace iipg {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Spherical, uniformly rotating Earth. The impact radius equals r_e.
struct EarthModel {
  double mu = 3.986004418e14;   ///< gravitational parameter [m^3/s^2]
  double r_e = 6378137.0;       ///< spherical radius [m]
  double omega_e = 7.2921159e-5;  ///< rotation rate [rad/s]
  double t_ref = 0.0;           ///< epoch at which ECI and ECEF coincide [s]

  /// Throws Error(InvalidArgument) unless mu > 0, r_e > 0, omega_e >= 0.
  void validate() const;
};

/// Inertial state of the vehicle. SI units throughout.
struct StateVector {
  double t = 0.0;
  Vec3 r = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  double m = 0.0;
};

/// Radial / transverse / angular-momentum unit vectors.
struct Triad {
  Vec3 i_r;
  Vec3 i_theta;
  Vec3 i_h;
};

struct LatLon {
  double lat = 0.0;
  double lon = 0.0;
};

/// Below this |r x v| [m^2/s] the orbital plane is considered undefined.
inline constexpr double kMinAngularMomentum = 1.0;

Triad unit_triad(const Vec3& r, const Vec3& v);

Vec3 gravity(const Vec3& r, const EarthModel& earth);

/// Rotation taking ECI components to ECEF components after the Earth has
/// turned through omega_e * delta_t.
Mat3 eci_to_ecef_matrix(double delta_t, const EarthModel& earth);

/// Throws Error(NotUnit) if |u| deviates from 1 by more than 1e-9.
LatLon latlon_from_unit(const Vec3& u);
Vec3 unit_from_latlon(const LatLon& ll);

/// Central angle between two unit vectors, robust for tiny and near-pi angles.
double central_angle(const Vec3& u1, const Vec3& u2);
double great_circle_distance(const Vec3& u1, const Vec3& u2, const EarthModel& earth);

/// Rodrigues rotation of u about the unit axis by angle (right-hand rule).
Vec3 rotate_about_axis(const Vec3& u, const Vec3& axis, double angle);

}  // namespace iipg
