#include "iipg/geo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "iipg/error.hpp"

namespace iipg {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::DegenerateAngularMomentum: return "DegenerateAngularMomentum";
    case ErrorKind::NoImpact: return "NoImpact";
    case ErrorKind::VerticalFlight: return "VerticalFlight";
    case ErrorKind::HyperbolicState: return "HyperbolicState";
    case ErrorKind::PhiZero: return "PhiZero";
    case ErrorKind::SingularDenominator: return "SingularDenominator";
    case ErrorKind::NonElliptic: return "NonElliptic";
    case ErrorKind::NearCircular: return "NearCircular";
    case ErrorKind::AnomalyDomain: return "AnomalyDomain";
    case ErrorKind::SingularAnomaly: return "SingularAnomaly";
    case ErrorKind::Converged: return "Converged";
    case ErrorKind::Antipodal: return "Antipodal";
    case ErrorKind::DegenerateObjective: return "DegenerateObjective";
    case ErrorKind::GuidanceHold: return "GuidanceHold";
  }
  return "Unknown";
}

void EarthModel::validate() const {
  if (!(mu > 0.0) || !(r_e > 0.0) || !(omega_e >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "earth model requires mu > 0, r_e > 0, omega_e >= 0");
  }
}

Triad unit_triad(const Vec3& r, const Vec3& v) {
  const double rn = r.norm();
  if (!(rn > 0.0)) throw Error(ErrorKind::InvalidArgument, "zero position vector");
  const Vec3 h = r.cross(v);
  const double hn = h.norm();
  if (hn < kMinAngularMomentum) {
    throw Error(ErrorKind::DegenerateAngularMomentum,
                "|r x v| = " + std::to_string(hn) + " m^2/s, orbital plane undefined");
  }
  Triad t;
  t.i_r = r / rn;
  t.i_h = h / hn;
  t.i_theta = t.i_h.cross(t.i_r);
  return t;
}

Vec3 gravity(const Vec3& r, const EarthModel& earth) {
  const double rn = r.norm();
  if (!(rn > 0.0)) throw Error(ErrorKind::InvalidArgument, "gravity at the origin");
  return -earth.mu / (rn * rn * rn) * r;
}

Mat3 eci_to_ecef_matrix(double delta_t, const EarthModel& earth) {
  const double ang = earth.omega_e * delta_t;
  const double c = std::cos(ang);
  const double s = std::sin(ang);
  Mat3 m;
  // clang-format off
  m <<  c,   s,   0.0,
       -s,   c,   0.0,
        0.0, 0.0, 1.0;
  // clang-format on
  return m;
}

LatLon latlon_from_unit(const Vec3& u) {
  const double n = u.norm();
  if (std::abs(n - 1.0) > 1e-9) {
    throw Error(ErrorKind::NotUnit, "|u| = " + std::to_string(n));
  }
  // Clamp guards asin against |u_z| exceeding 1 by rounding.
  const double z = std::clamp(u.z(), -1.0, 1.0);
  return {std::asin(z), std::atan2(u.y(), u.x())};
}

Vec3 unit_from_latlon(const LatLon& ll) {
  const double cl = std::cos(ll.lat);
  return {cl * std::cos(ll.lon), cl * std::sin(ll.lon), std::sin(ll.lat)};
}

double central_angle(const Vec3& u1, const Vec3& u2) {
  return std::atan2(u1.cross(u2).norm(), u1.dot(u2));
}

double great_circle_distance(const Vec3& u1, const Vec3& u2, const EarthModel& earth) {
  return earth.r_e * central_angle(u1, u2);
}

Vec3 rotate_about_axis(const Vec3& u, const Vec3& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return u * c + axis.cross(u) * s + axis * (axis.dot(u) * (1.0 - c));
}

}  // namespace iipg
