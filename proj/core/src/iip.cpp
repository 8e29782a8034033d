#include "iipg/iip.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "iipg/error.hpp"

namespace iipg {
namespace {

constexpr double kPi = std::numbers::pi;

// Tolerances on the dimensionless conic coefficients.
constexpr double kNoImpactDiscriminant = -1e-12;
constexpr double kImpactResidual = 1e-8;
constexpr double kCircular = 1e-12;

double wrap_pi(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? a + 2.0 * kPi : a;
}

}  // namespace

double flight_path_angle(const StateVector& state) {
  const double rn = state.r.norm();
  const double vn = state.v.norm();
  if (!(rn > 0.0) || !(vn > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "flight path angle needs nonzero r and v");
  }
  return std::asin(std::clamp(state.r.dot(state.v) / (rn * vn), -1.0, 1.0));
}

FlightAngles angle_of_flight(const StateVector& state, const EarthModel& earth) {
  const double r0 = state.r.norm();
  const double h = state.r.cross(state.v).norm();
  if (h < kMinAngularMomentum) {
    throw Error(ErrorKind::DegenerateAngularMomentum, "|r x v| = " + std::to_string(h));
  }
  const double rv = state.r.dot(state.v);

  FlightAngles out;
  out.c1 = -h / (earth.mu * r0) * rv;
  out.c2 = h * h / (earth.mu * r0) - 1.0;
  out.c3 = h * h / (earth.mu * earth.r_e) - 1.0;
  const double c1 = out.c1, c2 = out.c2, c3 = out.c3;

  // The impact condition is c2 cos(phi) + c1 sin(phi) = c3, so c1^2 + c2^2 is e^2.
  const double e2 = c1 * c1 + c2 * c2;
  if (e2 < kCircular * kCircular) {
    if (std::abs(c3) < kImpactResidual) {
      out.phi = 0.0;
      return out;
    }
    throw Error(ErrorKind::NoImpact, "circular orbit does not intersect the surface");
  }

  const double disc = c1 * c1 * c3 * c3 - e2 * (c3 * c3 - c2 * c2);
  if (disc < kNoImpactDiscriminant) {
    throw Error(ErrorKind::NoImpact,
                "trajectory never reaches r_e (discriminant " + std::to_string(disc) + ")");
  }
  const double root = std::sqrt(std::max(disc, 0.0));

  auto residual = [&](double phi) { return c2 * std::cos(phi) + c1 * std::sin(phi) - c3; };
  // Proportional to -dr/dnu at the crossing; non-negative on the descending leg.
  auto descent = [&](double phi) { return -c2 * std::sin(phi) + c1 * std::cos(phi); };

  const std::array<double, 2> sines = {(c1 * c3 + root) / e2, (c1 * c3 - root) / e2};
  for (double s : sines) {
    const double base = std::asin(std::clamp(s, -1.0, 1.0));
    for (double phi : {base, kPi - base}) {
      if (phi < 0.0) phi += 2.0 * kPi;
      if (std::abs(residual(phi)) < kImpactResidual && descent(phi) >= -kImpactResidual) {
        out.phi = phi;
        return out;
      }
    }
  }
  throw Error(ErrorKind::NoImpact, "no descending surface crossing found");
}

Vec3 iip_unit_vector(const StateVector& state, double gamma0, double phi) {
  const double cg = std::cos(gamma0);
  if (std::abs(cg) < 1e-9) {
    throw Error(ErrorKind::VerticalFlight, "cos(gamma0) = " + std::to_string(cg));
  }
  const Vec3 i_r0 = state.r.normalized();
  const Vec3 i_v0 = state.v.normalized();
  return std::cos(gamma0 + phi) / cg * i_r0 + std::sin(phi) / cg * i_v0;
}

double time_of_flight(const StateVector& state, double gamma0, double phi,
                      const EarthModel& earth) {
  const double r0 = state.r.norm();
  const double v0 = state.v.norm();
  const double lambda = r0 * v0 * v0 / earth.mu;
  if (lambda >= 2.0) {
    throw Error(ErrorKind::HyperbolicState, "r v^2 / mu = " + std::to_string(lambda));
  }
  if (!(phi > 0.0)) throw Error(ErrorKind::PhiZero, "angle of flight is not positive");

  const double cg = std::cos(gamma0);
  const double sg = std::sin(gamma0);
  const double k = 2.0 / lambda - 1.0;

  const double conic =
      (std::tan(gamma0) * (1.0 - std::cos(phi)) + (1.0 - lambda) * std::sin(phi)) /
      ((2.0 - lambda) *
       ((1.0 - std::cos(phi)) / (lambda * cg * cg) + std::cos(gamma0 + phi) / cg));

  // atan(sqrt(k) / (cos(g) cot(phi/2) - sin(g))) with the quadrant carried by the
  // sign of the denominator; scaling through by sin(phi/2) > 0 keeps phi -> 0 finite.
  const double half = 0.5 * phi;
  const double sweep = std::atan2(std::sqrt(k) * std::sin(half), cg * std::cos(half) - sg * std::sin(half));

  return r0 / (v0 * cg) * (conic + 2.0 * cg / (lambda * std::pow(k, 1.5)) * sweep);
}

ImpactPrediction predict(const StateVector& state, const EarthModel& earth) {
  ImpactPrediction p;
  p.gamma0 = flight_path_angle(state);
  const FlightAngles fa = angle_of_flight(state, earth);
  p.phi = fa.phi;
  p.c1 = fa.c1;
  p.c2 = fa.c2;
  p.c3 = fa.c3;
  p.lambda_cap = state.r.norm() * state.v.squaredNorm() / earth.mu;

  p.i_p = iip_unit_vector(state, p.gamma0, p.phi);
  p.t_f = time_of_flight(state, p.gamma0, p.phi, earth);

  const LatLon ll = latlon_from_unit(p.i_p.normalized());
  p.lat_p = ll.lat;
  p.lon_p = ll.lon;
  p.delta_t = state.t - earth.t_ref + p.t_f;
  p.lon_p_ecef = wrap_pi(p.lon_p - earth.omega_e * p.delta_t);
  p.i_p_ecef = unit_from_latlon({p.lat_p, p.lon_p_ecef});
  return p;
}

}  // namespace iipg
