#include "iipg/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "iipg/error.hpp"

namespace iipg {
namespace {

constexpr double kMinDenominator = 1e-12;
constexpr double kMinSinAnomaly = 1e-9;

double checked_acos(double x, const char* what) {
  if (std::abs(x) > 1.0 + 1e-9) {
    throw Error(ErrorKind::AnomalyDomain, std::string(what) + " cosine = " + std::to_string(x));
  }
  return std::acos(std::clamp(x, -1.0, 1.0));
}

}  // namespace

PhiSensitivities phi_sensitivities(const StateVector& state, const ImpactPrediction& pred,
                                   const EarthModel& earth) {
  const double r0 = state.r.norm();
  const double h = state.r.cross(state.v).norm();
  const double rv = state.r.dot(state.v);
  const double sp = std::sin(pred.phi);
  const double cp = std::cos(pred.phi);

  const double slope = -pred.c2 * sp + pred.c1 * cp;
  if (std::abs(slope) < kMinDenominator) {
    throw Error(ErrorKind::SingularDenominator, "grazing impact geometry");
  }
  const double den = earth.mu * slope;
  return {h * sp / den, (2.0 * h * (r0 / earth.r_e - cp) + rv * sp) / den};
}

RateVectors rate_basis_eci(const StateVector& state, const ImpactPrediction& pred,
                           const EarthModel& earth) {
  const PhiSensitivities s = phi_sensitivities(state, pred, earth);
  const Triad tri = unit_triad(state.r, state.v);

  const double r0 = state.r.norm();
  const double v0 = state.v.norm();
  const double h = state.r.cross(state.v).norm();
  const double rv = state.r.dot(state.v);
  const double sp = std::sin(pred.phi);
  const double cp = std::cos(pred.phi);

  // h * d(i_p)/d(phi) with the position and plane held fixed.
  const Vec3 in_plane =
      -(h * sp + rv * cp) * tri.i_r + (r0 * v0 * cp) * state.v.normalized();

  RateVectors d;
  d.d_r = s.dphi_dar / h * in_plane;
  d.d_theta = s.dphi_datheta / h * in_plane;
  d.d_h = (r0 * sp / h) * tri.i_h;
  return d;
}

OrbitElements orbit_elements(const StateVector& state, const ImpactPrediction& pred,
                             const EarthModel& earth) {
  const double r0 = state.r.norm();
  const double v2 = state.v.squaredNorm();
  const double h = state.r.cross(state.v).norm();

  const double inv_a = 2.0 / r0 - v2 / earth.mu;
  if (!(inv_a > 0.0)) {
    throw Error(ErrorKind::NonElliptic, "specific energy is non-negative");
  }
  OrbitElements el;
  el.a = 1.0 / inv_a;
  el.p = h * h / earth.mu;
  el.n = std::sqrt(earth.mu / (el.a * el.a * el.a));
  el.e = std::sqrt(std::max(0.0, 1.0 - el.p / el.a));
  if (el.e < kMinEccentricity) {
    throw Error(ErrorKind::NearCircular, "e = " + std::to_string(el.e));
  }

  const double ae = el.a * el.e;
  const double e0 = checked_acos((el.a - r0) / ae, "E0");
  const double ep = checked_acos((el.a - earth.r_e) / ae, "Ep");
  // Impact lies past apoapsis on the forward arc; the current point is on the
  // ascending half exactly when r.v > 0.
  el.E0 = pred.gamma0 >= 0.0 ? e0 : -e0;
  el.Ep = 2.0 * std::numbers::pi - ep;
  return el;
}

TofSensitivities tof_sensitivities(const StateVector& state, const ImpactPrediction& pred,
                                   const OrbitElements& el, const EarthModel& earth) {
  const double sin_e0 = std::sin(el.E0);
  const double sin_ep = std::sin(el.Ep);
  if (std::abs(sin_e0) < kMinSinAnomaly || std::abs(sin_ep) < kMinSinAnomaly) {
    throw Error(ErrorKind::SingularAnomaly, "state or impact point at an apsis");
  }
  const double cos_e0 = std::cos(el.E0);
  const double cos_ep = std::cos(el.Ep);
  const double r0 = state.r.norm();
  const double v0 = state.v.norm();
  const double mu = earth.mu;
  const double a = el.a, e = el.e, p = el.p, n = el.n;

  const double k0 = 1.0 - e * cos_e0;
  const double kp = 1.0 - e * cos_ep;

  const double dtf_da = 1.5 * pred.t_f / a -
                        (earth.r_e * kp / sin_ep - r0 * k0 / sin_e0) / (a * a * e * n);
  const double dtf_de =
      ((cos_ep * kp / (e * sin_ep) - cos_e0 * k0 / (e * sin_e0)) - (sin_ep - sin_e0)) / n;

  const double sg = std::sin(pred.gamma0);
  const double cg = std::cos(pred.gamma0);
  const double da_dar = 2.0 * a * a * v0 * sg / mu;
  const double de_dar = p * v0 * sg / (mu * e);
  const double da_dat = 2.0 * a * a * v0 * cg / mu;
  const double de_dat = (p * a - r0 * r0) * v0 * cg / (mu * a * e);

  return {dtf_da * da_dar + dtf_de * de_dar, dtf_da * da_dat + dtf_de * de_dat};
}

RateVectors rate_basis_ecef(const ImpactPrediction& pred, const RateVectors& eci,
                            const TofSensitivities& tof, const EarthModel& earth) {
  const Mat3 t = eci_to_ecef_matrix(pred.delta_t, earth);
  const Vec3& ip = pred.i_p_ecef;
  // -Omega_e x i_p^E per unit omega_e.
  const Vec3 spin(ip.y(), -ip.x(), 0.0);

  RateVectors d;
  d.d_r = earth.omega_e * tof.dtf_dar * spin + t * eci.d_r;
  d.d_theta = earth.omega_e * tof.dtf_datheta * spin + t * eci.d_theta;
  d.d_h = t * eci.d_h;
  return d;
}

IipRateBasis compute_rate_basis(const StateVector& state, const ImpactPrediction& pred,
                                const EarthModel& earth) {
  IipRateBasis b;
  b.phi = phi_sensitivities(state, pred, earth);
  b.eci = rate_basis_eci(state, pred, earth);
  b.elements = orbit_elements(state, pred, earth);
  b.tof = tof_sensitivities(state, pred, b.elements, earth);
  b.ecef = rate_basis_ecef(pred, b.eci, b.tof, earth);
  return b;
}

}  // namespace iipg
