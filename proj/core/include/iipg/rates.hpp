#pragma once

#include "iipg/geo.hpp"
#include "iipg/iip.hpp"

namespace iipg {

/// Sensitivity of the angle-of-flight rate to the in-plane acceleration components.
struct PhiSensitivities {
  double dphi_dar = 0.0;
  double dphi_datheta = 0.0;
};

/// IIP rate per unit acceleration along i_r, i_theta and i_h.
struct RateVectors {
  Vec3 d_r = Vec3::Zero();
  Vec3 d_theta = Vec3::Zero();
  Vec3 d_h = Vec3::Zero();
};

struct OrbitElements {
  double a = 0.0;   ///< semimajor axis [m]
  double e = 0.0;
  double p = 0.0;   ///< semiparameter [m]
  double n = 0.0;   ///< mean motion [rad/s]
  double E0 = 0.0;  ///< eccentric anomaly now [rad], in (-pi, pi)
  double Ep = 0.0;  ///< eccentric anomaly at impact [rad], in (pi, 2 pi)
};

/// d(t_F)/dt = -1 + dtf_dar * a_r + dtf_datheta * a_theta.
struct TofSensitivities {
  double dtf_dar = 0.0;
  double dtf_datheta = 0.0;

  double tf_rate(double a_r, double a_theta) const {
    return -1.0 + dtf_dar * a_r + dtf_datheta * a_theta;
  }
};

/// Everything the guidance law needs from one state: ECI and ECEF rate
/// vectors plus the flight-time sensitivities that couple them.
struct IipRateBasis {
  RateVectors eci;
  RateVectors ecef;
  PhiSensitivities phi;
  TofSensitivities tof;
  OrbitElements elements;
};

inline constexpr double kMinEccentricity = 1e-6;

PhiSensitivities phi_sensitivities(const StateVector& state, const ImpactPrediction& pred,
                                   const EarthModel& earth);

RateVectors rate_basis_eci(const StateVector& state, const ImpactPrediction& pred,
                           const EarthModel& earth);

/// Elliptic elements of the current coast arc. E0 carries the sign of r.v
/// and Ep sits on the descending half of the ellipse. Throws NonElliptic,
/// NearCircular or AnomalyDomain.
OrbitElements orbit_elements(const StateVector& state, const ImpactPrediction& pred,
                             const EarthModel& earth);

TofSensitivities tof_sensitivities(const StateVector& state, const ImpactPrediction& pred,
                                   const OrbitElements& elems, const EarthModel& earth);

RateVectors rate_basis_ecef(const ImpactPrediction& pred, const RateVectors& eci,
                            const TofSensitivities& tof, const EarthModel& earth);

IipRateBasis compute_rate_basis(const StateVector& state, const ImpactPrediction& pred,
                                const EarthModel& earth);

}  // namespace iipg
