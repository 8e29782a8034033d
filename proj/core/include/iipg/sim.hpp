#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "iipg/geo.hpp"
#include "iipg/guidance.hpp"

namespace iipg {

inline constexpr double kStandardGravity = 9.80665;

/// Constant-thrust, constant-Isp stage.
struct VehicleModel {
  double dry_mass = 0.0;         ///< [kg]
  double propellant_mass = 0.0;  ///< [kg]
  double thrust = 0.0;           ///< [N]
  double isp = 0.0;              ///< [s]
  double g0 = kStandardGravity;

  double mass_flow() const { return thrust / (isp * g0); }
  double initial_mass() const { return dry_mass + propellant_mass; }
  void validate() const;
};

struct StateDerivative {
  Vec3 r_dot = Vec3::Zero();
  Vec3 v_dot = Vec3::Zero();
  double m_dot = 0.0;
};

/// Point-mass equations of motion. A zero a_eci means the engine is off.
StateDerivative dynamics(const StateVector& state, const Vec3& a_eci, const VehicleModel& vehicle,
                         const EarthModel& earth);

struct StepResult {
  StateVector state;
  double delta_v = 0.0;    ///< integral of thrust acceleration over the step [m/s]
  double burn_time = 0.0;  ///< engine-on portion of the step [s]
  bool depleted = false;   ///< propellant ran out inside the step
};

/// Classical RK4 step with the commanded thrust direction held constant. The
/// acceleration magnitude follows thrust / m(t); if the propellant runs out
/// mid-step the burn is clipped to burnout and the remainder is coasted.
StepResult step(const StateVector& state, const GuidanceCommand& command,
                const VehicleModel& vehicle, const EarthModel& earth, double dt);

enum class Outcome { Converged, PropellantExhausted, TimeLimit, GuidanceFailure };

std::string_view to_string(Outcome outcome) noexcept;

struct Scenario {
  EarthModel earth;
  VehicleModel vehicle;
  StateVector initial;
  TargetIip target;
  double dt = 0.05;
  double max_time = 300.0;
  double convergence_radius = kDefaultConvergenceRadius;

  void validate() const;
};

struct SimRecord {
  double t = 0.0;
  Vec3 r = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  double m = 0.0;
  double iip_lat = 0.0;  ///< ECEF [rad]
  double iip_lon = 0.0;
  double sub_lat = 0.0;  ///< sub-vehicle point, ECEF [rad]
  double sub_lon = 0.0;
  double a_r = 0.0;
  double a_theta = 0.0;
  double a_h = 0.0;
  double dist_to_target = 0.0;  ///< [m]
};

struct SimResult {
  std::vector<SimRecord> history;
  double final_time = 0.0;       ///< elapsed guidance time [s]
  double propellant_used = 0.0;  ///< [kg]
  double delta_v = 0.0;          ///< [m/s]
  double miss_distance = 0.0;    ///< [m]
  double initial_mass = 0.0;
  int guidance_holds = 0;
  Outcome outcome = Outcome::GuidanceFailure;
  std::string message;
};

/// Feedback loop: guidance at every step, RK4 between updates, engine cut
/// the moment the IIP enters the convergence radius. Never throws for
/// in-flight failures; the outcome field reports them.
SimResult run_closed_loop(const Scenario& scenario);

/// Shift an ECEF impact point along the great circle whose normal is
/// `downrange_normal` and then perpendicular to it. Positive crossrange is
/// toward the normal.
Vec3 offset_impact_point(const Vec3& base, const Vec3& downrange_normal, double downrange_m,
                         double crossrange_m, const EarthModel& earth);

/// Normal of the great circle running from the sub-vehicle point to the
/// unpowered IIP (both ECEF). Downrange is the direction of travel along it.
Vec3 downrange_normal(const StateVector& state, const EarthModel& earth);

TargetIip target_from_offsets(const StateVector& state, double downrange_km,
                              double crossrange_km, const EarthModel& earth);

}  // namespace iipg
