#pragma once

#include "iipg/geo.hpp"
#include "iipg/iip.hpp"
#include "iipg/rates.hpp"

namespace iipg {

/// Desired impact direction in ECEF.
struct TargetIip {
  Vec3 u = Vec3::UnitX();
};

/// Local frame of the great-circle arc from the current IIP to the target.
struct ArcDirection {
  Vec3 i_q;  ///< normal of the arc plane
  Vec3 i_u;  ///< tangent of the arc at the current IIP, pointing at the target
};

/// Solution of: maximize c.x subject to |x| = a_m and f.x = 0.
struct PcgSolution {
  Vec3 x = Vec3::Zero();
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  /// Set when f vanished and the constraint was dropped.
  bool unconstrained = false;
};

struct GuidanceCommand {
  double a_r = 0.0;
  double a_theta = 0.0;
  double a_h = 0.0;
  Vec3 a_eci = Vec3::Zero();
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double iip_speed = 0.0;       ///< |d i_p^E / dt| achieved by the command [rad/s]
  double distance_to_target = 0.0;  ///< great-circle distance before the command [m]
  bool converged = false;
};

inline constexpr double kDefaultConvergenceRadius = 500.0;

/// Throws Converged when the central angle to the target is below
/// converge_angle and Antipodal when the arc is undefined.
ArcDirection arc_direction(const Vec3& i_p_ecef, const TargetIip& target,
                           double converge_angle);

/// Closed-form Lagrange-multiplier solution. Throws DegenerateObjective when c
/// is parallel to f; falls back to x = a_m c/|c| if |f| vanishes.
PcgSolution solve_pcg(const Vec3& c, const Vec3& f, double a_m);

/// One pass of the feedback law: impact prediction, ECEF rate basis, arc
/// frame, and the acceleration command of magnitude a_m. Recoverable
/// singularities (NearCircular, SingularAnomaly) surface as GuidanceHold.
GuidanceCommand guidance_step(const StateVector& state, const TargetIip& target, double a_m,
                              const EarthModel& earth,
                              double convergence_radius = kDefaultConvergenceRadius);

}  // namespace iipg
