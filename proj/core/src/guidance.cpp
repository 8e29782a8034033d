#include "iipg/guidance.hpp"

#include <cmath>
#include <string>

#include "iipg/error.hpp"

namespace iipg {
namespace {

constexpr double kTiny = 1e-15;

}  // namespace

ArcDirection arc_direction(const Vec3& i_p_ecef, const TargetIip& target,
                           double converge_angle) {
  const double cos_sep = i_p_ecef.dot(target.u);
  if (cos_sep < -1.0 + 1e-9) {
    throw Error(ErrorKind::Antipodal, "target is antipodal to the current IIP");
  }
  const Vec3 q = i_p_ecef.cross(target.u - i_p_ecef);
  if (central_angle(i_p_ecef, target.u) < converge_angle || q.norm() < kTiny) {
    throw Error(ErrorKind::Converged, "IIP is at the target");
  }
  ArcDirection arc;
  arc.i_q = q.normalized();
  arc.i_u = arc.i_q.cross(i_p_ecef);
  return arc;
}

PcgSolution solve_pcg(const Vec3& c, const Vec3& f, double a_m) {
  if (!(a_m > 0.0) || !std::isfinite(a_m)) {
    throw Error(ErrorKind::InvalidArgument, "a_m must be positive");
  }
  PcgSolution sol;
  const double ff = f.squaredNorm();
  if (std::sqrt(ff) < kTiny) {
    const double cn = c.norm();
    if (cn < kTiny) throw Error(ErrorKind::DegenerateObjective, "c and f both vanish");
    sol.x = a_m / cn * c;
    sol.lambda1 = -cn / (2.0 * a_m);
    sol.unconstrained = true;
    return sol;
  }

  sol.lambda2 = -c.dot(f) / ff;
  const Vec3 g = sol.lambda2 * f + c;
  const double gn = g.norm();
  if (gn < kTiny) {
    throw Error(ErrorKind::DegenerateObjective, "c is parallel to f");
  }
  // Stationarity gives x = -(lambda2 f + c) / (2 lambda1); the sign of lambda1
  // picks the maximizer over the minimizer.
  const double lam1 = gn / (2.0 * a_m);
  sol.lambda1 = (-c.dot(g) > 0.0) ? lam1 : -lam1;
  sol.x = -g / (2.0 * sol.lambda1);
  return sol;
}

GuidanceCommand guidance_step(const StateVector& state, const TargetIip& target, double a_m,
                              const EarthModel& earth, double convergence_radius) {
  GuidanceCommand cmd;
  const ImpactPrediction pred = predict(state, earth);
  cmd.distance_to_target = great_circle_distance(pred.i_p_ecef, target.u, earth);

  ArcDirection arc;
  try {
    arc = arc_direction(pred.i_p_ecef, target, convergence_radius / earth.r_e);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Converged) throw;
    cmd.converged = true;
    return cmd;
  }

  IipRateBasis basis;
  try {
    basis = compute_rate_basis(state, pred, earth);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NearCircular || e.kind() == ErrorKind::SingularAnomaly) {
      throw Error(ErrorKind::GuidanceHold, e.what());
    }
    throw;
  }

  const RateVectors& d = basis.ecef;
  const Vec3 c(arc.i_u.dot(d.d_r), arc.i_u.dot(d.d_theta), arc.i_u.dot(d.d_h));
  const Vec3 f(arc.i_q.dot(d.d_r), arc.i_q.dot(d.d_theta), arc.i_q.dot(d.d_h));
  const PcgSolution sol = solve_pcg(c, f, a_m);

  const Triad tri = unit_triad(state.r, state.v);
  cmd.a_r = sol.x.x();
  cmd.a_theta = sol.x.y();
  cmd.a_h = sol.x.z();
  cmd.a_eci = cmd.a_r * tri.i_r + cmd.a_theta * tri.i_theta + cmd.a_h * tri.i_h;
  cmd.lambda1 = sol.lambda1;
  cmd.lambda2 = sol.lambda2;
  cmd.iip_speed = (cmd.a_r * d.d_r + cmd.a_theta * d.d_theta + cmd.a_h * d.d_h).norm();
  return cmd;
}

}  // namespace iipg
