#include "iipg/sim.hpp"

#include <algorithm>
#include <cmath>

#include "iipg/error.hpp"
#include "iipg/iip.hpp"

namespace iipg {
namespace {

// Position, velocity, mass and accumulated thrust delta-v.
struct Augmented {
  Vec3 r;
  Vec3 v;
  double m;
  double dv;
};

Augmented derivative(const Augmented& y, const Vec3& dir, bool engine_on,
                     const VehicleModel& vehicle, const EarthModel& earth) {
  const double a_mag = engine_on ? vehicle.thrust / y.m : 0.0;
  return {y.v, gravity(y.r, earth) + a_mag * dir, engine_on ? -vehicle.mass_flow() : 0.0, a_mag};
}

Augmented axpy(const Augmented& y, double h, const Augmented& k) {
  return {y.r + h * k.r, y.v + h * k.v, y.m + h * k.m, y.dv + h * k.dv};
}

Augmented rk4(const Augmented& y, double h, const Vec3& dir, bool on, const VehicleModel& veh,
              const EarthModel& earth) {
  const Augmented k1 = derivative(y, dir, on, veh, earth);
  const Augmented k2 = derivative(axpy(y, 0.5 * h, k1), dir, on, veh, earth);
  const Augmented k3 = derivative(axpy(y, 0.5 * h, k2), dir, on, veh, earth);
  const Augmented k4 = derivative(axpy(y, h, k3), dir, on, veh, earth);
  return {y.r + h / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r),
          y.v + h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v),
          y.m + h / 6.0 * (k1.m + 2.0 * k2.m + 2.0 * k3.m + k4.m),
          y.dv + h / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv)};
}

SimRecord make_record(const StateVector& s, const ImpactPrediction& pred,
                      const GuidanceCommand& cmd, const EarthModel& earth, double dist) {
  SimRecord rec;
  rec.t = s.t;
  rec.r = s.r;
  rec.v = s.v;
  rec.m = s.m;
  rec.iip_lat = pred.lat_p;
  rec.iip_lon = pred.lon_p_ecef;
  const Vec3 sub = eci_to_ecef_matrix(s.t - earth.t_ref, earth) * s.r.normalized();
  const LatLon sll = latlon_from_unit(sub.normalized());
  rec.sub_lat = sll.lat;
  rec.sub_lon = sll.lon;
  rec.a_r = cmd.a_r;
  rec.a_theta = cmd.a_theta;
  rec.a_h = cmd.a_h;
  rec.dist_to_target = dist;
  return rec;
}

}  // namespace

std::string_view to_string(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::Converged: return "Converged";
    case Outcome::PropellantExhausted: return "PropellantExhausted";
    case Outcome::TimeLimit: return "TimeLimit";
    case Outcome::GuidanceFailure: return "GuidanceFailure";
  }
  return "Unknown";
}

void VehicleModel::validate() const {
  if (!(dry_mass > 0.0) || !(propellant_mass >= 0.0) || !(thrust > 0.0) || !(isp > 0.0) ||
      !(g0 > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "vehicle parameters must be positive");
  }
}

void Scenario::validate() const {
  earth.validate();
  vehicle.validate();
  if (!(dt > 0.0) || !(max_time > 0.0) || !(convergence_radius > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "dt, max_time and convergence_radius must be positive");
  }
  if (!(initial.r.norm() > 0.0) || !(initial.m > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "initial state needs |r| > 0 and m > 0");
  }
  if (std::abs(target.u.norm() - 1.0) > 1e-12) {
    throw Error(ErrorKind::NotUnit, "target direction is not a unit vector");
  }
}

StateDerivative dynamics(const StateVector& state, const Vec3& a_eci, const VehicleModel& vehicle,
                         const EarthModel& earth) {
  const bool on = a_eci.squaredNorm() > 0.0;
  return {state.v, gravity(state.r, earth) + a_eci, on ? -vehicle.mass_flow() : 0.0};
}

StepResult step(const StateVector& state, const GuidanceCommand& command,
                const VehicleModel& vehicle, const EarthModel& earth, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");

  const double a_norm = command.a_eci.norm();
  const bool wants_thrust = !command.converged && a_norm > 0.0;
  const Vec3 dir = wants_thrust ? Vec3(command.a_eci / a_norm) : Vec3::Zero();

  const double propellant = std::max(0.0, state.m - vehicle.dry_mass);
  double burn = wants_thrust ? dt : 0.0;
  bool depleted = false;
  if (wants_thrust && vehicle.mass_flow() * dt >= propellant) {
    burn = propellant / vehicle.mass_flow();
    depleted = true;
  }

  Augmented y{state.r, state.v, state.m, 0.0};
  if (burn > 0.0) y = rk4(y, burn, dir, true, vehicle, earth);
  if (depleted) y.m = vehicle.dry_mass;
  if (dt - burn > 0.0) y = rk4(y, dt - burn, dir, false, vehicle, earth);

  StepResult out;
  out.state = {state.t + dt, y.r, y.v, y.m};
  out.delta_v = y.dv;
  out.burn_time = burn;
  out.depleted = depleted;
  return out;
}

SimResult run_closed_loop(const Scenario& sc) {
  sc.validate();
  SimResult res;
  res.initial_mass = sc.initial.m;

  const EarthModel& earth = sc.earth;
  const double radius_angle = sc.convergence_radius / earth.r_e;
  const double t0 = sc.initial.t;

  StateVector state = sc.initial;
  GuidanceCommand prev;
  bool have_prev = false;
  double delta_v = 0.0;

  auto finish = [&](Outcome o, double dist) {
    res.outcome = o;
    res.final_time = state.t - t0;
    res.propellant_used = sc.initial.m - state.m;
    res.delta_v = delta_v;
    res.miss_distance = dist;
    return res;
  };

  try {
    for (;;) {
      const ImpactPrediction pred = predict(state, earth);
      const double dist = great_circle_distance(pred.i_p_ecef, sc.target.u, earth);

      GuidanceCommand cmd;
      try {
        cmd = guidance_step(state, sc.target, sc.vehicle.thrust / state.m, earth,
                            sc.convergence_radius);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::GuidanceHold || !have_prev) throw;
        cmd = prev;
        cmd.converged = false;
        ++res.guidance_holds;
      }

      if (cmd.converged) {
        res.history.push_back(make_record(state, pred, GuidanceCommand{}, earth, dist));
        return finish(Outcome::Converged, dist);
      }
      res.history.push_back(make_record(state, pred, cmd, earth, dist));

      const double elapsed = state.t - t0;
      if (elapsed >= sc.max_time - 1e-12) return finish(Outcome::TimeLimit, dist);
      if (state.m <= sc.vehicle.dry_mass) return finish(Outcome::PropellantExhausted, dist);

      const double h = std::min(sc.dt, sc.max_time - elapsed);
      StepResult next = step(state, cmd, sc.vehicle, earth, h);
      const ImpactPrediction next_pred = predict(next.state, earth);

      if (central_angle(next_pred.i_p_ecef, sc.target.u) < radius_angle) {
        // Locate the engine cut-off inside the step: the IIP distance falls
        // through the convergence radius somewhere in (0, h].
        double lo = 0.0;
        double hi = h;
        for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
          const double mid = 0.5 * (lo + hi);
          const StepResult trial = step(state, cmd, sc.vehicle, earth, mid);
          const ImpactPrediction tp = predict(trial.state, earth);
          if (central_angle(tp.i_p_ecef, sc.target.u) < radius_angle) {
            hi = mid;
          } else {
            lo = mid;
          }
        }
        next = step(state, cmd, sc.vehicle, earth, hi);
      }

      state = next.state;
      delta_v += next.delta_v;
      prev = cmd;
      have_prev = true;

      if (next.depleted) {
        const ImpactPrediction fp = predict(state, earth);
        const double fd = great_circle_distance(fp.i_p_ecef, sc.target.u, earth);
        res.history.push_back(make_record(state, fp, GuidanceCommand{}, earth, fd));
        return finish(fd < sc.convergence_radius ? Outcome::Converged
                                                 : Outcome::PropellantExhausted,
                      fd);
      }
    }
  } catch (const Error& e) {
    res.message = e.what();
    const double dist = res.history.empty() ? 0.0 : res.history.back().dist_to_target;
    return finish(Outcome::GuidanceFailure, dist);
  }
}

Vec3 offset_impact_point(const Vec3& base, const Vec3& normal, double downrange_m,
                         double crossrange_m, const EarthModel& earth) {
  const Vec3 moved = rotate_about_axis(base, normal, downrange_m / earth.r_e);
  const Vec3 along = normal.cross(moved).normalized();
  // Rotating about the along-track tangent by a negative angle moves toward +normal.
  return rotate_about_axis(moved, along, -crossrange_m / earth.r_e).normalized();
}

Vec3 downrange_normal(const StateVector& state, const EarthModel& earth) {
  const ImpactPrediction pred = predict(state, earth);
  const Vec3 sub = eci_to_ecef_matrix(state.t - earth.t_ref, earth) * state.r.normalized();
  const Vec3 n = sub.cross(pred.i_p_ecef);
  if (n.norm() < 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "IIP coincides with the sub-vehicle point");
  }
  return n.normalized();
}

TargetIip target_from_offsets(const StateVector& state, double downrange_km,
                              double crossrange_km, const EarthModel& earth) {
  const ImpactPrediction pred = predict(state, earth);
  const Vec3 n = downrange_normal(state, earth);
  return {offset_impact_point(pred.i_p_ecef, n, downrange_km * 1e3, crossrange_km * 1e3, earth)};
}

}  // namespace iipg
