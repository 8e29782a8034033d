#include "iipg/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <thread>

#include "iipg/error.hpp"
#include "iipg/iip.hpp"
#include "iipg/rates.hpp"

namespace iipg::validation {
namespace {

using LVec = Eigen::Matrix<long double, 3, 1>;

struct LState {
  LVec r;
  LVec v;
};

LState rk4_coast(const LState& y, long double h, long double mu) {
  auto acc = [mu](const LVec& r) -> LVec {
    const long double rn = r.norm();
    return -mu / (rn * rn * rn) * r;
  };
  const LVec k1r = y.v;
  const LVec k1v = acc(y.r);
  const LVec k2r = y.v + 0.5L * h * k1v;
  const LVec k2v = acc(y.r + 0.5L * h * k1r);
  const LVec k3r = y.v + 0.5L * h * k2v;
  const LVec k3v = acc(y.r + 0.5L * h * k2r);
  const LVec k4r = y.v + h * k3v;
  const LVec k4v = acc(y.r + h * k3r);
  return {y.r + h / 6.0L * (k1r + 2.0L * k2r + 2.0L * k3r + k4r),
          y.v + h / 6.0L * (k1v + 2.0L * k2v + 2.0L * k3v + k4v)};
}

long double specific_energy(const LState& y, long double mu) {
  return 0.5L * y.v.squaredNorm() - mu / y.r.norm();
}

LState to_long(const StateVector& s) { return {s.r.cast<long double>(), s.v.cast<long double>()}; }

Vec3 unit_axis(const Triad& tri, Axis axis) {
  switch (axis) {
    case Axis::Radial: return tri.i_r;
    case Axis::Transverse: return tri.i_theta;
    case Axis::Normal: return tri.i_h;
  }
  return tri.i_r;
}

std::vector<double> as_vector(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

FdRate fd_against_base(const StateVector& state, const FreeFallImpact& base, Axis axis,
                       const EarthModel& earth, double delta_t, double accel,
                       const FreeFallOptions& opt) {
  const Triad tri = unit_triad(state.r, state.v);
  StateVector kicked = state;
  kicked.v += accel * delta_t * unit_axis(tri, axis);
  const FreeFallImpact pert = free_fall_impact(kicked, earth, opt);

  const double epoch = state.t - earth.t_ref;
  const Vec3 base_e = eci_to_ecef_matrix(epoch + base.t_f, earth) * base.i_p;
  const Vec3 pert_e = eci_to_ecef_matrix(epoch + pert.t_f, earth) * pert.i_p;

  FdRate out;
  out.eci = (pert.i_p - base.i_p) / delta_t;
  out.ecef = (pert_e - base_e) / delta_t;
  out.tf = (pert.t_f - base.t_f) / delta_t;
  return out;
}

double tangency(const Vec3& d, const Vec3& ip) {
  const double n = d.norm();
  return n > 0.0 ? std::abs(d.dot(ip)) / n : 0.0;
}

double parallelism(const Vec3& a, const Vec3& b) {
  const double n = a.norm() * b.norm();
  return n > 0.0 ? a.cross(b).norm() / n : 0.0;
}

SampleResult evaluate_sample(std::size_t index, const StateVector& s, const EarthModel& earth,
                             const FreeFallOptions& ff) {
  SampleResult out;
  out.index = index;
  out.state = s;
  auto& reps = out.reports;
  try {
    const ImpactPrediction pred = predict(s, earth);
    const IipRateBasis basis = compute_rate_basis(s, pred, earth);
    const FreeFallImpact base = free_fall_impact(s, earth, ff);

    const double miss = great_circle_distance(pred.i_p, base.i_p, earth);
    reps.push_back(make_absolute_report("iip_position", "great_circle_m", 0.0, 0.0, miss,
                                        Tolerances::kIipDistance));
    reps.push_back(make_absolute_report("time_of_flight", "abs_s", pred.t_f, base.t_f,
                                        std::abs(pred.t_f - base.t_f), Tolerances::kTimeOfFlight));

    struct AxisCase {
      Axis axis;
      const Vec3* eci;
      const Vec3* ecef;
      const double* tf;
    };
    const AxisCase cases[] = {
        {Axis::Radial, &basis.eci.d_r, &basis.ecef.d_r, &basis.tof.dtf_dar},
        {Axis::Transverse, &basis.eci.d_theta, &basis.ecef.d_theta, &basis.tof.dtf_datheta},
        {Axis::Normal, &basis.eci.d_h, &basis.ecef.d_h, nullptr},
    };
    for (const AxisCase& c : cases) {
      const std::string name(to_string(c.axis));
      const FdRate fd = fd_against_base(s, base, c.axis, earth, 1e-3, 1.0, ff);
      reps.push_back(make_relative_report("d_" + name + "_eci", as_vector(*c.eci),
                                          as_vector(fd.eci), Tolerances::kRate));
      reps.push_back(make_relative_report("d_" + name + "_ecef", as_vector(*c.ecef),
                                          as_vector(fd.ecef), Tolerances::kRate));
      if (c.tf != nullptr) {
        reps.push_back(make_relative_report("dtf_d" + name, {*c.tf}, {fd.tf}, Tolerances::kRate));
      }
      reps.push_back(make_absolute_report("tangency_" + name + "_eci", "relative_dot", 0.0, 0.0,
                                          tangency(*c.eci, pred.i_p), Tolerances::kStructural));
      reps.push_back(make_absolute_report("tangency_" + name + "_ecef", "relative_dot", 0.0, 0.0,
                                          tangency(*c.ecef, pred.i_p_ecef),
                                          Tolerances::kStructural));
    }
    reps.push_back(make_absolute_report("parallel_r_theta", "relative_cross", 0.0, 0.0,
                                        parallelism(basis.eci.d_r, basis.eci.d_theta),
                                        Tolerances::kStructural));

    // Zero acceleration: the flight time only drains at -1 s/s.
    const double rate0 = basis.tof.tf_rate(0.0, 0.0);
    reps.push_back(make_absolute_report("tf_rate_zero_accel", "abs", rate0, -1.0,
                                        std::abs(rate0 + 1.0), 0.0));
    constexpr double kCoast = 1.0;
    const StateVector later = coast(s, kCoast, earth, ff);
    const ImpactPrediction pl = predict(later, earth);
    reps.push_back(make_relative_report("tf_gravity_drain", {(pl.t_f - pred.t_f) / kCoast},
                                        {-1.0}, Tolerances::kGravityTerm));
    reps.push_back(make_absolute_report("coast_iip_invariance", "great_circle_m", 0.0, 0.0,
                                        great_circle_distance(pl.i_p, pred.i_p, earth), 1.0));
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::string_view to_string(Axis axis) noexcept {
  switch (axis) {
    case Axis::Radial: return "r";
    case Axis::Transverse: return "theta";
    case Axis::Normal: return "h";
  }
  return "?";
}

double relative_error(const std::vector<double>& analytic, const std::vector<double>& oracle) {
  double diff = 0.0;
  double ref = 0.0;
  const std::size_t n = std::min(analytic.size(), oracle.size());
  for (std::size_t i = 0; i < n; ++i) {
    diff += (analytic[i] - oracle[i]) * (analytic[i] - oracle[i]);
    ref += oracle[i] * oracle[i];
  }
  return std::sqrt(diff) / std::max(std::sqrt(ref), 1e-12);
}

OracleReport make_relative_report(std::string quantity, std::vector<double> analytic,
                                  std::vector<double> oracle, double tolerance) {
  OracleReport r;
  r.quantity = std::move(quantity);
  r.error = relative_error(analytic, oracle);
  r.analytic = std::move(analytic);
  r.oracle = std::move(oracle);
  r.tolerance = tolerance;
  r.pass = r.error < tolerance;
  return r;
}

OracleReport make_absolute_report(std::string quantity, std::string metric, double analytic,
                                  double oracle, double error, double tolerance) {
  OracleReport r;
  r.quantity = std::move(quantity);
  r.metric = std::move(metric);
  r.analytic = {analytic};
  r.oracle = {oracle};
  r.error = error;
  r.tolerance = tolerance;
  r.pass = tolerance > 0.0 ? error < tolerance : error == 0.0;
  return r;
}

FreeFallImpact free_fall_impact(const StateVector& state, const EarthModel& earth,
                                const FreeFallOptions& opt) {
  const long double mu = earth.mu;
  const long double re = earth.r_e;
  LState y = to_long(state);
  const long double e_start = specific_energy(y, mu);

  if (y.r.norm() <= re && y.r.dot(y.v) <= 0.0L) {
    return {state.r.normalized(), 0.0, 0.0};
  }

  // Lowest point of the conic must lie below the surface.
  const LVec hvec = y.r.cross(y.v);
  const long double p = hvec.squaredNorm() / mu;
  const long double ecc = std::sqrt(std::max(0.0L, 1.0L + 2.0L * e_start * p / mu));
  if (p / (1.0L + ecc) > re) {
    throw Error(ErrorKind::NoImpact, "periapsis above the surface");
  }

  const long double h = opt.dt;
  long double t = 0.0L;
  while (t < opt.max_time) {
    const LState next = rk4_coast(y, h, mu);
    if (next.r.norm() <= re && y.r.norm() > re) {
      long double lo = 0.0L;
      long double hi = h;
      for (int it = 0; it < 200 && hi - lo > 0.0L; ++it) {
        const long double mid = 0.5L * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (rk4_coast(y, mid, mu).r.norm() > re) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const LState hit = rk4_coast(y, hi, mu);
      FreeFallImpact out;
      out.i_p = hit.r.normalized().cast<double>();
      out.t_f = static_cast<double>(t + hi);
      out.energy_drift =
          static_cast<double>(std::abs((specific_energy(hit, mu) - e_start) / e_start));
      return out;
    }
    y = next;
    t += h;
  }
  throw Error(ErrorKind::NoImpact, "no surface crossing within the propagation limit");
}

StateVector coast(const StateVector& state, double duration, const EarthModel& earth,
                  const FreeFallOptions& opt) {
  LState y = to_long(state);
  const long double mu = earth.mu;
  const auto steps = static_cast<long>(std::ceil(duration / opt.dt));
  const long double h = static_cast<long double>(duration) / static_cast<long double>(steps);
  for (long i = 0; i < steps; ++i) y = rk4_coast(y, h, mu);
  StateVector out = state;
  out.t = state.t + duration;
  out.r = y.r.cast<double>();
  out.v = y.v.cast<double>();
  return out;
}

FdRate fd_iip_rate(const StateVector& state, Axis axis, const EarthModel& earth, double delta_t,
                   double accel, const FreeFallOptions& opt) {
  return fd_against_base(state, free_fall_impact(state, earth, opt), axis, earth, delta_t, accel,
                         opt);
}

std::vector<Vec3> fibonacci_sphere(double resolution_deg) {
  const double res = resolution_deg * std::numbers::pi / 180.0;
  const auto n = static_cast<std::size_t>(std::ceil(4.0 * std::numbers::pi / (res * res)));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Vec3> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double lon = golden * static_cast<double>(i);
    pts.emplace_back(rho * std::cos(lon), rho * std::sin(lon), z);
  }
  return pts;
}

SphereSearch sphere_search_pcg(const Vec3& c, const Vec3& f, double a_m, double resolution_deg) {
  static std::mutex mu;
  static std::map<double, std::shared_ptr<const std::vector<Vec3>>> cache;
  std::shared_ptr<const std::vector<Vec3>> pts;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[resolution_deg];
    if (!slot) slot = std::make_shared<const std::vector<Vec3>>(fibonacci_sphere(resolution_deg));
    pts = slot;
  }

  const double fn = f.norm();
  const bool constrained = fn > 0.0;
  const Vec3 fhat = constrained ? Vec3(f / fn) : Vec3::Zero();
  const double band = std::sin(resolution_deg * std::numbers::pi / 180.0);

  SphereSearch best;
  best.objective = -std::numeric_limits<double>::infinity();
  for (const Vec3& u : *pts) {
    Vec3 y = u;
    if (constrained) {
      const double off = fhat.dot(u);
      if (std::abs(off) >= band) continue;
      y = (u - off * fhat).normalized();
    }
    ++best.candidates;
    const double obj = a_m * c.dot(y);
    if (obj > best.objective) {
      best.objective = obj;
      best.x = a_m * y;
    }
  }
  return best;
}

OracleReport rocket_equation_check(double propellant_kg, double delta_v, double initial_mass,
                                   const VehicleModel& vehicle, double tolerance) {
  const double predicted =
      vehicle.isp * vehicle.g0 * std::log(initial_mass / (initial_mass - propellant_kg));
  return make_relative_report("rocket_equation_delta_v", {delta_v}, {predicted}, tolerance);
}

OracleReport burn_time_check(double propellant_kg, double final_time, const VehicleModel& vehicle,
                             double tolerance) {
  return make_relative_report("constant_flow_burn_time", {final_time},
                              {propellant_kg / vehicle.mass_flow()}, tolerance);
}

OracleReport rocket_equation_check(const SimResult& result, const VehicleModel& vehicle,
                                   double tolerance) {
  return rocket_equation_check(result.propellant_used, result.delta_v, result.initial_mass,
                               vehicle, tolerance);
}

StateVector random_suborbital_state(std::mt19937_64& rng, const EarthModel& earth) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double kDeg = std::numbers::pi / 180.0;

  const double alt = 50e3 + 250e3 * unit(rng);
  const double speed = 500.0 + 2500.0 * unit(rng);
  const double gamma = (-30.0 + 75.0 * unit(rng)) * kDeg;
  const double z = -1.0 + 2.0 * unit(rng);
  const double lon = 2.0 * std::numbers::pi * unit(rng);
  const double heading = 2.0 * std::numbers::pi * unit(rng);

  const double lat = std::asin(z);
  const Vec3 up = unit_from_latlon({lat, lon});
  const Vec3 east(-std::sin(lon), std::cos(lon), 0.0);
  const Vec3 north = up.cross(east);
  const Vec3 horiz = std::cos(heading) * north + std::sin(heading) * east;

  StateVector s;
  s.t = 0.0;
  s.r = (earth.r_e + alt) * up;
  s.v = speed * (std::sin(gamma) * up + std::cos(gamma) * horiz);
  s.m = 1.0;
  return s;
}

bool SampleResult::pass() const {
  if (!error.empty()) return false;
  return std::all_of(reports.begin(), reports.end(), [](const OracleReport& r) { return r.pass; });
}

std::vector<SampleResult> run_oracle_suite(const EarthModel& earth, const SuiteOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::vector<StateVector> states;
  states.reserve(opt.samples);
  for (std::size_t i = 0; i < opt.samples; ++i) states.push_back(random_suborbital_state(rng, earth));

  std::vector<SampleResult> results(states.size());
  unsigned workers = opt.threads != 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, states.size())));

  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < states.size(); i += workers) {
      results[i] = evaluate_sample(i, states[i], earth, opt.free_fall);
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  return results;
}

}  // namespace iipg::validation
