#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "iipg/geo.hpp"
#include "iipg/sim.hpp"

// Independent numerical oracles for the analytic IIP machinery. Nothing here
// calls into the closed-form predictor's internals or the simulator's
// integrator; the free-fall propagator is a separate long-double RK4.
namespace iipg::validation {

struct OracleReport {
  std::string quantity;
  std::vector<double> analytic;
  std::vector<double> oracle;
  double error = 0.0;      ///< relative unless `metric` says otherwise
  double tolerance = 0.0;
  std::string metric = "relative";
  bool pass = false;
};

/// |analytic - oracle| / max(|oracle|, 1e-12).
double relative_error(const std::vector<double>& analytic, const std::vector<double>& oracle);

OracleReport make_relative_report(std::string quantity, std::vector<double> analytic,
                                  std::vector<double> oracle, double tolerance);
OracleReport make_absolute_report(std::string quantity, std::string metric, double analytic,
                                  double oracle, double error, double tolerance);

struct FreeFallOptions {
  double dt = 1e-3;         ///< fixed RK4 step [s]
  double max_time = 2.0e4;  ///< give up after this much flight [s]
};

struct FreeFallImpact {
  Vec3 i_p = Vec3::Zero();  ///< ECI impact direction
  double t_f = 0.0;         ///< [s]
  double energy_drift = 0.0;  ///< relative change of specific energy over the flight
};

/// Propagates the unpowered two-body motion until |r| falls through r_e and
/// pins the crossing by bisecting the final step. Throws Error(NoImpact).
FreeFallImpact free_fall_impact(const StateVector& state, const EarthModel& earth,
                                const FreeFallOptions& opt = {});

/// Coast the state for `duration` seconds with the oracle integrator.
StateVector coast(const StateVector& state, double duration, const EarthModel& earth,
                  const FreeFallOptions& opt = {});

enum class Axis { Radial, Transverse, Normal };

std::string_view to_string(Axis axis) noexcept;

/// Finite-difference IIP rate for a unit acceleration along one triad axis.
struct FdRate {
  Vec3 eci = Vec3::Zero();   ///< d(i_p)/dt
  Vec3 ecef = Vec3::Zero();  ///< d(i_p^E)/dt
  double tf = 0.0;           ///< d(t_F)/dt from the acceleration alone
};

/// Applies the impulse accel * delta_t along the axis, reruns the free-fall
/// oracle and differences the impact points (and their ECEF images).
FdRate fd_iip_rate(const StateVector& state, Axis axis, const EarthModel& earth,
                   double delta_t = 1e-3, double accel = 1.0, const FreeFallOptions& opt = {});

struct SphereSearch {
  Vec3 x = Vec3::Zero();
  double objective = 0.0;
  std::size_t candidates = 0;
};

/// Fibonacci lattice with roughly `resolution_deg` spacing.
std::vector<Vec3> fibonacci_sphere(double resolution_deg);

/// Brute-force maximization of c.x over |x| = a_m, f.x = 0. Directions whose
/// angular distance to the constraint plane is below the resolution are
/// projected onto it, so every returned candidate is exactly feasible.
SphereSearch sphere_search_pcg(const Vec3& c, const Vec3& f, double a_m, double resolution_deg);

/// Rocket-equation and constant-flow cross-check of a (propellant, delta-v,
/// duration) triple.
OracleReport rocket_equation_check(double propellant_kg, double delta_v, double initial_mass,
                                   const VehicleModel& vehicle, double tolerance);
OracleReport burn_time_check(double propellant_kg, double final_time,
                             const VehicleModel& vehicle, double tolerance);

OracleReport rocket_equation_check(const SimResult& result, const VehicleModel& vehicle,
                                   double tolerance = 1e-6);

/// Boostback envelope: altitude 50-300 km, inertial speed 0.5-3 km/s, flight
/// path angle -30..45 deg, uniformly random position and heading.
StateVector random_suborbital_state(std::mt19937_64& rng, const EarthModel& earth);

struct SampleResult {
  std::size_t index = 0;
  StateVector state;
  std::vector<OracleReport> reports;
  std::string error;  ///< non-empty if the sample could not be evaluated

  bool pass() const;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  std::size_t samples = 200;
  unsigned threads = 0;  ///< 0 = hardware concurrency
  FreeFallOptions free_fall;
};

/// Every oracle against every analytic quantity on random states. Result
/// order and contents depend only on the seed.
std::vector<SampleResult> run_oracle_suite(const EarthModel& earth, const SuiteOptions& opt);

/// Tolerances applied by run_oracle_suite.
struct Tolerances {
  static constexpr double kIipDistance = 1000.0;  ///< [m]
  static constexpr double kTimeOfFlight = 0.5;    ///< [s]
  static constexpr double kRate = 1e-3;
  static constexpr double kStructural = 1e-9;
  static constexpr double kGravityTerm = 1e-6;
};

}  // namespace iipg::validation
