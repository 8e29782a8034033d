#pragma once

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include "iipg/sim.hpp"

namespace iipg::cli {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LatLonTarget {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  bool operator==(const LatLonTarget&) const = default;
};

struct OffsetTarget {
  double downrange_km = 0.0;
  double crossrange_km = 0.0;
  bool operator==(const OffsetTarget&) const = default;
};

/// Scenario as written on disk, in the file's units (t, tonf, km, deg).
///
///   [earth]    mu, r_e, omega_e, t_ref_s
///   [vehicle]  dry_mass_t, propellant_t, thrust_tonf, isp_s
///   [initial]  r_km = x y z, v_mps = x y z, t_s
///   [target]   latlon_deg = lat lon  |  downrange_km, crossrange_km
///   [sim]      dt_s, max_time_s, convergence_radius_m
struct ScenarioFile {
  double mu = 0.0;
  double r_e = 0.0;
  double omega_e = 0.0;
  double t_ref_s = 0.0;

  double dry_mass_t = 0.0;
  double propellant_t = 0.0;
  double thrust_tonf = 0.0;
  double isp_s = 0.0;

  std::array<double, 3> r_km{};
  std::array<double, 3> v_mps{};
  double t_s = 0.0;

  std::variant<LatLonTarget, OffsetTarget> target;

  double dt_s = 0.0;
  double max_time_s = 0.0;
  double convergence_radius_m = 0.0;

  bool operator==(const ScenarioFile&) const = default;
};

/// Throws ParseError on syntax errors, missing keys, unknown keys or bad numbers.
ScenarioFile parse_scenario(std::istream& in);
ScenarioFile load_scenario(const std::string& path);

/// Shortest round-trip number formatting; parse_scenario(write) is the identity.
void write_scenario(std::ostream& out, const ScenarioFile& file);

/// SI scenario; offset targets are resolved against the initial state.
Scenario to_scenario(const ScenarioFile& file);

/// Built-in case study (1..5) in file form.
ScenarioFile case_scenario_file(int id);

}  // namespace iipg::cli
