#pragma once

#include <array>

#include "iipg/sim.hpp"

namespace iipg::case_study {

/// Separated first stage: 22.2 t dry, 57 t propellant, 279.6 tonf, Isp 311 s.
VehicleModel vehicle();

/// Epoch t_ref = -240 s, otherwise the standard constants.
EarthModel earth();

/// Guidance start: r = (1164, -5507, 3258) km, v = (1337, 743, 1029) m/s, t = 0.
StateVector initial_state();

struct CaseSpec {
  int id;
  double downrange_km;
  double crossrange_km;
};

/// Published closed-loop results used as regression references.
struct Reference {
  double final_time_s;
  double propellant_t;
  double delta_v_mps;
  double tolerance;  ///< relative acceptance band
};

inline constexpr std::array<CaseSpec, 5> kCases = {{
    {1, -100.0, 0.0},
    {2, -200.0, 0.0},
    {3, 100.0, 0.0},
    {4, 200.0, 0.0},
    {5, 0.0, 150.0},
}};

inline constexpr std::array<Reference, 5> kReference = {{
    {12.5, 11.2, 465.0, 0.05},
    {29.5, 26.5, 1247.0, 0.07},
    {9.4, 8.4, 343.0, 0.05},
    {16.4, 14.7, 627.0, 0.05},
    {21.8, 19.6, 868.0, 0.07},
}};

/// Closed-loop scenario for case `id` (1..5).
Scenario scenario(int id, double dt = 0.05);

}  // namespace iipg::case_study
