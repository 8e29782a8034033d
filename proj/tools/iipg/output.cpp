#include "output.hpp"

#include <charconv>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace iipg::cli {
namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + p.string() + "'");
  return f;
}

}  // namespace

std::string fmt15(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 15);
  return std::string(buf, ptr);
}

void write_history_csv(std::ostream& out, const SimResult& result) {
  out << "t_s,rx_m,ry_m,rz_m,vx_mps,vy_mps,vz_mps,m_kg,iip_lat_deg,iip_lon_deg,"
         "a_r,a_theta,a_h,dist_to_target_m\n";
  for (const SimRecord& r : result.history) {
    out << fmt15(r.t) << ',' << fmt15(r.r.x()) << ',' << fmt15(r.r.y()) << ',' << fmt15(r.r.z())
        << ',' << fmt15(r.v.x()) << ',' << fmt15(r.v.y()) << ',' << fmt15(r.v.z()) << ','
        << fmt15(r.m) << ',' << fmt15(r.iip_lat * kRadToDeg) << ','
        << fmt15(r.iip_lon * kRadToDeg) << ',' << fmt15(r.a_r) << ',' << fmt15(r.a_theta) << ','
        << fmt15(r.a_h) << ',' << fmt15(r.dist_to_target) << '\n';
  }
}

void write_ground_track_csv(std::ostream& out, const SimResult& result) {
  out << "t_s,sub_lon_deg,sub_lat_deg,iip_lon_deg,iip_lat_deg\n";
  for (const SimRecord& r : result.history) {
    out << fmt15(r.t) << ',' << fmt15(r.sub_lon * kRadToDeg) << ','
        << fmt15(r.sub_lat * kRadToDeg) << ',' << fmt15(r.iip_lon * kRadToDeg) << ','
        << fmt15(r.iip_lat * kRadToDeg) << '\n';
  }
}

void write_commands_csv(std::ostream& out, const SimResult& result) {
  out << "t_s,a_r,a_theta,a_h\n";
  for (const SimRecord& r : result.history) {
    out << fmt15(r.t) << ',' << fmt15(r.a_r) << ',' << fmt15(r.a_theta) << ',' << fmt15(r.a_h)
        << '\n';
  }
}

void write_summary_json(std::ostream& out, const SimResult& result) {
  nlohmann::ordered_json j;
  j["outcome"] = std::string(to_string(result.outcome));
  j["final_time_s"] = result.final_time;
  j["propellant_used_kg"] = result.propellant_used;
  j["delta_v_mps"] = result.delta_v;
  j["miss_distance_m"] = result.miss_distance;
  j["guidance_holds"] = result.guidance_holds;
  j["steps"] = result.history.size();
  if (!result.message.empty()) j["message"] = result.message;
  out << j.dump(2) << '\n';
}

void write_prediction_json(std::ostream& out, const ImpactPrediction& p) {
  nlohmann::ordered_json j;
  j["lat_deg"] = p.lat_p * kRadToDeg;
  j["lon_eci_deg"] = p.lon_p * kRadToDeg;
  j["lon_ecef_deg"] = p.lon_p_ecef * kRadToDeg;
  j["time_of_flight_s"] = p.t_f;
  j["flight_path_angle_deg"] = p.gamma0 * kRadToDeg;
  j["angle_of_flight_deg"] = p.phi * kRadToDeg;
  j["lambda"] = p.lambda_cap;
  j["i_p_eci"] = {p.i_p.x(), p.i_p.y(), p.i_p.z()};
  j["i_p_ecef"] = {p.i_p_ecef.x(), p.i_p_ecef.y(), p.i_p_ecef.z()};
  out << j.dump(2) << '\n';
}

void write_sim_outputs(const std::filesystem::path& dir, const SimResult& result) {
  std::filesystem::create_directories(dir);
  {
    auto f = open_out(dir / "history.csv");
    write_history_csv(f, result);
  }
  {
    auto f = open_out(dir / "summary.json");
    write_summary_json(f, result);
  }
  {
    auto f = open_out(dir / "ground_track.csv");
    write_ground_track_csv(f, result);
  }
  {
    auto f = open_out(dir / "commands.csv");
    write_commands_csv(f, result);
  }
}

void write_validation_csv(std::ostream& out,
                          const std::vector<validation::SampleResult>& results) {
  out << "sample,quantity,metric,error,tolerance,pass\n";
  for (const auto& s : results) {
    if (!s.error.empty()) {
      out << s.index << ",evaluation,error,nan,0,FAIL\n";
      continue;
    }
    for (const auto& r : s.reports) {
      out << s.index << ',' << r.quantity << ',' << r.metric << ',' << fmt15(r.error) << ','
          << fmt15(r.tolerance) << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
    }
  }
}

}  // namespace iipg::cli
