#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "CLI11.hpp"
#include "iipg/case_study.hpp"
#include "iipg/error.hpp"
#include "iipg/iip.hpp"
#include "iipg/sim.hpp"
#include "iipg/validation.hpp"
#include "output.hpp"
#include "scenario_file.hpp"

namespace iipg::cli {
namespace {

namespace fs = std::filesystem;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

int exit_for(Outcome o) { return o == Outcome::Converged ? kExitOk : kExitGuidance; }

double deviation(double value, double ref) { return (value - ref) / ref; }

}  // namespace

int cmd_predict(const std::string& scenario_path, const std::string& json_path,
                std::ostream& out, std::ostream& err) {
  Scenario sc;
  try {
    const ScenarioFile file = load_scenario(scenario_path);
    sc.earth = {file.mu, file.r_e, file.omega_e, file.t_ref_s};
    sc.earth.validate();
    sc.initial.t = file.t_s;
    sc.initial.r = Vec3(file.r_km[0], file.r_km[1], file.r_km[2]) * 1e3;
    sc.initial.v = Vec3(file.v_mps[0], file.v_mps[1], file.v_mps[2]);
  } catch (const std::exception& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  }

  ImpactPrediction p;
  try {
    p = predict(sc.initial, sc.earth);
  } catch (const Error& e) {
    err << "prediction error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitPrediction;
  }

  out << "flight_path_angle_deg " << fmt15(p.gamma0 * kRadToDeg) << '\n'
      << "angle_of_flight_deg   " << fmt15(p.phi * kRadToDeg) << '\n'
      << "time_of_flight_s      " << fmt15(p.t_f) << '\n'
      << "iip_lat_deg           " << fmt15(p.lat_p * kRadToDeg) << '\n'
      << "iip_lon_eci_deg       " << fmt15(p.lon_p * kRadToDeg) << '\n'
      << "iip_lon_ecef_deg      " << fmt15(p.lon_p_ecef * kRadToDeg) << '\n';

  if (!json_path.empty()) {
    std::ofstream f(json_path, std::ios::binary);
    if (!f) {
      err << "cannot write '" << json_path << "'\n";
      return kExitUsage;
    }
    write_prediction_json(f, p);
  }
  return kExitOk;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir, double dt_override,
                 std::ostream& out, std::ostream& err) {
  Scenario sc;
  try {
    ScenarioFile file = load_scenario(scenario_path);
    if (dt_override > 0.0) file.dt_s = dt_override;
    sc = to_scenario(file);
    sc.validate();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "scenario error: " << e.what() << '\n';
    return e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::NotUnit
               ? kExitUsage
               : kExitPrediction;
  }

  const SimResult res = run_closed_loop(sc);
  try {
    write_sim_outputs(out_dir, res);
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  out << "outcome          " << to_string(res.outcome) << '\n'
      << "final_time_s     " << fmt15(res.final_time) << '\n'
      << "propellant_kg    " << fmt15(res.propellant_used) << '\n'
      << "delta_v_mps      " << fmt15(res.delta_v) << '\n'
      << "miss_distance_m  " << fmt15(res.miss_distance) << '\n';
  if (!res.message.empty()) err << res.message << '\n';
  return exit_for(res.outcome);
}

int cmd_validate(unsigned long long seed, long long samples, const std::string& out_dir,
                 std::ostream& out, std::ostream& err) {
  if (samples < 1) {
    err << "--samples must be at least 1\n";
    return kExitUsage;
  }
  validation::SuiteOptions opt;
  opt.seed = seed;
  opt.samples = static_cast<std::size_t>(samples);
  const EarthModel earth = case_study::earth();
  const auto results = validation::run_oracle_suite(earth, opt);

  struct Agg {
    double worst = 0.0;
    double tolerance = 0.0;
    std::size_t passed = 0;
    std::size_t total = 0;
  };
  std::map<std::string, Agg> table;
  std::size_t failed_samples = 0;
  for (const auto& s : results) {
    if (!s.pass()) ++failed_samples;
    if (!s.error.empty()) {
      auto& a = table["evaluation"];
      ++a.total;
      continue;
    }
    for (const auto& r : s.reports) {
      auto& a = table[r.quantity];
      a.worst = std::max(a.worst, r.error);
      a.tolerance = r.tolerance;
      a.passed += r.pass ? 1 : 0;
      ++a.total;
    }
  }

  try {
    fs::create_directories(out_dir);
    std::ofstream detail(fs::path(out_dir) / "validation_report.csv", std::ios::binary);
    write_validation_csv(detail, results);
    std::ofstream summary(fs::path(out_dir) / "validation_summary.csv", std::ios::binary);
    summary << "quantity,worst_error,tolerance,passed,total,status\n";
    for (const auto& [name, a] : table) {
      summary << name << ',' << fmt15(a.worst) << ',' << fmt15(a.tolerance) << ',' << a.passed
              << ',' << a.total << ',' << (a.passed == a.total ? "PASS" : "FAIL") << '\n';
    }
    if (!detail || !summary) throw std::runtime_error("failed writing reports in " + out_dir);
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  for (const auto& [name, a] : table) {
    out << (a.passed == a.total ? "PASS " : "FAIL ") << name << "  worst " << fmt15(a.worst)
        << "  tol " << fmt15(a.tolerance) << "  (" << a.passed << "/" << a.total << ")\n";
  }
  out << results.size() - failed_samples << "/" << results.size() << " samples pass\n";
  return failed_samples == 0 ? kExitOk : kExitValidation;
}

int cmd_cases(const std::string& out_dir, double dt, std::ostream& out, std::ostream& err) {
  std::vector<std::future<SimResult>> jobs;
  for (const auto& c : case_study::kCases) {
    jobs.push_back(std::async(std::launch::async, [id = c.id, dt] {
      return run_closed_loop(case_study::scenario(id, dt));
    }));
  }
  std::vector<SimResult> results;
  for (auto& j : jobs) results.push_back(j.get());

  bool all_converged = true;
  try {
    fs::create_directories(out_dir);
    std::ofstream table(fs::path(out_dir) / "regression.csv", std::ios::binary);
    table << "case,outcome,final_time_s,ref_final_time_s,final_time_dev_pct,propellant_t,"
             "ref_propellant_t,propellant_dev_pct,delta_v_mps,ref_delta_v_mps,delta_v_dev_pct,"
             "band_pct,within_band\n";
    out << "case  outcome     t_f[s]   ref    dev%   prop[t]  ref    dev%   dV[m/s]  ref     "
           "dev%\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
      const SimResult& r = results[i];
      const auto& ref = case_study::kReference[i];
      const int id = case_study::kCases[i].id;
      write_sim_outputs(fs::path(out_dir) / ("case_" + std::to_string(id)), r);

      const double prop_t = r.propellant_used / 1000.0;
      const double d_t = deviation(r.final_time, ref.final_time_s);
      const double d_p = deviation(prop_t, ref.propellant_t);
      const double d_v = deviation(r.delta_v, ref.delta_v_mps);
      const bool ok = r.outcome == Outcome::Converged && std::abs(d_t) <= ref.tolerance &&
                      std::abs(d_p) <= ref.tolerance && std::abs(d_v) <= ref.tolerance;
      all_converged = all_converged && r.outcome == Outcome::Converged;

      table << id << ',' << to_string(r.outcome) << ',' << fmt15(r.final_time) << ','
            << fmt15(ref.final_time_s) << ',' << fmt15(100.0 * d_t) << ',' << fmt15(prop_t) << ','
            << fmt15(ref.propellant_t) << ',' << fmt15(100.0 * d_p) << ',' << fmt15(r.delta_v)
            << ',' << fmt15(ref.delta_v_mps) << ',' << fmt15(100.0 * d_v) << ','
            << fmt15(100.0 * ref.tolerance) << ',' << (ok ? "yes" : "no") << '\n';

      char line[200];
      std::snprintf(line, sizeof(line),
                    "%-5d %-10s %7.2f  %5.1f  %+5.1f  %7.2f  %5.1f  %+5.1f  %7.1f  %6.0f  %+5.1f\n",
                    id, std::string(to_string(r.outcome)).substr(0, 10).c_str(), r.final_time,
                    ref.final_time_s, 100.0 * d_t, prop_t, ref.propellant_t, 100.0 * d_p,
                    r.delta_v, ref.delta_v_mps, 100.0 * d_v);
      out << line;
    }
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  return all_converged ? kExitOk : kExitGuidance;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Feedback IIP guidance: prediction, closed-loop simulation and validation", "iipg"};
  app.require_subcommand(1);

  std::string scenario;
  std::string out_dir = ".";
  std::string json_path;
  unsigned long long seed = 42;
  long long samples = 200;
  double dt = 0.0;

  auto* predict_cmd = app.add_subcommand("predict", "Keplerian IIP of the scenario's initial state");
  predict_cmd->add_option("--scenario", scenario, "scenario file")->required();
  predict_cmd->add_option("--json", json_path, "also write the prediction as JSON");

  auto* sim_cmd = app.add_subcommand("simulate", "closed-loop guidance run");
  sim_cmd->add_option("--scenario", scenario, "scenario file")->required();
  sim_cmd->add_option("--out", out_dir, "output directory");
  sim_cmd->add_option("--dt", dt, "override the integration step [s]");

  auto* val_cmd = app.add_subcommand("validate", "oracle suite on random suborbital states");
  val_cmd->add_option("--seed", seed, "random seed");
  val_cmd->add_option("--samples", samples, "number of random states");
  val_cmd->add_option("--out", out_dir, "report directory");

  auto* cases_cmd = app.add_subcommand("cases", "built-in case studies and regression table");
  cases_cmd->add_option("--out", out_dir, "output directory");
  cases_cmd->add_option("--dt", dt, "integration step [s]");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  if (*predict_cmd) return cmd_predict(scenario, json_path, out, err);
  if (*sim_cmd) return cmd_simulate(scenario, out_dir, dt, out, err);
  if (*val_cmd) return cmd_validate(seed, samples, out_dir, out, err);
  if (*cases_cmd) return cmd_cases(out_dir, dt > 0.0 ? dt : 0.05, out, err);
  return kExitUsage;
}

}  // namespace iipg::cli
