#include "scenario_file.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "iipg/case_study.hpp"

namespace iipg::cli {
namespace {

namespace pt = boost::property_tree;

constexpr double kTonne = 1000.0;
constexpr double kDeg = std::numbers::pi / 180.0;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"earth", {"mu", "r_e", "omega_e", "t_ref_s"}},
      {"vehicle", {"dry_mass_t", "propellant_t", "thrust_tonf", "isp_s"}},
      {"initial", {"r_km", "v_mps", "t_s"}},
      {"target", {"latlon_deg", "downrange_km", "crossrange_km"}},
      {"sim", {"dt_s", "max_time_s", "convergence_radius_m"}},
  };
  return s;
}

std::vector<double> parse_numbers(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != ',') ++j;
    const char* first = text.data() + i;
    const char* last = text.data() + j;
    // from_chars rejects a leading '+', accept it for hand-written files.
    if (*first == '+') ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      throw ParseError("key '" + key + "': invalid number '" + text.substr(i, j - i) + "'");
    }
    out.push_back(v);
    i = j;
  }
  return out;
}

class SectionReader {
 public:
  SectionReader(const pt::ptree& root, const std::string& name) : name_(name) {
    const auto it = root.find(name);
    if (it == root.not_found()) throw ParseError("missing section [" + name + "]");
    node_ = &it->second;
  }

  bool has(const std::string& key) const { return node_->find(key) != node_->not_found(); }

  std::vector<double> numbers(const std::string& key, std::size_t count) const {
    const auto it = node_->find(key);
    if (it == node_->not_found()) throw ParseError("missing key " + name_ + "." + key);
    auto vals = parse_numbers(name_ + "." + key, it->second.data());
    if (vals.size() != count) {
      throw ParseError("key " + name_ + "." + key + " expects " + std::to_string(count) +
                       " value(s), got " + std::to_string(vals.size()));
    }
    return vals;
  }

  double number(const std::string& key) const { return numbers(key, 1)[0]; }

  template <std::size_t N>
  std::array<double, N> triple(const std::string& key) const {
    const auto v = numbers(key, N);
    std::array<double, N> a{};
    std::copy(v.begin(), v.end(), a.begin());
    return a;
  }

 private:
  std::string name_;
  const pt::ptree* node_ = nullptr;
};

std::string format(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

ScenarioFile parse_scenario(std::istream& in) {
  pt::ptree root;
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(std::string("syntax: ") + e.what());
  }

  for (const auto& [section, body] : root) {
    const auto sit = schema().find(section);
    if (sit == schema().end()) {
      if (body.empty()) throw ParseError("key '" + section + "' outside any section");
      throw ParseError("unknown section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      if (!sit->second.contains(key)) throw ParseError("unknown key " + section + "." + key);
    }
  }

  ScenarioFile f;
  {
    const SectionReader s(root, "earth");
    f.mu = s.number("mu");
    f.r_e = s.number("r_e");
    f.omega_e = s.number("omega_e");
    f.t_ref_s = s.number("t_ref_s");
  }
  {
    const SectionReader s(root, "vehicle");
    f.dry_mass_t = s.number("dry_mass_t");
    f.propellant_t = s.number("propellant_t");
    f.thrust_tonf = s.number("thrust_tonf");
    f.isp_s = s.number("isp_s");
  }
  {
    const SectionReader s(root, "initial");
    f.r_km = s.triple<3>("r_km");
    f.v_mps = s.triple<3>("v_mps");
    f.t_s = s.number("t_s");
  }
  {
    const SectionReader s(root, "target");
    const bool ll = s.has("latlon_deg");
    const bool dr = s.has("downrange_km");
    const bool cr = s.has("crossrange_km");
    if (ll && (dr || cr)) throw ParseError("target: give latlon_deg or offsets, not both");
    if (ll) {
      const auto v = s.triple<2>("latlon_deg");
      f.target = LatLonTarget{v[0], v[1]};
    } else if (dr && cr) {
      f.target = OffsetTarget{s.number("downrange_km"), s.number("crossrange_km")};
    } else {
      throw ParseError("target: need latlon_deg or both downrange_km and crossrange_km");
    }
  }
  {
    const SectionReader s(root, "sim");
    f.dt_s = s.number("dt_s");
    f.max_time_s = s.number("max_time_s");
    f.convergence_radius_m = s.number("convergence_radius_m");
  }
  return f;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  return parse_scenario(in);
}

void write_scenario(std::ostream& out, const ScenarioFile& f) {
  out << "[earth]\n"
      << "mu = " << format(f.mu) << "\n"
      << "r_e = " << format(f.r_e) << "\n"
      << "omega_e = " << format(f.omega_e) << "\n"
      << "t_ref_s = " << format(f.t_ref_s) << "\n\n";
  out << "[vehicle]\n"
      << "dry_mass_t = " << format(f.dry_mass_t) << "\n"
      << "propellant_t = " << format(f.propellant_t) << "\n"
      << "thrust_tonf = " << format(f.thrust_tonf) << "\n"
      << "isp_s = " << format(f.isp_s) << "\n\n";
  out << "[initial]\n"
      << "r_km = " << format(f.r_km[0]) << " " << format(f.r_km[1]) << " " << format(f.r_km[2])
      << "\n"
      << "v_mps = " << format(f.v_mps[0]) << " " << format(f.v_mps[1]) << " "
      << format(f.v_mps[2]) << "\n"
      << "t_s = " << format(f.t_s) << "\n\n";
  out << "[target]\n";
  if (const auto* ll = std::get_if<LatLonTarget>(&f.target)) {
    out << "latlon_deg = " << format(ll->lat_deg) << " " << format(ll->lon_deg) << "\n\n";
  } else {
    const auto& off = std::get<OffsetTarget>(f.target);
    out << "downrange_km = " << format(off.downrange_km) << "\n"
        << "crossrange_km = " << format(off.crossrange_km) << "\n\n";
  }
  out << "[sim]\n"
      << "dt_s = " << format(f.dt_s) << "\n"
      << "max_time_s = " << format(f.max_time_s) << "\n"
      << "convergence_radius_m = " << format(f.convergence_radius_m) << "\n";
}

Scenario to_scenario(const ScenarioFile& f) {
  Scenario sc;
  sc.earth.mu = f.mu;
  sc.earth.r_e = f.r_e;
  sc.earth.omega_e = f.omega_e;
  sc.earth.t_ref = f.t_ref_s;

  sc.vehicle.dry_mass = f.dry_mass_t * kTonne;
  sc.vehicle.propellant_mass = f.propellant_t * kTonne;
  sc.vehicle.thrust = f.thrust_tonf * kTonne * kStandardGravity;
  sc.vehicle.isp = f.isp_s;

  sc.initial.t = f.t_s;
  sc.initial.r = Vec3(f.r_km[0], f.r_km[1], f.r_km[2]) * 1e3;
  sc.initial.v = Vec3(f.v_mps[0], f.v_mps[1], f.v_mps[2]);
  sc.initial.m = sc.vehicle.initial_mass();

  sc.dt = f.dt_s;
  sc.max_time = f.max_time_s;
  sc.convergence_radius = f.convergence_radius_m;

  if (const auto* ll = std::get_if<LatLonTarget>(&f.target)) {
    sc.target.u = unit_from_latlon({ll->lat_deg * kDeg, ll->lon_deg * kDeg});
  } else {
    const auto& off = std::get<OffsetTarget>(f.target);
    sc.target = target_from_offsets(sc.initial, off.downrange_km, off.crossrange_km, sc.earth);
  }
  return sc;
}

ScenarioFile case_scenario_file(int id) {
  const Scenario sc = case_study::scenario(id);
  const case_study::CaseSpec& c = case_study::kCases.at(static_cast<std::size_t>(id - 1));
  ScenarioFile f;
  f.mu = sc.earth.mu;
  f.r_e = sc.earth.r_e;
  f.omega_e = sc.earth.omega_e;
  f.t_ref_s = sc.earth.t_ref;
  f.dry_mass_t = 22.2;
  f.propellant_t = 57.0;
  f.thrust_tonf = 279.6;
  f.isp_s = 311.0;
  f.r_km = {1164.0, -5507.0, 3258.0};
  f.v_mps = {1337.0, 743.0, 1029.0};
  f.t_s = 0.0;
  f.target = OffsetTarget{c.downrange_km, c.crossrange_km};
  f.dt_s = sc.dt;
  f.max_time_s = sc.max_time;
  f.convergence_radius_m = sc.convergence_radius;
  return f;
}

}  // namespace iipg::cli
