#include "windfarm/economics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "windfarm/cable.hpp"
#include "windfarm/error.hpp"
#include "text_util.hpp"

namespace windfarm {

namespace {

// Relative slack on the spacing check so repaired layouts sitting exactly on
// the limit are not rejected by rounding.
constexpr double kSpacingSlack = 1e-9;

struct EnergyKernel {
  std::vector<Rotor> rotors;
  std::vector<const TurbineSpec*> specs;
  std::vector<double> shear;  // reference height -> hub height

  EnergyKernel(const FarmLayout& layout, const SiteModel& site)
      : rotors(layout_rotors(layout, site.catalog)) {
    specs.reserve(layout.turbines.size());
    shear.reserve(layout.turbines.size());
    for (const auto& t : layout.turbines) {
      const auto& spec = site.catalog[t.spec];
      specs.push_back(&spec);
      shear.push_back(shear_factor(site.wind.reference_height, spec.hub_height, site.roughness.z0));
    }
  }

  std::vector<double> combined(double theta, const SiteModel& site, WakeMode mode) const {
    if (mode == WakeMode::ignorant || rotors.size() < 2)
      return std::vector<double>(rotors.size(), 0.0);
    return compute_deficits(rotors, theta, site.wake).combined();
  }

  // Watts.
  double power(double u, const std::vector<double>& deficit) const {
    double total = 0.0;
    for (std::size_t j = 0; j < specs.size(); ++j)
      total += electrical_power(waked_speed(u * shear[j], deficit[j]), *specs[j]);
    return total;
  }
};

}  // namespace

std::string_view to_string(WakeMode mode) {
  return mode == WakeMode::aware ? "aware" : "ignorant";
}

WakeMode parse_wake_mode(std::string_view name) {
  if (name == "aware") return WakeMode::aware;
  if (name == "ignorant") return WakeMode::ignorant;
  throw Error("unknown wake mode '" + std::string(name) + "'");
}

std::string_view to_string(FootprintMode mode) {
  return mode == FootprintMode::bounding_box ? "bounding_box" : "fixed_boundary";
}

FootprintMode parse_footprint_mode(std::string_view name) {
  if (name == "bounding_box") return FootprintMode::bounding_box;
  if (name == "fixed_boundary") return FootprintMode::fixed_boundary;
  throw Error("unknown footprint mode '" + std::string(name) + "'");
}

std::vector<Point> FarmLayout::turbine_positions() const {
  std::vector<Point> out;
  out.reserve(turbines.size());
  for (const auto& t : turbines) out.push_back(t.position);
  return out;
}

std::vector<Point> FarmLayout::all_positions() const {
  auto out = turbine_positions();
  out.push_back(substation);
  return out;
}

void validate_layout(const FarmLayout& layout, const TurbineCatalog& catalog,
                     double min_spacing_factor) {
  for (const auto& t : layout.turbines)
    if (t.spec >= catalog.size()) throw InfeasibleError("catalog", "spec index out of range");
  if (layout.boundary) {
    for (std::size_t i = 0; i < layout.turbines.size(); ++i)
      if (!layout.boundary->contains(layout.turbines[i].position))
        throw InfeasibleError("boundary", "turbine " + std::to_string(i) + " lies outside the site");
    if (!layout.boundary->contains(layout.substation))
      throw InfeasibleError("boundary", "substation lies outside the site");
  }
  for (std::size_t i = 0; i < layout.turbines.size(); ++i)
    for (std::size_t j = i + 1; j < layout.turbines.size(); ++j) {
      const auto& a = layout.turbines[i];
      const auto& b = layout.turbines[j];
      const double need = min_spacing_factor *
                          std::max(catalog[a.spec].rotor_diameter, catalog[b.spec].rotor_diameter);
      if (distance(a.position, b.position) < need * (1.0 - kSpacingSlack))
        throw InfeasibleError("min_spacing", "turbines " + std::to_string(i) + " and " +
                                                 std::to_string(j) + " are closer than " +
                                                 std::to_string(need) + " m");
    }
}

double CostParams::capex(const TurbineSpec& spec) const {
  if (auto it = capex_by_spec.find(spec.name); it != capex_by_spec.end()) return it->second;
  return capex_per_mw * spec.rated_power;
}

void CostParams::validate() const {
  if (c_elec < 0 || c_land < 0 || c_cable < 0 || capex_per_mw < 0 || o_and_m < 0)
    throw DomainError("cost parameters must be non-negative");
  for (const auto& [name, v] : capex_by_spec)
    if (v < 0) throw DomainError("capex for " + name + " must be non-negative");
  if (!(interest_rate > 0.0 && interest_rate < 1.0))
    throw DomainError("interest rate must lie in (0, 1)");
  if (lifetime_years < 1) throw DomainError("lifetime must be at least one year");
}

CostParams CostParams::from_json(const nlohmann::json& j) { return from_json(j, CostParams{}); }

CostParams CostParams::from_json(const nlohmann::json& j, CostParams p) {
  p.c_elec = j.value("c_elec_usd_per_kwh", p.c_elec);
  p.c_land = j.value("c_land_usd_per_m2_yr", p.c_land);
  p.c_cable = j.value("c_cable_usd_per_m", p.c_cable);
  p.capex_per_mw = j.value("capex_usd_per_mw", p.capex_per_mw);
  if (j.contains("capex_usd_by_spec"))
    p.capex_by_spec = j.at("capex_usd_by_spec").get<std::map<std::string, double>>();
  p.o_and_m = j.value("o_and_m_usd_per_turbine_yr", p.o_and_m);
  p.interest_rate = j.value("interest_rate", p.interest_rate);
  p.lifetime_years = j.value("lifetime_years", p.lifetime_years);
  p.validate();
  return p;
}

void to_json(nlohmann::json& j, const CostParams& p) {
  j = nlohmann::json{{"c_elec_usd_per_kwh", p.c_elec},
                     {"c_land_usd_per_m2_yr", p.c_land},
                     {"c_cable_usd_per_m", p.c_cable},
                     {"capex_usd_per_mw", p.capex_per_mw},
                     {"capex_usd_by_spec", p.capex_by_spec},
                     {"o_and_m_usd_per_turbine_yr", p.o_and_m},
                     {"interest_rate", p.interest_rate},
                     {"lifetime_years", p.lifetime_years}};
}

void check_report(const EvaluationReport& r) {
  const double identity = r.apb - (r.land_cost + r.cable_cost + r.turbine_cost);
  if (!(std::abs(identity - r.aeb) <= 1e-6))
    throw InvariantError("AEB does not equal APB minus investment");
  if (!(r.capacity_factor >= 0.0 && r.capacity_factor <= 1.0 + 1e-12))
    throw InvariantError("capacity factor outside [0, 1]");
  if (!(r.aep >= 0.0)) throw InvariantError("negative AEP");
}

void to_json(nlohmann::json& j, const EvaluationReport& r) {
  j = nlohmann::json{{"aep_gwh", r.aep},
                     {"apb_musd", r.apb},
                     {"farm_capacity_mw", r.farm_capacity},
                     {"capacity_factor", r.capacity_factor},
                     {"footprint_km2", r.footprint},
                     {"cable_length_km", r.cable_length},
                     {"land_cost_musd", r.land_cost},
                     {"cable_cost_musd", r.cable_cost},
                     {"turbine_cost_musd", r.turbine_cost},
                     {"aeb_musd", r.aeb},
                     {"turbine_count", r.turbine_count},
                     {"capacity_mix", r.capacity_mix},
                     {"wake_mode", to_string(r.wake_mode)}};
}

void from_json(const nlohmann::json& j, EvaluationReport& r) {
  r.aep = j.at("aep_gwh").get<double>();
  r.apb = j.at("apb_musd").get<double>();
  r.farm_capacity = j.at("farm_capacity_mw").get<double>();
  r.capacity_factor = j.at("capacity_factor").get<double>();
  r.footprint = j.at("footprint_km2").get<double>();
  r.cable_length = j.at("cable_length_km").get<double>();
  r.land_cost = j.at("land_cost_musd").get<double>();
  r.cable_cost = j.at("cable_cost_musd").get<double>();
  r.turbine_cost = j.at("turbine_cost_musd").get<double>();
  r.aeb = j.at("aeb_musd").get<double>();
  r.turbine_count = j.value("turbine_count", std::size_t{0});
  r.capacity_mix = j.value("capacity_mix", std::string{});
  r.wake_mode = parse_wake_mode(j.value("wake_mode", std::string("aware")));
}

std::string report_csv_header() {
  return "aep_gwh,apb_musd,farm_capacity_mw,capacity_factor_pct,footprint_km2,cable_length_km,"
         "land_cost_musd,cable_cost_musd,turbine_cost_musd,aeb_musd,wake_mode,capacity_mix";
}

std::string report_csv_row(const EvaluationReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << r.aep << ',' << r.apb << ',' << r.farm_capacity << ',' << r.capacity_factor * 100.0 << ','
     << r.footprint << ',' << r.cable_length << ',' << r.land_cost << ',' << r.cable_cost << ','
     << r.turbine_cost << ',' << r.aeb << ',' << to_string(r.wake_mode) << ",\""
     << r.capacity_mix << '"';
  return os.str();
}

EvaluationReport report_from_csv_row(std::string_view row) {
  const auto f = detail::split_csv(detail::trim(row), 1);
  if (f.size() != 12) throw ParseError(1, "report row needs 12 fields");
  auto num = [&](std::size_t i) { return detail::parse_double(f[i], 1, "report field"); };
  EvaluationReport r;
  r.aep = num(0);
  r.apb = num(1);
  r.farm_capacity = num(2);
  r.capacity_factor = num(3) / 100.0;
  r.footprint = num(4);
  r.cable_length = num(5);
  r.land_cost = num(6);
  r.cable_cost = num(7);
  r.turbine_cost = num(8);
  r.aeb = num(9);
  r.wake_mode = parse_wake_mode(f[10]);
  r.capacity_mix = f[11];
  return r;
}

std::vector<Rotor> layout_rotors(const FarmLayout& layout, const TurbineCatalog& catalog) {
  std::vector<Rotor> rotors;
  rotors.reserve(layout.turbines.size());
  for (const auto& t : layout.turbines) {
    const auto& spec = catalog[t.spec];
    rotors.push_back({{t.position.x, t.position.y, spec.hub_height}, spec.rotor_diameter, spec.ct});
  }
  return rotors;
}

double farm_power(const FarmLayout& layout, const SiteModel& site, double theta_deg, double u,
                  WakeMode mode) {
  if (layout.turbines.empty()) return 0.0;
  EnergyKernel kernel(layout, site);
  return kernel.power(u, kernel.combined(theta_deg, site, mode)) / 1e6;
}

double annual_energy(const FarmLayout& layout, const SiteModel& site, WakeMode mode) {
  if (layout.turbines.empty()) return 0.0;
  const auto& wind = site.wind;
  EnergyKernel kernel(layout, site);
  double expected_w = 0.0;
  for (std::size_t s = 0; s < wind.p_theta.size(); ++s) {
    if (wind.mode == ProbabilityMode::product_of_marginals && wind.p_theta[s] == 0.0) continue;
    const auto deficit = kernel.combined(wind.sector_direction(s), site, mode);
    for (std::size_t b = 0; b < wind.bin_count(); ++b) {
      const double p = wind.probability(s, b);
      if (p == 0.0) continue;
      expected_w += p * kernel.power(wind.bin_speed(b), deficit);
    }
  }
  return kHoursPerYear * expected_w / 1e9;
}

double production_benefit(double aep_gwh, double c_elec) {
  if (!(aep_gwh >= 0.0)) throw DomainError("AEP must be non-negative");
  // GWh -> kWh is 1e6 and $ -> M$ is 1e-6.
  return c_elec * aep_gwh;
}

double capital_recovery_factor(double r, int n) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("interest rate must lie in (0, 1)");
  if (n < 1) throw DomainError("lifetime must be at least one year");
  return r / (1.0 - std::pow(1.0 + r, -n));
}

double land_cost(const Rect& boundary, double c_land) {
  if (!(boundary.x_max > boundary.x_min) || !(boundary.y_max > boundary.y_min))
    throw DomainError("land boundary is degenerate");
  return c_land * boundary.area() / 1e6;
}

double turbine_cost(std::span<const TurbineSpec> turbines, const CostParams& params) {
  const double crf = capital_recovery_factor(params.interest_rate, params.lifetime_years);
  double capex = 0.0;
  for (const auto& t : turbines) capex += params.capex(t);
  return (params.o_and_m * static_cast<double>(turbines.size()) + crf * capex) / 1e6;
}

double turbine_cost(const FarmLayout& layout, const TurbineCatalog& catalog,
                    const CostParams& params) {
  std::vector<TurbineSpec> specs;
  specs.reserve(layout.turbines.size());
  for (const auto& t : layout.turbines) specs.push_back(catalog[t.spec]);
  return turbine_cost(specs, params);
}

double cable_cost(double length_m, const CostParams& params) {
  if (!(length_m >= 0.0)) throw DomainError("cable length must be non-negative");
  return params.c_cable * length_m *
         capital_recovery_factor(params.interest_rate, params.lifetime_years) / 1e6;
}

double capacity_factor(double aep_gwh, double rated_total_mw) {
  if (!(rated_total_mw > 0.0)) throw DomainError("rated capacity must be positive");
  return aep_gwh * 1e3 / (rated_total_mw * kHoursPerYear);
}

std::string capacity_mix(std::span<const TurbineSpec> turbines) {
  std::map<double, std::pair<std::string, int>, std::greater<>> counts;
  for (const auto& t : turbines) {
    auto& entry = counts[t.rated_power];
    entry.first = t.name;
    ++entry.second;
  }
  std::string out;
  for (const auto& [mw, entry] : counts) {
    if (!out.empty()) out += '+';
    out += "(" + entry.first + "*" + std::to_string(entry.second) + ")";
  }
  return out;
}

EvaluationReport assemble_report(double aep_gwh, std::span<const TurbineSpec> turbines,
                                 double footprint_m2, double cable_length_m,
                                 const CostParams& params, WakeMode mode) {
  params.validate();
  EvaluationReport r;
  r.wake_mode = mode;
  r.turbine_count = turbines.size();
  r.capacity_mix = capacity_mix(turbines);
  r.aep = aep_gwh;
  r.apb = production_benefit(aep_gwh, params.c_elec);
  for (const auto& t : turbines) r.farm_capacity += t.rated_power;
  r.capacity_factor = r.farm_capacity > 0.0 ? capacity_factor(aep_gwh, r.farm_capacity) : 0.0;
  r.footprint = footprint_m2 / 1e6;
  r.cable_length = cable_length_m / 1e3;
  r.land_cost = params.c_land * footprint_m2 / 1e6;
  r.cable_cost = cable_cost(cable_length_m, params);
  r.turbine_cost = turbine_cost(turbines, params);
  r.aeb = r.apb - (r.land_cost + r.cable_cost + r.turbine_cost);
  check_report(r);
  return r;
}

double footprint_area(const FarmLayout& layout, FootprintMode mode) {
  if (mode == FootprintMode::fixed_boundary) {
    if (!layout.boundary) throw DomainError("fixed-boundary footprint needs a boundary");
    return layout.boundary->area();
  }
  const auto pts = layout.all_positions();
  return bounding_box(pts).area();
}

EvaluationReport evaluate(const FarmLayout& layout, const SiteModel& site, WakeMode mode) {
  const double aep = annual_energy(layout, site, mode);
  const auto pts = layout.all_positions();
  const double cable = minimum_spanning_tree(pts, pts.size() - 1).total_length;
  std::vector<TurbineSpec> specs;
  specs.reserve(layout.turbines.size());
  for (const auto& t : layout.turbines) specs.push_back(site.catalog[t.spec]);
  return assemble_report(aep, specs, footprint_area(layout, site.footprint), cable, site.costs, mode);
}

nlohmann::json layout_to_json(const FarmLayout& layout, const TurbineCatalog& catalog) {
  nlohmann::json turbines = nlohmann::json::array();
  for (const auto& t : layout.turbines) {
    const auto& spec = catalog[t.spec];
    turbines.push_back({{"x_m", t.position.x},
                        {"y_m", t.position.y},
                        {"spec", spec.name},
                        {"rated_power_mw", spec.rated_power},
                        {"hub_height_m", spec.hub_height},
                        {"rotor_diameter_m", spec.rotor_diameter}});
  }
  nlohmann::json j{{"turbines", std::move(turbines)},
                   {"substation", {{"x_m", layout.substation.x}, {"y_m", layout.substation.y}}},
                   {"hub_profile", to_string(catalog.profile())}};
  if (layout.boundary) {
    const auto& b = *layout.boundary;
    j["boundary"] = {{"x_min", b.x_min}, {"x_max", b.x_max}, {"y_min", b.y_min}, {"y_max", b.y_max}};
  } else {
    j["boundary"] = nullptr;
  }
  return j;
}

FarmLayout layout_from_json(const nlohmann::json& j, const TurbineCatalog& catalog) {
  FarmLayout layout;
  for (const auto& t : j.at("turbines")) {
    PlacedTurbine placed;
    placed.position = {t.at("x_m").get<double>(), t.at("y_m").get<double>()};
    placed.spec = catalog.index_of(t.at("spec").get<std::string>());
    layout.turbines.push_back(placed);
  }
  const auto& sub = j.at("substation");
  layout.substation = {sub.at("x_m").get<double>(), sub.at("y_m").get<double>()};
  if (j.contains("boundary") && !j.at("boundary").is_null()) {
    const auto& b = j.at("boundary");
    layout.boundary = Rect{b.at("x_min").get<double>(), b.at("x_max").get<double>(),
                           b.at("y_min").get<double>(), b.at("y_max").get<double>()};
  }
  return layout;
}

}  // namespace windfarm
