#include "windfarm/turbine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "windfarm/error.hpp"
#include "windfarm/geometry.hpp"

namespace windfarm {

namespace {

struct StandardEntry {
  double rated_mw;
  double case1_hub;
};

constexpr std::array<StandardEntry, 6> kStandard = {{
    {8.0, 90.0}, {11.0, 110.0}, {14.0, 125.0}, {16.0, 150.0}, {18.0, 160.0}, {22.0, 320.0},
}};

}  // namespace

void TurbineSpec::validate() const {
  if (!(rated_power > 0.0)) throw DomainError(name + ": rated power must be positive");
  if (!(cp > 0.0 && cp < 1.0)) throw DomainError(name + ": cp must lie in (0, 1)");
  if (!(ct > 0.0 && ct < 1.0)) throw DomainError(name + ": ct must lie in (0, 1)");
  if (!(cut_in > 0.0 && cut_in < cut_out))
    throw DomainError(name + ": need 0 < cut_in < cut_out");
  if (!(rotor_diameter > 0.0)) throw DomainError(name + ": rotor diameter must be positive");
  if (!(hub_height > 0.5 * rotor_diameter))
    throw DomainError(name + ": hub height must exceed the rotor radius");
  if (!(air_density > 0.0)) throw DomainError(name + ": air density must be positive");
}

double swept_area(const TurbineSpec& spec) {
  const double r = spec.rotor_radius();
  return kPi * r * r;
}

double available_power(double v, const TurbineSpec& spec) {
  return 0.5 * spec.air_density * swept_area(spec) * v * v * v * spec.cp;
}

double electrical_power(double v, const TurbineSpec& spec) {
  if (v <= spec.cut_in || v >= spec.cut_out) return 0.0;
  return std::min(available_power(v, spec), spec.rated_power_w());
}

ActuatorCoefficients actuator_coefficients(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw DomainError("axial induction factor must lie in (0, 0.5)");
  const double ct = 4.0 * alpha * (1.0 - alpha);
  return {ct, ct * (1.0 - alpha)};
}

double rotor_diameter_for(double rated_mw, double specific_power) {
  const double area = rated_mw * 1e6 / specific_power;
  return 2.0 * std::sqrt(area / kPi);
}

HubHeightProfile parse_hub_profile(std::string_view name) {
  if (name == "case1" || name == "1" || name == "case1_six_heights")
    return HubHeightProfile::case1_six_heights;
  if (name == "case2" || name == "2" || name == "case2_two_heights")
    return HubHeightProfile::case2_two_heights;
  if (name == "case3" || name == "3" || name == "case3_single_height")
    return HubHeightProfile::case3_single_height;
  if (name == "custom") return HubHeightProfile::custom;
  throw Error("unknown hub-height profile '" + std::string(name) + "'");
}

std::string_view to_string(HubHeightProfile profile) {
  switch (profile) {
    case HubHeightProfile::case1_six_heights: return "case1";
    case HubHeightProfile::case2_two_heights: return "case2";
    case HubHeightProfile::case3_single_height: return "case3";
    case HubHeightProfile::custom: return "custom";
  }
  return "?";
}

double profile_hub_height(HubHeightProfile profile, double rated_mw) {
  switch (profile) {
    case HubHeightProfile::case1_six_heights:
      for (const auto& e : kStandard)
        if (e.rated_mw == rated_mw) return e.case1_hub;
      break;
    case HubHeightProfile::case2_two_heights:
      return rated_mw <= 14.0 ? 125.0 : 320.0;
    case HubHeightProfile::case3_single_height:
      return 320.0;
    case HubHeightProfile::custom:
      break;
  }
  throw DomainError("no profile hub height for a " + std::to_string(rated_mw) + " MW turbine");
}

TurbineCatalog::TurbineCatalog(std::vector<TurbineSpec> specs, HubHeightProfile profile)
    : specs_(std::move(specs)), profile_(profile) {
  std::set<std::string> names;
  for (const auto& s : specs_) {
    s.validate();
    if (!names.insert(s.name).second) throw DomainError("duplicate turbine name " + s.name);
  }
}

TurbineCatalog TurbineCatalog::standard(HubHeightProfile profile) {
  std::vector<TurbineSpec> specs;
  for (const auto& e : kStandard) {
    TurbineSpec s;
    s.name = std::to_string(static_cast<int>(e.rated_mw)) + "MW";
    s.rated_power = e.rated_mw;
    s.rotor_diameter = rotor_diameter_for(e.rated_mw);
    s.hub_height = e.case1_hub;
    specs.push_back(std::move(s));
  }
  return TurbineCatalog(std::move(specs), HubHeightProfile::case1_six_heights).with_profile(profile);
}

TurbineCatalog TurbineCatalog::with_profile(HubHeightProfile profile) const {
  if (profile == HubHeightProfile::custom) return TurbineCatalog(specs_, HubHeightProfile::custom);
  auto specs = specs_;
  for (auto& s : specs) s.hub_height = profile_hub_height(profile, s.rated_power);
  return TurbineCatalog(std::move(specs), profile);
}

double TurbineCatalog::max_rotor_diameter() const {
  double d = 0.0;
  for (const auto& s : specs_) d = std::max(d, s.rotor_diameter);
  return d;
}

std::size_t TurbineCatalog::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < specs_.size(); ++i)
    if (specs_[i].name == name) return i;
  throw Error("no turbine named '" + std::string(name) + "' in catalog");
}

void to_json(nlohmann::json& j, const TurbineSpec& spec) {
  j = nlohmann::json{{"name", spec.name},         {"rated_power_mw", spec.rated_power},
                     {"hub_height_m", spec.hub_height}, {"rotor_diameter_m", spec.rotor_diameter},
                     {"cp", spec.cp},             {"ct", spec.ct},
                     {"cut_in_mps", spec.cut_in}, {"cut_out_mps", spec.cut_out},
                     {"air_density", spec.air_density}};
}

void from_json(const nlohmann::json& j, TurbineSpec& spec) {
  spec.name = j.at("name").get<std::string>();
  spec.rated_power = j.at("rated_power_mw").get<double>();
  spec.hub_height = j.at("hub_height_m").get<double>();
  spec.rotor_diameter = j.contains("rotor_diameter_m") ? j.at("rotor_diameter_m").get<double>()
                                                       : rotor_diameter_for(spec.rated_power);
  spec.cp = j.value("cp", spec.cp);
  spec.ct = j.value("ct", spec.ct);
  spec.cut_in = j.value("cut_in_mps", spec.cut_in);
  spec.cut_out = j.value("cut_out_mps", spec.cut_out);
  spec.air_density = j.value("air_density", spec.air_density);
  spec.validate();
}

void to_json(nlohmann::json& j, const TurbineCatalog& catalog) {
  j = nlohmann::json{{"profile", to_string(catalog.profile())}, {"turbines", catalog.specs()}};
}

TurbineCatalog catalog_from_json(const nlohmann::json& j) {
  if (j.is_array()) return TurbineCatalog(j.get<std::vector<TurbineSpec>>(), HubHeightProfile::custom);
  return TurbineCatalog(j.at("turbines").get<std::vector<TurbineSpec>>(),
                        parse_hub_profile(j.value("profile", std::string("custom"))));
}

}  // namespace windfarm
