#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace windfarm {

struct TurbineSpec {
  std::string name;
  double rated_power = 0.0;     // MW
  double hub_height = 0.0;      // m
  double rotor_diameter = 0.0;  // m
  double cp = 0.45;
  double ct = 0.80;
  double cut_in = 3.0;     // m/s
  double cut_out = 31.5;   // m/s
  double air_density = 1.225;  // kg/m^3

  double rated_power_w() const { return rated_power * 1e6; }
  double rotor_radius() const { return 0.5 * rotor_diameter; }

  /// Throws DomainError if any field is out of range.
  void validate() const;
};

/// Swept rotor area, m^2.
double swept_area(const TurbineSpec& spec);

/// Power carried through the rotor at speed v, 0.5 rho A v^3 Cp, in W.
double available_power(double v, const TurbineSpec& spec);

/// Power-curve output in W: zero outside (cut_in, cut_out), otherwise the
/// available power clamped to the rating.
double electrical_power(double v, const TurbineSpec& spec);

struct ActuatorCoefficients {
  double ct = 0.0;
  double cp = 0.0;
};

/// Ideal actuator-disc thrust and power coefficients for induction alpha in (0, 0.5).
ActuatorCoefficients actuator_coefficients(double alpha);

/// Rotor diameter giving the requested specific power (W/m^2) at rating.
double rotor_diameter_for(double rated_mw, double specific_power = 350.0);

enum class HubHeightProfile { case1_six_heights, case2_two_heights, case3_single_height, custom };

HubHeightProfile parse_hub_profile(std::string_view name);
std::string_view to_string(HubHeightProfile profile);

class TurbineCatalog {
 public:
  TurbineCatalog() = default;
  TurbineCatalog(std::vector<TurbineSpec> specs, HubHeightProfile profile);

  /// The six-capacity offshore catalog (8, 11, 14, 16, 18, 22 MW) with hub
  /// heights assigned by the given profile.
  static TurbineCatalog standard(HubHeightProfile profile = HubHeightProfile::case1_six_heights);

  /// Same specs with hub heights reassigned; custom keeps the current heights.
  TurbineCatalog with_profile(HubHeightProfile profile) const;

  std::size_t size() const { return specs_.size(); }
  bool empty() const { return specs_.empty(); }
  const TurbineSpec& operator[](std::size_t i) const { return specs_.at(i); }
  const std::vector<TurbineSpec>& specs() const { return specs_; }
  HubHeightProfile profile() const { return profile_; }
  double max_rotor_diameter() const;

  /// Index of the spec with this name; throws Error if absent.
  std::size_t index_of(std::string_view name) const;

 private:
  std::vector<TurbineSpec> specs_;
  HubHeightProfile profile_ = HubHeightProfile::custom;
};

/// Hub height that a profile assigns to a capacity. Only defined for the
/// standard capacities under the fixed cases.
double profile_hub_height(HubHeightProfile profile, double rated_mw);

void to_json(nlohmann::json& j, const TurbineSpec& spec);
void from_json(const nlohmann::json& j, TurbineSpec& spec);
void to_json(nlohmann::json& j, const TurbineCatalog& catalog);
/// Accepts either a bare array of specs or {"profile": ..., "turbines": [...]}.
TurbineCatalog catalog_from_json(const nlohmann::json& j);

}  // namespace windfarm
