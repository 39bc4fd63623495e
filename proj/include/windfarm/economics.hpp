#pragma once

// Annual energy, revenue, annualised investment and economic benefit of a farm
// layout.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "windfarm/geometry.hpp"
#include "windfarm/turbine.hpp"
#include "windfarm/wake.hpp"
#include "windfarm/wind_resource.hpp"

namespace windfarm {

inline constexpr double kHoursPerYear = 365.0 * 24.0;

enum class WakeMode { aware, ignorant };
enum class FootprintMode { bounding_box, fixed_boundary };

std::string_view to_string(WakeMode mode);
WakeMode parse_wake_mode(std::string_view name);
std::string_view to_string(FootprintMode mode);
FootprintMode parse_footprint_mode(std::string_view name);

struct PlacedTurbine {
  Point position;
  std::size_t spec = 0;  // index into the catalog
};

struct FarmLayout {
  std::vector<PlacedTurbine> turbines;
  Point substation;
  std::optional<Rect> boundary;  // fixed site boundary, if any

  std::vector<Point> turbine_positions() const;
  /// Turbines followed by the substation.
  std::vector<Point> all_positions() const;
};

/// Throws InfeasibleError naming the violated constraint (boundary or
/// min_spacing). Spacing is min_spacing_factor times the larger rotor
/// diameter of each pair.
void validate_layout(const FarmLayout& layout, const TurbineCatalog& catalog,
                     double min_spacing_factor);

struct CostParams {
  double c_elec = 0.41;          // $/kWh
  double c_land = 5.0;           // $/m^2 per year
  double c_cable = 400.0;        // $/m
  double capex_per_mw = 4.9329e6;  // $/MW, used for specs without an entry below
  std::map<std::string, double> capex_by_spec;  // $ per turbine, keyed by spec name
  double o_and_m = 0.784e6;      // $/turbine per year
  double interest_rate = 0.05;
  int lifetime_years = 25;

  /// Capital cost of one turbine of this spec, $.
  double capex(const TurbineSpec& spec) const;
  void validate() const;

  /// Defaults with any fields present in j overriding them.
  static CostParams from_json(const nlohmann::json& j);
  static CostParams from_json(const nlohmann::json& j, CostParams base);
};

void to_json(nlohmann::json& j, const CostParams& params);

struct EvaluationReport {
  double aep = 0.0;              // GWh/yr
  double apb = 0.0;              // M$/yr
  double farm_capacity = 0.0;    // MW
  double capacity_factor = 0.0;  // fraction
  double footprint = 0.0;        // km^2
  double cable_length = 0.0;     // km
  double land_cost = 0.0;        // M$/yr
  double cable_cost = 0.0;       // M$/yr
  double turbine_cost = 0.0;     // M$/yr
  double aeb = 0.0;              // M$/yr
  std::size_t turbine_count = 0;
  std::string capacity_mix;      // e.g. "(22MW*14)+(18MW*1)"
  WakeMode wake_mode = WakeMode::aware;

  double investment() const { return land_cost + cable_cost + turbine_cost; }
};

/// Throws InvariantError if the AEB decomposition or capacity-factor range fails.
void check_report(const EvaluationReport& report);

void to_json(nlohmann::json& j, const EvaluationReport& report);
void from_json(const nlohmann::json& j, EvaluationReport& report);

/// Column order follows the published result tables.
std::string report_csv_header();
std::string report_csv_row(const EvaluationReport& report);
EvaluationReport report_from_csv_row(std::string_view row);

/// Everything a layout evaluation needs besides the layout itself.
struct SiteModel {
  TurbineCatalog catalog = TurbineCatalog::standard();
  WindDistribution wind;
  WakeParams wake = WakeParams::offshore();
  SurfaceRoughness roughness = SurfaceRoughness::offshore();
  CostParams costs;
  FootprintMode footprint = FootprintMode::bounding_box;
};

/// Total electrical output in MW for one wind direction and reference-height speed.
double farm_power(const FarmLayout& layout, const SiteModel& site, double theta_deg, double u,
                  WakeMode mode);

/// Expected yearly energy over the wind distribution, GWh/yr.
double annual_energy(const FarmLayout& layout, const SiteModel& site, WakeMode mode);

/// Revenue in M$/yr for aep in GWh/yr at c_elec $/kWh.
double production_benefit(double aep_gwh, double c_elec);

/// Annuity factor r / (1 - (1 + r)^-n).
double capital_recovery_factor(double r, int n);

/// Annual land charge in M$/yr; throws DomainError for a degenerate rectangle.
double land_cost(const Rect& boundary, double c_land);

/// O&M plus annualised capex, M$/yr.
double turbine_cost(std::span<const TurbineSpec> turbines, const CostParams& params);
double turbine_cost(const FarmLayout& layout, const TurbineCatalog& catalog,
                    const CostParams& params);

/// Annualised cable capex, M$/yr, for a length in m.
double cable_cost(double length_m, const CostParams& params);

/// aep / (rated_total * 8760 h); throws DomainError when rated_total <= 0.
double capacity_factor(double aep_gwh, double rated_total_mw);

/// Pricing pipeline shared by evaluate() and table-style fixtures where only
/// AEP, the capacity mix, footprint and cable length are known.
EvaluationReport assemble_report(double aep_gwh, std::span<const TurbineSpec> turbines,
                                 double footprint_m2, double cable_length_m,
                                 const CostParams& params, WakeMode mode);

/// Footprint area charged for land: the tight bounding box of turbines and
/// substation, or the fixed boundary in fixed_boundary mode.
double footprint_area(const FarmLayout& layout, FootprintMode mode);

EvaluationReport evaluate(const FarmLayout& layout, const SiteModel& site, WakeMode mode);

/// "(22MW*14)+(18MW*1)" style summary, largest capacity first.
std::string capacity_mix(std::span<const TurbineSpec> turbines);

std::vector<Rotor> layout_rotors(const FarmLayout& layout, const TurbineCatalog& catalog);

nlohmann::json layout_to_json(const FarmLayout& layout, const TurbineCatalog& catalog);
FarmLayout layout_from_json(const nlohmann::json& j, const TurbineCatalog& catalog);

}  // namespace windfarm
