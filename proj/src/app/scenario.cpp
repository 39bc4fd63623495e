#include "windfarm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "windfarm/error.hpp"

namespace windfarm {

namespace {

void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<std::string_view> known,
                         std::string_view where) {
  if (!j.is_object()) throw Error(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw Error("unknown key '" + key + "' in " + std::string(where));
}

std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

ResourceSpec resource_from_json(const nlohmann::json& j, const std::filesystem::path& base) {
  ResourceSpec r;
  if (j.is_string()) {
    r.path = resolve(j.get<std::string>(), base);
    return r;
  }
  reject_unknown_keys(j,
                      {"path", "format", "measurement_height_m", "sector_count", "speed_bin_width",
                       "reference_height_m", "max_speed", "mode"},
                      "resource");
  r.path = resolve(j.at("path").get<std::string>(), base);
  r.format = j.value("format", r.format);
  r.measurement_height = j.value("measurement_height_m", r.measurement_height);
  r.binning.sector_count = j.value("sector_count", r.binning.sector_count);
  r.binning.speed_bin_width = j.value("speed_bin_width", r.binning.speed_bin_width);
  r.binning.reference_height = j.value("reference_height_m", r.binning.reference_height);
  r.binning.max_speed = j.value("max_speed", r.binning.max_speed);
  if (j.contains("mode")) {
    const auto mode = j.at("mode").get<std::string>();
    if (mode == "joint") r.binning.mode = ProbabilityMode::joint;
    else if (mode == "product_of_marginals") r.binning.mode = ProbabilityMode::product_of_marginals;
    else throw Error("unknown probability mode '" + mode + "'");
  }
  return r;
}

}  // namespace

std::string_view to_string(SiteKind kind) { return kind == SiteKind::onshore ? "onshore" : "offshore"; }

SiteKind parse_site_kind(std::string_view name) {
  if (name == "offshore") return SiteKind::offshore;
  if (name == "onshore") return SiteKind::onshore;
  throw Error("unknown site kind '" + std::string(name) + "'");
}

std::string_view to_string(BoundaryMode mode) {
  switch (mode) {
    case BoundaryMode::free: return "free";
    case BoundaryMode::capped: return "capped";
    case BoundaryMode::fixed: return "fixed";
  }
  return "free";
}

BoundaryMode parse_boundary_mode(std::string_view name) {
  if (name == "free") return BoundaryMode::free;
  if (name == "capped") return BoundaryMode::capped;
  if (name == "fixed") return BoundaryMode::fixed;
  throw Error("unknown boundary mode '" + std::string(name) + "'");
}

WakeParams Scenario::wake_params() const {
  WakeParams p = kind == SiteKind::onshore ? WakeParams::onshore() : WakeParams::offshore();
  if (turbulence_intensity) p.turbulence_intensity = *turbulence_intensity;
  return p;
}

SurfaceRoughness Scenario::roughness() const {
  return kind == SiteKind::onshore ? SurfaceRoughness::onshore() : SurfaceRoughness::offshore();
}

FootprintMode Scenario::footprint_mode() const {
  return boundary == BoundaryMode::fixed ? FootprintMode::fixed_boundary : FootprintMode::bounding_box;
}

GAConfig Scenario::resolved_ga() const {
  GAConfig c = ga;
  c.turbine_count = turbine_count;
  c.bounds = bounds();
  c.fixed_boundary = boundary != BoundaryMode::free;
  return c;
}

Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  reject_unknown_keys(j,
                      {"site", "resource", "site_kind", "turbulence_intensity", "turbine_count",
                       "hub_case", "catalog", "boundary", "costs", "ga", "rng_seed", "sweep"},
                      "scenario");
  Scenario s;
  try {
    s.site = j.value("site", s.site);
    if (!j.contains("resource")) throw Error("scenario needs a 'resource'");
    s.resource = resource_from_json(j.at("resource"), base_dir);
    if (j.contains("site_kind")) s.kind = parse_site_kind(j.at("site_kind").get<std::string>());
    if (j.contains("turbulence_intensity"))
      s.turbulence_intensity = j.at("turbulence_intensity").get<double>();
    s.turbine_count = j.value("turbine_count", s.turbine_count);
    if (s.turbine_count < 1) throw Error("turbine_count must be at least 1");

    const auto profile = parse_hub_profile(j.value("hub_case", std::string("case1")));
    if (j.contains("catalog")) {
      const auto& c = j.at("catalog");
      s.catalog = c.is_string() ? catalog_from_json(nlohmann::json::parse(
                                      read_text_file(resolve(c.get<std::string>(), base_dir))))
                                : catalog_from_json(c);
      if (profile != HubHeightProfile::custom) s.catalog = s.catalog.with_profile(profile);
    } else {
      if (profile == HubHeightProfile::custom)
        throw Error("hub_case 'custom' needs a 'catalog'");
      s.catalog = TurbineCatalog::standard(profile);
    }

    if (j.contains("boundary")) {
      const auto& b = j.at("boundary");
      reject_unknown_keys(b, {"mode", "width_m", "height_m", "area_km2"}, "boundary");
      s.boundary = parse_boundary_mode(b.value("mode", std::string("free")));
      if (b.contains("area_km2")) {
        if (b.contains("width_m") || b.contains("height_m"))
          throw Error("boundary takes either area_km2 or width_m/height_m");
        const double side = std::sqrt(b.at("area_km2").get<double>() * 1e6);
        s.boundary_width = s.boundary_height = side;
      } else {
        s.boundary_width = b.value("width_m", s.boundary_width);
        s.boundary_height = b.value("height_m", s.boundary_height);
      }
      if (!(s.boundary_width > 0.0 && s.boundary_height > 0.0))
        throw Error("boundary dimensions must be positive");
    }

    if (j.contains("costs")) {
      reject_unknown_keys(j.at("costs"),
                          {"c_elec_usd_per_kwh", "c_land_usd_per_m2_yr", "c_cable_usd_per_m",
                           "capex_usd_per_mw", "capex_usd_by_spec", "o_and_m_usd_per_turbine_yr",
                           "interest_rate", "lifetime_years"},
                          "costs");
      s.costs = CostParams::from_json(j.at("costs"));
    }
    if (j.contains("ga")) {
      reject_unknown_keys(j.at("ga"),
                          {"population_size", "generations", "crossover_rate", "mutation_rate",
                           "sigma_start_m", "sigma_end_m", "tournament_size", "elite_count",
                           "min_spacing_factor", "repair_iterations", "placement_attempts",
                           "wake_mode"},
                          "ga");
      s.ga = GAConfig::from_json(j.at("ga"));
    }
    s.ga.rng_seed = j.value("rng_seed", s.ga.rng_seed);
    if (j.contains("sweep")) {
      reject_unknown_keys(j.at("sweep"), {"turbine_counts"}, "sweep");
      s.sweep_counts = j.at("sweep").at("turbine_counts").get<std::vector<std::size_t>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("scenario: ") + e.what());
  }
  s.resolved_ga().validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(path.string() + ": " + e.what());
  }
  return scenario_from_json(j, path.parent_path());
}

nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json resource{{"path", s.resource.path.generic_string()},
                          {"format", s.resource.format},
                          {"sector_count", s.resource.binning.sector_count},
                          {"speed_bin_width", s.resource.binning.speed_bin_width},
                          {"reference_height_m", s.resource.binning.reference_height}};
  if (s.resource.format != "distribution")
    resource["measurement_height_m"] = s.resource.measurement_height;
  nlohmann::json ga = s.resolved_ga();
  return nlohmann::json{
      {"site", s.site},
      {"resource", std::move(resource)},
      {"site_kind", to_string(s.kind)},
      {"turbulence_intensity", s.wake_params().turbulence_intensity},
      {"surface_roughness_m", s.roughness().z0},
      {"turbine_count", s.turbine_count},
      {"hub_case", to_string(s.catalog.profile())},
      {"catalog", s.catalog},
      {"boundary",
       {{"mode", to_string(s.boundary)},
        {"width_m", s.boundary_width},
        {"height_m", s.boundary_height},
        {"footprint", to_string(s.footprint_mode())}}},
      {"costs", s.costs},
      {"ga", std::move(ga)},
      {"rng_seed", s.ga.rng_seed},
  };
}

WindDistribution load_distribution(const ResourceSpec& resource, SurfaceRoughness roughness) {
  const auto text = read_text_file(resource.path);
  if (resource.format == "distribution") {
    try {
      return nlohmann::json::parse(text).get<WindDistribution>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(resource.path.string() + ": " + e.what());
    }
  }
  const auto obs = parse_observations(text, parse_format(resource.format), resource.measurement_height);
  return build_distribution(obs.samples, resource.binning, roughness);
}

SiteModel load_site(const Scenario& s) {
  SiteModel site;
  site.catalog = s.catalog;
  site.wind = load_distribution(s.resource, s.roughness());
  site.wake = s.wake_params();
  site.roughness = s.roughness();
  site.costs = s.costs;
  site.footprint = s.footprint_mode();
  return site;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace windfarm
