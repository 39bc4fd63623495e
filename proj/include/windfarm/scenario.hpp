#pragma once

// Scenario files: one JSON document pins the site, resource, catalog, costs
// and GA settings of a run. Every resolved value is echoed into results.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "windfarm/economics.hpp"
#include "windfarm/optimizer.hpp"

namespace windfarm {

enum class SiteKind { offshore, onshore };

std::string_view to_string(SiteKind kind);
SiteKind parse_site_kind(std::string_view name);

// free:   generous search box, land charged on the bounding box
// capped: box is a hard boundary, land still charged on the bounding box
// fixed:  box is a hard boundary and the whole box is charged
enum class BoundaryMode { free, capped, fixed };

std::string_view to_string(BoundaryMode mode);
BoundaryMode parse_boundary_mode(std::string_view name);

struct ResourceSpec {
  std::filesystem::path path;
  std::string format = "distribution";  // or ndbc, ncei, generic_csv
  double measurement_height = 4.1;      // m, raw observation files only
  BinningOptions binning;
};

struct Scenario {
  std::string site = "site";
  ResourceSpec resource;
  SiteKind kind = SiteKind::offshore;
  std::optional<double> turbulence_intensity;
  std::size_t turbine_count = 15;
  TurbineCatalog catalog = TurbineCatalog::standard();
  BoundaryMode boundary = BoundaryMode::free;
  double boundary_width = 20000.0;   // m
  double boundary_height = 20000.0;  // m
  CostParams costs;
  GAConfig ga;
  std::vector<std::size_t> sweep_counts{5, 10, 15, 20, 25, 30};

  WakeParams wake_params() const;
  SurfaceRoughness roughness() const;
  Rect bounds() const { return Rect::centered(boundary_width, boundary_height); }
  FootprintMode footprint_mode() const;

  /// GA settings with turbine count, bounds and boundary flag applied.
  GAConfig resolved_ga() const;
};

/// Reads a scenario file. Relative resource and catalog paths resolve
/// against the scenario's directory. Throws Error subclasses on bad input.
Scenario load_scenario(const std::filesystem::path& path);
Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);

/// Full echo of resolved values.
nlohmann::json scenario_to_json(const Scenario& scenario);

/// Loads the resource and assembles the evaluation context.
SiteModel load_site(const Scenario& scenario);

WindDistribution load_distribution(const ResourceSpec& resource, SurfaceRoughness roughness);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace windfarm
