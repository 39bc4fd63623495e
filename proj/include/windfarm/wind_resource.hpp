#pragma once

// Wind observations, log-law height extrapolation, and the discretised
// direction/speed probability model used for energy yield.

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace windfarm {

struct WindSample {
  std::chrono::sys_seconds timestamp{};
  double speed = 0.0;               // m/s at measurement height
  double direction = 0.0;           // degrees, meteorological (wind-from), [0, 360)
  double measurement_height = 0.0;  // m above surface

  bool valid() const;
};

struct SurfaceRoughness {
  double z0 = 0.0002;  // roughness length, m

  static constexpr SurfaceRoughness offshore() { return {0.0002}; }
  static constexpr SurfaceRoughness onshore() { return {0.03}; }
};

enum class ObservationFormat { ndbc, ncei, generic_csv };

ObservationFormat parse_format(std::string_view name);
std::string_view to_string(ObservationFormat format);

/// Column mapping for NCEI hourly CSV exports. Defaults follow the Local
/// Climatological Data layout (wind speed in mph).
struct NceiColumnMap {
  std::string timestamp_column = "DATE";
  std::string speed_column = "HourlyWindSpeed";
  std::string direction_column = "HourlyWindDirection";
  double speed_scale = 0.44704;  // to m/s
  std::vector<std::string> missing_tokens = {"", "VRB", "M", "999", "9999"};

  static NceiColumnMap from_json(const nlohmann::json& j);
};

struct ObservationSet {
  std::vector<WindSample> samples;
  std::size_t dropped_rows = 0;  // sentinel, missing or out-of-range rows
};

/// Parses raw observation text. Throws ParseError (with line number) on a
/// malformed header or row and EmptyDatasetError if nothing survives.
/// For generic CSV the per-row height column wins over measurement_height.
ObservationSet parse_observations(std::string_view raw_text, ObservationFormat format,
                                  double measurement_height,
                                  const NceiColumnMap& ncei_map = {});

/// Logarithmic wind profile: v(h2) = v(h1) ln(h2/z0) / ln(h1/z0).
double extrapolate_speed(double v_h1, double h1, double h2, double z0);

/// Multiplier that carries a speed from h_from to h_to under the log law.
double shear_factor(double h_from, double h_to, double z0);

enum class ProbabilityMode { product_of_marginals, joint };

/// Direction-sector x speed-bin probability table at a reference height.
///
/// Sector s is centred on s * sector_width degrees and spans half a width
/// either side. speed_bin_edges has one more entry than there are bins; the
/// last bin is open-ended and its representative speed is the midpoint of its
/// nominal edges.
struct WindDistribution {
  double reference_height = 80.0;
  int sector_count = 12;
  std::vector<double> speed_bin_edges;
  std::vector<double> p_theta;
  std::vector<double> p_u;
  std::vector<double> joint;  // row-major [sector][bin]
  ProbabilityMode mode = ProbabilityMode::product_of_marginals;

  std::size_t bin_count() const { return p_u.size(); }
  double sector_width() const { return 360.0 / sector_count; }
  double sector_direction(std::size_t sector) const { return sector * sector_width(); }
  double bin_speed(std::size_t bin) const {
    return 0.5 * (speed_bin_edges[bin] + speed_bin_edges[bin + 1]);
  }
  double joint_at(std::size_t sector, std::size_t bin) const {
    return joint[sector * bin_count() + bin];
  }

  /// Weight of (sector, bin) under the active mode.
  double probability(std::size_t sector, std::size_t bin) const;

  /// Sector index containing a wind-from direction.
  std::size_t sector_of(double direction_deg) const;
  /// Speed bin containing a speed; the top bin absorbs everything above.
  std::size_t bin_of(double speed) const;

  /// Throws DomainError when normalisation, sign or edge ordering fails.
  void validate() const;

  /// Equal-width bins from 0 to max_speed with all probabilities zero.
  static WindDistribution empty(int sector_count, double speed_bin_width,
                                double reference_height, double max_speed = 40.0);

  /// Fills the joint table from marginals (independent direction and speed).
  static WindDistribution from_marginals(std::vector<double> p_theta, std::vector<double> p_u,
                                         double speed_bin_width = 1.0,
                                         double reference_height = 80.0);
};

struct BinningOptions {
  int sector_count = 12;
  double speed_bin_width = 1.0;
  double reference_height = 80.0;
  double max_speed = 40.0;
  ProbabilityMode mode = ProbabilityMode::product_of_marginals;
};

/// Relative-frequency table of samples after extrapolating each speed to the
/// reference height.
WindDistribution build_distribution(std::span<const WindSample> samples,
                                    const BinningOptions& options, SurfaceRoughness roughness);

WindDistribution build_distribution(std::span<const WindSample> samples, int sector_count,
                                    double speed_bin_width, double reference_height,
                                    SurfaceRoughness roughness);

/// Probability-weighted mean of bin midpoints.
double mean_speed(const WindDistribution& dist);

/// Sector indices ordered by decreasing p_theta (ties by index).
std::vector<std::size_t> dominant_sectors(const WindDistribution& dist);

void to_json(nlohmann::json& j, const WindDistribution& dist);
void from_json(const nlohmann::json& j, WindDistribution& dist);

}  // namespace windfarm
