#pragma once

// Static SVG renders: farm layouts, wind roses and simple line charts.
// Layout drawings use metres as user units (y flipped so north is up).

#include <string>
#include <vector>

#include "windfarm/economics.hpp"

namespace windfarm {

struct LayoutRenderOptions {
  std::size_t cone_sectors = 2;   // most frequent sectors get wake cones
  bool draw_boundary = true;
  std::string title;
};

/// Turbine markers (radius grows with capacity), substation, MST cables,
/// boundary, scale bar and wake cones. A cone is drawn for an upstream turbine
/// only when its wake reaches another rotor in that sector; its half-width at
/// downwind distance x is wake_radius(x). The first sector is red, the second
/// blue.
std::string render_layout_svg(const FarmLayout& layout, const SiteModel& site,
                              const LayoutRenderOptions& options = {});

/// Polar histogram of direction frequencies. Sector s is centred on
/// s * 360 / p_theta.size() degrees from north, clockwise.
std::string render_wind_rose_svg(const std::vector<double>& p_theta, const std::string& title);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string render_line_chart_svg(const std::string& title, const std::string& x_label,
                                  const std::string& y_label, const std::vector<Series>& series);

}  // namespace windfarm
