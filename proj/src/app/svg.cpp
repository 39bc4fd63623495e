#include "windfarm/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "windfarm/cable.hpp"

namespace windfarm {

namespace {

std::string num(double v) {
  if (std::abs(v) < 5e-4) v = 0.0;  // no "-0.000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Round number of metres near a fifth of the span.
double nice_length(double span) {
  const double target = span / 5.0;
  const double p = std::pow(10.0, std::floor(std::log10(target)));
  for (double m : {1.0, 2.0, 5.0})
    if (m * p >= target) return m * p;
  return 10.0 * p;
}

}  // namespace

std::string render_layout_svg(const FarmLayout& layout, const SiteModel& site,
                              const LayoutRenderOptions& options) {
  const auto points = layout.all_positions();
  Rect view = bounding_box(points);
  if (options.draw_boundary && layout.boundary) {
    view.x_min = std::min(view.x_min, layout.boundary->x_min);
    view.x_max = std::max(view.x_max, layout.boundary->x_max);
    view.y_min = std::min(view.y_min, layout.boundary->y_min);
    view.y_max = std::max(view.y_max, layout.boundary->y_max);
  }
  const double span = std::max({view.width(), view.height(), 4.0 * site.catalog.max_rotor_diameter()});
  const double pad = 0.08 * span;
  const double vx = view.x_min - pad;
  const double vy = -view.y_max - pad;
  const double vw = std::max(view.width(), 1.0) + 2 * pad;
  const double vh = std::max(view.height(), 1.0) + 2 * pad;
  const double stroke = span / 600.0;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\""
     << num(800.0 * vh / vw) << "\" viewBox=\"" << num(vx) << ' ' << num(vy) << ' ' << num(vw)
     << ' ' << num(vh) << "\">\n";
  if (!options.title.empty()) os << "<title>" << escape(options.title) << "</title>\n";
  os << "<rect class=\"background\" x=\"" << num(vx) << "\" y=\"" << num(vy) << "\" width=\""
     << num(vw) << "\" height=\"" << num(vh) << "\" fill=\"white\"/>\n";

  if (options.draw_boundary && layout.boundary) {
    const auto& b = *layout.boundary;
    os << "<rect class=\"boundary\" x=\"" << num(b.x_min) << "\" y=\"" << num(-b.y_max)
       << "\" width=\"" << num(b.width()) << "\" height=\"" << num(b.height())
       << "\" fill=\"none\" stroke=\"#555\" stroke-dasharray=\"" << num(6 * stroke) << "\" stroke-width=\""
       << num(stroke) << "\"/>\n";
  }

  // Wake cones.
  const auto rotors = layout_rotors(layout, site.catalog);
  const auto order = dominant_sectors(site.wind);
  const double k = site.wake.expansion();
  const char* colours[] = {"#d62728", "#1f77b4"};
  const char* ranks[] = {"primary", "secondary"};
  os << "<g class=\"wake-cones\">\n";
  for (std::size_t r = 0; r < std::min<std::size_t>({options.cone_sectors, order.size(), 2}); ++r) {
    const std::size_t sector = order[r];
    if (site.wind.p_theta[sector] <= 0.0) continue;
    const double theta = site.wind.sector_direction(sector);
    const auto deficits = compute_deficits(rotors, theta, site.wake);
    const Point dw = downwind_axis(theta);
    const Point cw{-dw.y, dw.x};
    for (std::size_t i = 0; i < rotors.size(); ++i) {
      double reach = 0.0;
      for (std::size_t j = 0; j < rotors.size(); ++j)
        if (deficits(i, j) > 0.0) {
          const double x = (rotors[j].hub.x - rotors[i].hub.x) * dw.x +
                           (rotors[j].hub.y - rotors[i].hub.y) * dw.y;
          reach = std::max(reach, x);
        }
      if (reach <= 0.0) continue;
      const double D = rotors[i].diameter;
      const double r0 = wake_radius(0.0, D, k);
      const double r1 = wake_radius(reach, D, k);
      const Point o{rotors[i].hub.x, rotors[i].hub.y};
      const Point e{o.x + dw.x * reach, o.y + dw.y * reach};
      const Point c[4] = {{o.x + cw.x * r0, o.y + cw.y * r0},
                          {e.x + cw.x * r1, e.y + cw.y * r1},
                          {e.x - cw.x * r1, e.y - cw.y * r1},
                          {o.x - cw.x * r0, o.y - cw.y * r0}};
      os << "<path class=\"wake-cone " << ranks[r] << "\" data-turbine=\"" << i
         << "\" data-direction=\"" << num(theta) << "\" d=\"M " << num(c[0].x) << ' '
         << num(-c[0].y);
      for (int q = 1; q < 4; ++q) os << " L " << num(c[q].x) << ' ' << num(-c[q].y);
      os << " Z\" fill=\"" << colours[r] << "\" fill-opacity=\"0.18\" stroke=\"" << colours[r]
         << "\" stroke-width=\"" << num(0.5 * stroke) << "\"/>\n";
    }
  }
  os << "</g>\n";

  // Cables.
  const auto tree = minimum_spanning_tree(points);
  os << "<g class=\"cables\">\n";
  for (const auto& [a, b] : tree.edges)
    os << "<line class=\"cable\" x1=\"" << num(points[a].x) << "\" y1=\"" << num(-points[a].y)
       << "\" x2=\"" << num(points[b].x) << "\" y2=\"" << num(-points[b].y)
       << "\" stroke=\"#2ca02c\" stroke-width=\"" << num(1.5 * stroke) << "\"/>\n";
  os << "</g>\n";

  // Turbines: radius scales with the square root of capacity.
  const double base = span / 140.0;
  os << "<g class=\"turbines\">\n";
  for (std::size_t i = 0; i < layout.turbines.size(); ++i) {
    const auto& t = layout.turbines[i];
    const auto& spec = site.catalog[t.spec];
    const double radius = base * std::sqrt(spec.rated_power / 8.0);
    os << "<circle class=\"turbine\" data-index=\"" << i << "\" data-spec=\"" << escape(spec.name)
       << "\" data-hub-height=\"" << num(spec.hub_height) << "\" cx=\"" << num(t.position.x)
       << "\" cy=\"" << num(-t.position.y) << "\" r=\"" << num(radius)
       << "\" fill=\"#333\" stroke=\"white\" stroke-width=\"" << num(0.5 * stroke) << "\"><title>"
       << escape(spec.name) << " @ " << num(spec.hub_height) << " m</title></circle>\n";
  }
  os << "</g>\n";

  const double s = 1.6 * base;
  os << "<rect class=\"substation\" x=\"" << num(layout.substation.x - s / 2) << "\" y=\""
     << num(-layout.substation.y - s / 2) << "\" width=\"" << num(s) << "\" height=\"" << num(s)
     << "\" fill=\"#ff7f0e\"/>\n";

  // Scale bar, bottom left.
  const double bar = nice_length(span);
  const double bx = vx + 0.5 * pad;
  const double by = vy + vh - 0.4 * pad;
  os << "<g class=\"scale-bar\"><line x1=\"" << num(bx) << "\" y1=\"" << num(by) << "\" x2=\""
     << num(bx + bar) << "\" y2=\"" << num(by) << "\" stroke=\"black\" stroke-width=\""
     << num(2 * stroke) << "\"/><text x=\"" << num(bx) << "\" y=\"" << num(by - 3 * stroke)
     << "\" font-size=\"" << num(span / 40.0) << "\">"
     << (bar >= 1000.0 ? num(bar / 1000.0) + " km" : num(bar) + " m") << "</text></g>\n";
  os << "</svg>\n";
  return os.str();
}

std::string render_wind_rose_svg(const std::vector<double>& p_theta, const std::string& title) {
  const double size = 400.0;
  const double c = size / 2.0;
  const double r_max = 0.42 * size;
  const double p_max = p_theta.empty() ? 0.0 : *std::max_element(p_theta.begin(), p_theta.end());
  const double n = static_cast<double>(p_theta.size());

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n<title>" << escape(title) << "</title>\n";
  os << "<rect width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
  for (double ring : {0.25, 0.5, 0.75, 1.0})
    os << "<circle class=\"rose-grid\" cx=\"" << c << "\" cy=\"" << c << "\" r=\""
       << num(ring * r_max) << "\" fill=\"none\" stroke=\"#ccc\"/>\n";
  for (std::size_t s = 0; s < p_theta.size(); ++s) {
    if (p_max <= 0.0 || p_theta[s] <= 0.0) continue;
    const double r = r_max * p_theta[s] / p_max;
    const double a0 = deg_to_rad((static_cast<double>(s) - 0.5) * 360.0 / n);
    const double a1 = deg_to_rad((static_cast<double>(s) + 0.5) * 360.0 / n);
    os << "<path class=\"rose-sector\" data-sector=\"" << s << "\" data-probability=\""
       << p_theta[s] << "\" d=\"M " << c << ' ' << c << " L " << num(c + r * std::sin(a0)) << ' '
       << num(c - r * std::cos(a0)) << " A " << num(r) << ' ' << num(r) << " 0 0 1 "
       << num(c + r * std::sin(a1)) << ' ' << num(c - r * std::cos(a1))
       << " Z\" fill=\"#1f77b4\" fill-opacity=\"0.7\" stroke=\"white\"/>\n";
  }
  const char* labels[] = {"N", "E", "S", "W"};
  for (int q = 0; q < 4; ++q) {
    const double a = deg_to_rad(90.0 * q);
    os << "<text x=\"" << num(c + (r_max + 12) * std::sin(a)) << "\" y=\""
       << num(c - (r_max + 12) * std::cos(a) + 4) << "\" text-anchor=\"middle\" font-size=\"12\">"
       << labels[q] << "</text>\n";
  }
  os << "<text x=\"8\" y=\"16\" font-size=\"12\">max " << num(100.0 * p_max) << "%</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string render_line_chart_svg(const std::string& title, const std::string& x_label,
                                  const std::string& y_label, const std::vector<Series>& series) {
  const double w = 640, h = 400, left = 70, right = 20, top = 40, bottom = 50;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool first = true;
  for (const auto& s : series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (first) {
        x0 = x1 = s.x[i];
        y0 = y1 = s.y[i];
        first = false;
      }
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (x1 == x0) { x0 -= 1; x1 += 1; }
  if (y1 == y0) { y0 -= 1; y1 += 1; }
  const double ypad = 0.05 * (y1 - y0);
  y0 -= ypad;
  y1 += ypad;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (w - left - right); };
  auto py = [&](double y) { return h - bottom - (y - y0) / (y1 - y0) * (h - top - bottom); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n<rect width=\"" << w << "\" height=\"" << h
     << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
     << escape(title) << "</text>\n";
  os << "<line class=\"axis\" x1=\"" << left << "\" y1=\"" << h - bottom << "\" x2=\"" << w - right
     << "\" y2=\"" << h - bottom << "\" stroke=\"black\"/>\n";
  os << "<line class=\"axis\" x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
     << "\" y2=\"" << h - bottom << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x0 + (x1 - x0) * t / 4.0;
    const double yv = y0 + (y1 - y0) * t / 4.0;
    os << "<text x=\"" << num(px(xv)) << "\" y=\"" << h - bottom + 16
       << "\" text-anchor=\"middle\" font-size=\"11\">" << num(xv) << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << num(py(yv) + 4)
       << "\" text-anchor=\"end\" font-size=\"11\">" << num(yv) << "</text>\n";
  }
  os << "<text x=\"" << (left + w - right) / 2 << "\" y=\"" << h - 10
     << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(x_label) << "</text>\n";
  os << "<text transform=\"translate(16 " << (top + h - bottom) / 2
     << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" << escape(y_label) << "</text>\n";
  const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e"};
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* colour = colours[k % 4];
    os << "<polyline class=\"series\" data-label=\"" << escape(s.label) << "\" fill=\"none\" stroke=\""
       << colour << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
      os << (i ? " " : "") << num(px(s.x[i])) << ',' << num(py(s.y[i]));
    os << "\"/>\n";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
      os << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i]))
         << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace windfarm
