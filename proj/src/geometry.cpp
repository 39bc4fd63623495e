#include "windfarm/geometry.hpp"

#include <algorithm>

namespace windfarm {

Point Rect::clamp(Point p) const {
  return {std::clamp(p.x, x_min, x_max), std::clamp(p.y, y_min, y_max)};
}

Rect Rect::centered(double width_m, double height_m) {
  return {-0.5 * width_m, 0.5 * width_m, -0.5 * height_m, 0.5 * height_m};
}

Rect bounding_box(std::span<const Point> points) {
  if (points.empty()) return {};
  Rect r{points[0].x, points[0].x, points[0].y, points[0].y};
  for (const auto& p : points.subspan(1)) {
    r.x_min = std::min(r.x_min, p.x);
    r.x_max = std::max(r.x_max, p.x);
    r.y_min = std::min(r.y_min, p.y);
    r.y_max = std::max(r.y_max, p.y);
  }
  return r;
}

}  // namespace windfarm
