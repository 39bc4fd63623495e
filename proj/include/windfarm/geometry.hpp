#pragma once

#include <cmath>
#include <span>

namespace windfarm {

inline constexpr double kPi = 3.14159265358979323846;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline double distance(Point a, Point b) { return std::hypot(b.x - a.x, b.y - a.y); }

/// Axis-aligned rectangle in site coordinates (m).
struct Rect {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
  double diagonal() const { return std::hypot(width(), height()); }
  bool contains(Point p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  Point clamp(Point p) const;

  /// Rectangle of the given size centred on the origin.
  static Rect centered(double width_m, double height_m);

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Tight bounding box; empty input gives a zero rectangle at the origin.
Rect bounding_box(std::span<const Point> points);

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }

}  // namespace windfarm
