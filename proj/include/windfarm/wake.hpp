#pragma once

// Jensen top-hat wakes with hub-height-aware rotor overlap and root-sum-square
// superposition.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "windfarm/geometry.hpp"

namespace windfarm {

/// Wake expansion rate from ambient turbulence intensity: k = 0.38 I + 0.004.
double expansion_coefficient(double turbulence_intensity);

struct WakeParams {
  double turbulence_intensity = 0.075;

  double expansion() const { return expansion_coefficient(turbulence_intensity); }

  static constexpr WakeParams offshore() { return {0.075}; }
  static constexpr WakeParams onshore() { return {0.15}; }
};

/// Coordinates in the wind-aligned frame: x downwind, y crosswind, z up.
struct WindFramePosition {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Unit vector the wind blows toward for a wind-from direction (degrees,
/// clockwise from north; site x east, y north).
Point downwind_axis(double theta_deg);

/// Rotates site coordinates into the wind frame. Distances and z are preserved.
std::vector<WindFramePosition> rotate_to_wind_frame(std::span<const Point3> positions,
                                                    double theta_deg);

/// Centreline velocity deficit at distance x behind a rotor of diameter d_upstream.
double centerline_deficit(double x, double ct, double k, double d_upstream);

/// Wake radius, linear in downstream distance.
double wake_radius(double x, double d_upstream, double k);

/// Distance between the wake axis and a downstream rotor centre.
double center_distance(double y_ij, double z_i, double z_j);

/// Area shared by a rotor disc and a wake disc whose centres are d apart.
double overlap_area(double r_rotor, double r_wake, double d);

/// overlap_area over the rotor disc area, in [0, 1].
double overlap_fraction(double r_rotor, double r_wake, double d);

/// Rotor as seen by the wake model: hub position plus the two properties the
/// deficit depends on.
struct Rotor {
  Point3 hub;
  double diameter = 0.0;
  double ct = 0.0;
};

struct FrameRotor {
  WindFramePosition pos;
  double diameter = 0.0;
  double ct = 0.0;
};

/// Deficit turbine i casts on turbine j; zero unless j is strictly downwind.
double pair_deficit(const FrameRotor& upstream, const FrameRotor& downstream, double k);

/// Ordered-pair deficits and their per-turbine root-sum-square.
class DeficitMatrix {
 public:
  DeficitMatrix() = default;
  explicit DeficitMatrix(std::size_t n) : n_(n), pair_(n * n, 0.0), combined_(n, 0.0) {}

  std::size_t size() const { return n_; }
  /// delta_ij, i upstream, j downstream.
  double operator()(std::size_t i, std::size_t j) const { return pair_[i * n_ + j]; }
  double combined(std::size_t j) const { return combined_[j]; }
  const std::vector<double>& combined() const { return combined_; }

  void set(std::size_t i, std::size_t j, double delta) { pair_[i * n_ + j] = delta; }
  /// Recomputes combined deficits from the pair table in index order.
  void superpose();

  /// Rows "upstream,downstream,delta,combined_downstream" for non-zero pairs.
  std::string to_csv() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> pair_;
  std::vector<double> combined_;
};

/// Deficits for every ordered pair for one wind direction.
DeficitMatrix compute_deficits(std::span<const Rotor> rotors, double theta_deg,
                               const WakeParams& params);

/// v_eff = ambient * max(0, 1 - combined deficit).
double waked_speed(double ambient, double combined_deficit);

struct WakeSolution {
  std::vector<double> speeds;
  DeficitMatrix deficits;
};

WakeSolution effective_speeds(std::span<const Rotor> rotors, double theta_deg,
                              std::span<const double> ambient, const WakeParams& params);

}  // namespace windfarm
