#include "windfarm/wake.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "windfarm/error.hpp"

namespace windfarm {

namespace {

// Circular segment area r^2/2 (theta - sin theta). The series branch avoids
// cancellation for the sliver segments that appear near tangency.
double segment_area(double r, double theta) {
  double s;
  if (theta < 0.1) {
    const double t2 = theta * theta;
    const double t3 = t2 * theta;
    s = t3 * (1.0 / 6.0 -
              t2 * (1.0 / 120.0 - t2 * (1.0 / 5040.0 - t2 * (1.0 / 362880.0 - t2 / 39916800.0))));
  } else {
    s = theta - std::sin(theta);
  }
  return 0.5 * r * r * s;
}

}  // namespace

double expansion_coefficient(double turbulence_intensity) {
  if (!(turbulence_intensity > 0.0)) throw DomainError("turbulence intensity must be positive");
  return 0.38 * turbulence_intensity + 0.004;
}

Point downwind_axis(double theta_deg) {
  const double t = deg_to_rad(theta_deg);
  return {-std::sin(t), -std::cos(t)};
}

std::vector<WindFramePosition> rotate_to_wind_frame(std::span<const Point3> positions,
                                                    double theta_deg) {
  const Point dw = downwind_axis(theta_deg);
  const Point cw{-dw.y, dw.x};
  std::vector<WindFramePosition> out;
  out.reserve(positions.size());
  for (const auto& p : positions)
    out.push_back({p.x * dw.x + p.y * dw.y, p.x * cw.x + p.y * cw.y, p.z});
  return out;
}

double centerline_deficit(double x, double ct, double k, double d_upstream) {
  if (!(ct > 0.0 && ct < 1.0)) throw DomainError("thrust coefficient must lie in (0, 1)");
  if (!(x >= 0.0) || !(k > 0.0) || !(d_upstream > 0.0))
    throw DomainError("centerline deficit needs x >= 0, k > 0, D > 0");
  const double spread = 1.0 + 2.0 * k * x / d_upstream;
  return (1.0 - std::sqrt(1.0 - ct)) / (spread * spread);
}

double wake_radius(double x, double d_upstream, double k) { return 0.5 * d_upstream + k * x; }

double center_distance(double y_ij, double z_i, double z_j) { return std::hypot(y_ij, z_j - z_i); }

double overlap_area(double r_rotor, double r_wake, double d) {
  if (d >= r_wake + r_rotor) return 0.0;
  if (d <= std::abs(r_wake - r_rotor)) {
    const double r = std::min(r_wake, r_rotor);
    return kPi * r * r;
  }
  // Chord geometry: a is the signed distance from the wake centre to the
  // common chord, h the half chord. The four-factor product stays accurate
  // when the discs barely touch.
  const double a = (d * d + r_wake * r_wake - r_rotor * r_rotor) / (2.0 * d);
  const double product = (-d + r_wake + r_rotor) * (d + r_wake - r_rotor) *
                         (d - r_wake + r_rotor) * (d + r_wake + r_rotor);
  const double h = 0.5 * std::sqrt(std::max(product, 0.0)) / d;
  const double wake_angle = 2.0 * std::atan2(h, a);
  const double rotor_angle = 2.0 * std::atan2(h, d - a);
  return segment_area(r_wake, wake_angle) + segment_area(r_rotor, rotor_angle);
}

double overlap_fraction(double r_rotor, double r_wake, double d) {
  const double f = overlap_area(r_rotor, r_wake, d) / (kPi * r_rotor * r_rotor);
  return std::clamp(f, 0.0, 1.0);
}

double pair_deficit(const FrameRotor& upstream, const FrameRotor& downstream, double k) {
  const double x = downstream.pos.x - upstream.pos.x;
  if (x <= 0.0) return 0.0;
  const double r_wake = wake_radius(x, upstream.diameter, k);
  const double d = center_distance(downstream.pos.y - upstream.pos.y, upstream.pos.z,
                                   downstream.pos.z);
  const double f = overlap_fraction(0.5 * downstream.diameter, r_wake, d);
  if (f == 0.0) return 0.0;
  return centerline_deficit(x, upstream.ct, k, upstream.diameter) * f;
}

void DeficitMatrix::superpose() {
  for (std::size_t j = 0; j < n_; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double delta = pair_[i * n_ + j];
      sum += delta * delta;
    }
    combined_[j] = std::sqrt(sum);
  }
}

std::string DeficitMatrix::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "upstream,downstream,delta,combined_downstream\n";
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if ((*this)(i, j) > 0.0) os << i << ',' << j << ',' << (*this)(i, j) << ',' << combined_[j] << '\n';
  return os.str();
}

DeficitMatrix compute_deficits(std::span<const Rotor> rotors, double theta_deg,
                               const WakeParams& params) {
  const double k = params.expansion();
  std::vector<Point3> hubs;
  hubs.reserve(rotors.size());
  for (const auto& r : rotors) hubs.push_back(r.hub);
  const auto frame = rotate_to_wind_frame(hubs, theta_deg);

  std::vector<FrameRotor> fr;
  fr.reserve(rotors.size());
  for (std::size_t i = 0; i < rotors.size(); ++i)
    fr.push_back({frame[i], rotors[i].diameter, rotors[i].ct});

  DeficitMatrix m(rotors.size());
  for (std::size_t i = 0; i < fr.size(); ++i)
    for (std::size_t j = 0; j < fr.size(); ++j)
      if (i != j) m.set(i, j, pair_deficit(fr[i], fr[j], k));
  m.superpose();
  return m;
}

double waked_speed(double ambient, double combined_deficit) {
  return ambient * std::max(0.0, 1.0 - combined_deficit);
}

WakeSolution effective_speeds(std::span<const Rotor> rotors, double theta_deg,
                              std::span<const double> ambient, const WakeParams& params) {
  if (ambient.size() != rotors.size())
    throw DomainError("need exactly one ambient speed per turbine");
  WakeSolution out{{}, compute_deficits(rotors, theta_deg, params)};
  out.speeds.reserve(rotors.size());
  for (std::size_t j = 0; j < rotors.size(); ++j) {
    if (!(ambient[j] >= 0.0)) throw DomainError("ambient speed must be non-negative");
    out.speeds.push_back(waked_speed(ambient[j], out.deficits.combined(j)));
  }
  return out;
}

}  // namespace windfarm
