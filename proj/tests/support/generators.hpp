#pragma once

// Hand-rolled random generators for property checks.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "oracles.hpp"
#include "windfarm/economics.hpp"
#include "windfarm/wind_resource.hpp"

namespace gen {

using oracle::FastRng;

inline std::size_t index(FastRng& rng, std::size_t n) { return static_cast<std::size_t>(rng.next() % n); }

inline std::vector<double> simplex(FastRng& rng, std::size_t n, double zero_chance = 0.0) {
  std::vector<double> p(n);
  double s = 0.0;
  for (auto& x : p) {
    x = rng.unit() < zero_chance ? 0.0 : rng.uniform(0.01, 1.0);
    s += x;
  }
  if (s == 0.0) {
    p[index(rng, n)] = 1.0;
    return p;
  }
  for (auto& x : p) x /= s;
  return p;
}

// Speed mass only in the first `bins` bins. 28 keeps every hub (up to 320 m,
// offshore roughness) below cut-out, where power is monotone in speed.
inline windfarm::WindDistribution distribution(FastRng& rng, std::size_t bins = 28) {
  auto head = simplex(rng, bins, 0.5);
  head.resize(40, 0.0);
  return windfarm::WindDistribution::from_marginals(simplex(rng, 12), head);
}

inline std::vector<windfarm::WindSample> samples(FastRng& rng, std::size_t n) {
  std::vector<windfarm::WindSample> out;
  for (std::size_t i = 0; i < n; ++i) {
    windfarm::WindSample s;
    // Mix of calm, ordinary and extreme speeds; directions include the wrap.
    const double pick = rng.unit();
    s.speed = pick < 0.1 ? 0.0 : pick < 0.95 ? rng.uniform(0.0, 25.0) : rng.uniform(25.0, 80.0);
    s.direction = rng.unit() < 0.05 ? 359.999999 : rng.uniform(0.0, 360.0);
    if (s.direction >= 360.0) s.direction = 0.0;
    s.measurement_height = rng.uniform(2.0, 120.0);
    out.push_back(s);
  }
  return out;
}

// Turbines in a square of the given side; spacing is not enforced.
inline windfarm::FarmLayout layout(FastRng& rng, std::size_t n, double side,
                                   std::size_t catalog_size = 6) {
  windfarm::FarmLayout l;
  for (std::size_t i = 0; i < n; ++i)
    l.turbines.push_back({{rng.uniform(0, side), rng.uniform(0, side)}, index(rng, catalog_size)});
  l.substation = {rng.uniform(0, side), rng.uniform(0, side)};
  return l;
}

inline std::vector<windfarm::Point> points(FastRng& rng, std::size_t n, double side) {
  std::vector<windfarm::Point> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back({rng.uniform(0, side), rng.uniform(0, side)});
  return p;
}

}  // namespace gen
