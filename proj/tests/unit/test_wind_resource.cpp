#include <doctest.h>

#include <cmath>
#include <string>

#include "oracles.hpp"
#include "windfarm/error.hpp"
#include "windfarm/scenario.hpp"
#include "windfarm/wind_resource.hpp"

using namespace windfarm;

namespace {

WindSample sample(double speed, double direction, double height = 80.0) {
  WindSample s;
  s.speed = speed;
  s.direction = direction;
  s.measurement_height = height;
  return s;
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

TEST_CASE("log law: identity when heights match") {
  CHECK(extrapolate_speed(10.0, 80.0, 80.0, 0.0002) == doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("log law: offshore 5 m to 90 m") {
  const double expected = oracle::log_law(8.0, 5.0, 90.0, 0.0002);
  CHECK(expected == doctest::Approx(10.283).epsilon(5e-5));
  CHECK(extrapolate_speed(8.0, 5.0, 90.0, 0.0002) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("log law: onshore 10 m to 110 m") {
  const double expected = oracle::log_law(6.0, 10.0, 110.0, 0.03);
  CHECK(expected == doctest::Approx(8.477).epsilon(5e-5));
  CHECK(extrapolate_speed(6.0, 10.0, 110.0, 0.03) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("log law: heights at or below z0 are rejected") {
  CHECK_THROWS_AS(extrapolate_speed(5.0, 0.0002, 80.0, 0.0002), DomainError);
  CHECK_THROWS_AS(extrapolate_speed(5.0, 10.0, 0.01, 0.03), DomainError);
  CHECK_THROWS_AS(extrapolate_speed(-1.0, 10.0, 80.0, 0.03), DomainError);
}

TEST_CASE("NDBC: sentinel rows dropped from the 10-row fixture") {
  const auto text = read_text_file(std::string(WINDFARM_DATA_DIR) + "/fixtures/ndbc_10rows.txt");
  const auto obs = parse_observations(text, ObservationFormat::ndbc, 4.1);
  // Hand count: rows 3 (WDIR 999), 4 (WSPD 99.0) and 6 (MM) are missing.
  CHECK(obs.samples.size() == 7);
  CHECK(obs.dropped_rows == 3);
  CHECK(obs.samples.front().speed == doctest::Approx(8.2));
  CHECK(obs.samples.front().direction == doctest::Approx(270.0));
  CHECK(obs.samples.front().measurement_height == doctest::Approx(4.1));
  // Order preserved.
  CHECK(obs.samples.back().speed == doctest::Approx(12.6));
  for (const auto& s : obs.samples) CHECK(s.valid());
}

TEST_CASE("NDBC: single row with WSPD 99.0 is dropped") {
  const std::string text =
      "#YY  MM DD hh mm WDIR WSPD GST\n"
      "2021 01 01 00 00 270 99.0 9.0\n"
      "2021 01 01 01 00 270  5.0 9.0\n";
  const auto obs = parse_observations(text, ObservationFormat::ndbc, 4.1);
  CHECK(obs.samples.size() == 1);
  CHECK(obs.dropped_rows == 1);
}

TEST_CASE("NDBC: all-sentinel file is an empty dataset") {
  const auto text = read_text_file(std::string(WINDFARM_DATA_DIR) + "/fixtures/ndbc_all_missing.txt");
  CHECK_THROWS_AS(parse_observations(text, ObservationFormat::ndbc, 4.1), EmptyDatasetError);
}

TEST_CASE("NDBC: malformed row reports its line number") {
  const std::string text =
      "#YY  MM DD hh mm WDIR WSPD\n"
      "2021 01 01 00 00 270 5.0\n"
      "2021 01 01 01 00 abc 5.0\n";
  try {
    parse_observations(text, ObservationFormat::ndbc, 4.1);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("generic CSV: one row maps field for field") {
  const std::string text = "timestamp,speed_mps,direction_deg,height_m\n2021-01-01T00:00Z,8.2,270,5\n";
  const auto obs = parse_observations(text, ObservationFormat::generic_csv, 10.0);
  REQUIRE(obs.samples.size() == 1);
  CHECK(obs.samples[0].speed == doctest::Approx(8.2));
  CHECK(obs.samples[0].direction == doctest::Approx(270.0));
  CHECK(obs.samples[0].measurement_height == doctest::Approx(5.0));
  CHECK(obs.samples[0].timestamp.time_since_epoch().count() == 1609459200);
}

TEST_CASE("generic CSV: wrong header is a parse error on line 1") {
  try {
    parse_observations("time,speed\n2021-01-01T00:00Z,8.2\n", ObservationFormat::generic_csv, 10.0);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
}

TEST_CASE("NCEI: mph converted and missing tokens dropped") {
  const std::string text =
      "\"STATION\",\"DATE\",\"HourlyWindDirection\",\"HourlyWindSpeed\"\n"
      "\"1\",\"2021-01-01T00:53:00\",\"270\",\"10\"\n"
      "\"1\",\"2021-01-01T01:53:00\",\"VRB\",\"3\"\n"
      "\"1\",\"2021-01-01T02:53:00\",\"180\",\"\"\n";
  const auto obs = parse_observations(text, ObservationFormat::ncei, 10.0);
  REQUIRE(obs.samples.size() == 1);
  CHECK(obs.dropped_rows == 2);
  CHECK(obs.samples[0].speed == doctest::Approx(4.4704));
}

TEST_CASE("8760-hour fixture normalises") {
  const auto text = read_text_file(std::string(WINDFARM_DATA_DIR) + "/fixtures/synthetic_8760h.csv");
  const auto obs = parse_observations(text, ObservationFormat::generic_csv, 4.1);
  CHECK(obs.samples.size() == 8760);
  const auto dist = build_distribution(obs.samples, BinningOptions{}, SurfaceRoughness::offshore());
  CHECK(std::abs(sum(dist.p_theta) - 1.0) < 1e-9);
  CHECK(std::abs(sum(dist.p_u) - 1.0) < 1e-9);
  CHECK(std::abs(sum(dist.joint) - 1.0) < 1e-9);
}

TEST_CASE("binning: point mass at 270 degrees, 7 m/s") {
  std::vector<WindSample> s(4, sample(7.0, 270.0));
  const auto dist = build_distribution(s, 12, 1.0, 80.0, SurfaceRoughness::offshore());
  CHECK(dist.p_theta[9] == doctest::Approx(1.0));
  CHECK(dist.p_u[7] == doctest::Approx(1.0));
  CHECK(dist.sector_direction(9) == doctest::Approx(270.0));
  CHECK(mean_speed(dist) == doctest::Approx(7.5));
}

TEST_CASE("binning: uniform over the twelve sector centres") {
  std::vector<WindSample> s;
  for (int k = 0; k < 12; ++k) s.push_back(sample(6.0, 30.0 * k));
  const auto dist = build_distribution(s, 12, 1.0, 80.0, SurfaceRoughness::offshore());
  for (double p : dist.p_theta) CHECK(std::abs(p - 1.0 / 12.0) < 1e-12);
}

TEST_CASE("binning: 359.9 degrees wraps into the north sector") {
  WindDistribution d = WindDistribution::empty(12, 1.0, 80.0);
  CHECK(d.sector_of(359.9) == 0);
  CHECK(d.sector_of(15.0) == 1);  // boundary belongs to the next sector
  CHECK(d.sector_of(14.999) == 0);
  CHECK(d.bin_of(0.0) == 0);
  CHECK(d.bin_of(39.5) == 39);
  CHECK(d.bin_of(75.0) == 39);  // open top bin
}

TEST_CASE("binning: speeds are extrapolated before binning") {
  // 5.0 m/s at 4 m offshore is about 6.35 m/s at 80 m.
  std::vector<WindSample> s{sample(5.0, 0.0, 4.0)};
  const auto dist = build_distribution(s, 12, 1.0, 80.0, SurfaceRoughness::offshore());
  const double v80 = oracle::log_law(5.0, 4.0, 80.0, 0.0002);
  CHECK(dist.p_u[static_cast<std::size_t>(v80)] == doctest::Approx(1.0));
}

TEST_CASE("binning: empty sample list is an error") {
  std::vector<WindSample> none;
  CHECK_THROWS_AS(build_distribution(none, 12, 1.0, 80.0, SurfaceRoughness::offshore()), Error);
}

TEST_CASE("mean speed: equal mass in two bins") {
  std::vector<double> p_u(40, 0.0);
  p_u[4] = 0.5;
  p_u[8] = 0.5;
  std::vector<double> p_theta(12, 1.0 / 12.0);
  const auto dist = WindDistribution::from_marginals(p_theta, p_u);
  CHECK(mean_speed(dist) == doctest::Approx(6.5));
}

TEST_CASE("mean speed: hand-computed histogram") {
  std::vector<double> p_u(40, 0.0);
  p_u[2] = 0.1;
  p_u[5] = 0.3;
  p_u[9] = 0.6;
  const auto dist = WindDistribution::from_marginals({1.0}, p_u);
  // 0.1*2.5 + 0.3*5.5 + 0.6*9.5
  CHECK(mean_speed(dist) == doctest::Approx(0.25 + 1.65 + 5.7));
}

TEST_CASE("distribution JSON round-trips bit for bit") {
  const auto text = read_text_file(std::string(WINDFARM_DATA_DIR) + "/fixtures/synthetic_8760h.csv");
  const auto obs = parse_observations(text, ObservationFormat::generic_csv, 4.1);
  BinningOptions opts;
  opts.mode = ProbabilityMode::joint;
  const auto dist = build_distribution(obs.samples, opts, SurfaceRoughness::offshore());
  const nlohmann::json j = dist;
  const auto back = nlohmann::json::parse(j.dump()).get<WindDistribution>();
  CHECK(back.p_theta == dist.p_theta);
  CHECK(back.p_u == dist.p_u);
  CHECK(back.joint == dist.joint);
  CHECK(back.mode == ProbabilityMode::joint);
  CHECK(nlohmann::json(back).dump() == j.dump());
}

TEST_CASE("distribution validation rejects bad tables") {
  auto dist = WindDistribution::from_marginals(std::vector<double>(12, 1.0 / 12.0),
                                               std::vector<double>(40, 1.0 / 40.0));
  CHECK_NOTHROW(dist.validate());
  dist.p_theta[0] += 0.01;
  CHECK_THROWS_AS(dist.validate(), DomainError);
}

TEST_CASE("dominant sectors ordered by probability") {
  std::vector<double> p(12, 0.05);
  p[3] = 0.25;
  p[7] = 0.2;
  p[0] = 0.05;
  double rest = 1.0 - 0.25 - 0.2;
  for (int i = 0; i < 12; ++i)
    if (i != 3 && i != 7) p[i] = rest / 10.0;
  const auto dist = WindDistribution::from_marginals(p, std::vector<double>(40, 1.0 / 40.0));
  const auto order = dominant_sectors(dist);
  CHECK(order[0] == 3);
  CHECK(order[1] == 7);
}
