#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "windfarm/error.hpp"
#include "windfarm/turbine.hpp"

using namespace windfarm;

namespace {

TurbineSpec spec_d(double d) {
  TurbineSpec s;
  s.name = "test";
  s.rated_power = 10.0;
  s.hub_height = 150.0;
  s.rotor_diameter = d;
  return s;
}

}  // namespace

TEST_CASE("swept area") {
  CHECK(swept_area(spec_d(2.0)) == doctest::Approx(oracle::pi));
  const double a200 = oracle::pi * 100.0 * 100.0;
  CHECK(std::abs(a200 - 31415.93) < 0.005);
  CHECK(swept_area(spec_d(200.0)) == doctest::Approx(a200).epsilon(1e-14));
  const double a283 = oracle::pi * 141.5 * 141.5;
  // the printed 62901.9 is itself rounded loosely; it agrees to 3e-6
  CHECK(a283 == doctest::Approx(62901.9).epsilon(3e-6));
  CHECK(swept_area(spec_d(283.0)) == doctest::Approx(a283).epsilon(1e-14));
}

TEST_CASE("available power") {
  auto s = spec_d(200.0);
  CHECK(available_power(0.0, s) == 0.0);
  const double expected = 0.5 * 1.225 * oracle::pi * 1e4 * 1000.0 * 0.45;
  CHECK(expected == doctest::Approx(8.659e6).epsilon(1e-4));
  CHECK(available_power(10.0, s) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("power curve cut-in, cut-out and rated clamp") {
  auto s = spec_d(200.0);
  s.rated_power = 5.0;
  CHECK(electrical_power(2.0, s) == 0.0);
  CHECK(electrical_power(3.0, s) == 0.0);
  CHECK(electrical_power(32.0, s) == 0.0);
  CHECK(electrical_power(31.5, s) == 0.0);
  CHECK(electrical_power(25.0, s) == 5.0e6);
  CHECK(electrical_power(5.0, s) == doctest::Approx(available_power(5.0, s)));
  CHECK(electrical_power(5.0, s) < 5.0e6);
}

TEST_CASE("actuator disc coefficients") {
  const auto betz = actuator_coefficients(1.0 / 3.0);
  CHECK(betz.ct == doctest::Approx(8.0 / 9.0));
  CHECK(betz.cp == doctest::Approx(16.0 / 27.0));
  const auto q = actuator_coefficients(0.25);
  CHECK(q.ct == doctest::Approx(0.75));
  CHECK(q.cp == doctest::Approx(0.5625));
  CHECK_THROWS_AS(actuator_coefficients(0.0), DomainError);
  CHECK_THROWS_AS(actuator_coefficients(0.5), DomainError);
  CHECK_THROWS_AS(actuator_coefficients(0.7), DomainError);
}

TEST_CASE("standard catalog hub heights per case") {
  const double caps[] = {8, 11, 14, 16, 18, 22};
  const double case1[] = {90, 110, 125, 150, 160, 320};
  const auto c1 = TurbineCatalog::standard(HubHeightProfile::case1_six_heights);
  const auto c2 = TurbineCatalog::standard(HubHeightProfile::case2_two_heights);
  const auto c3 = TurbineCatalog::standard(HubHeightProfile::case3_single_height);
  REQUIRE(c1.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(c1[i].rated_power == caps[i]);
    CHECK(c1[i].hub_height == case1[i]);
    CHECK(c2[i].hub_height == (caps[i] <= 14 ? 125.0 : 320.0));
    CHECK(c3[i].hub_height == 320.0);
    // 350 W/m^2 specific power.
    const double d = 2.0 * std::sqrt(caps[i] * 1e6 / 350.0 / oracle::pi);
    CHECK(c1[i].rotor_diameter == doctest::Approx(d));
    CHECK(c1[i].cut_in == 3.0);
    CHECK(c1[i].cut_out == 31.5);
  }
  CHECK(c1.max_rotor_diameter() == doctest::Approx(2.0 * std::sqrt(22e6 / 350.0 / oracle::pi)));
}

TEST_CASE("catalog validation") {
  auto s = spec_d(200.0);
  CHECK_NOTHROW(s.validate());
  s.ct = 1.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = spec_d(200.0);
  s.cut_out = 2.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  CHECK_THROWS(TurbineCatalog({spec_d(100.0), spec_d(120.0)}, HubHeightProfile::custom));
}

TEST_CASE("catalog JSON round-trip and profile switch") {
  const auto c = TurbineCatalog::standard(HubHeightProfile::case2_two_heights);
  const nlohmann::json j = c;
  const auto back = catalog_from_json(j);
  CHECK(back.profile() == HubHeightProfile::case2_two_heights);
  REQUIRE(back.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(back[i].name == c[i].name);
    CHECK(back[i].hub_height == c[i].hub_height);
    CHECK(back[i].rotor_diameter == c[i].rotor_diameter);
  }
  const auto c3 = back.with_profile(HubHeightProfile::case3_single_height);
  for (const auto& s : c3.specs()) CHECK(s.hub_height == 320.0);
  CHECK(c.index_of("22MW") == 5);
}
