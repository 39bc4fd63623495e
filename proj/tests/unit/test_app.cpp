#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <regex>
#include <sstream>
#include <string>

#include "windfarm/commands.hpp"
#include "windfarm/error.hpp"
#include "windfarm/svg.hpp"

using namespace windfarm;
namespace fs = std::filesystem;

namespace {

const std::string kData = WINDFARM_DATA_DIR;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("windfarm_unit_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + WINDFARM_CLI + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

nlohmann::json tiny_scenario() {
  return {{"site", "tiny"},
          {"resource", kData + "/fixtures/ca_offshore.json"},
          {"turbine_count", 4},
          {"boundary", {{"mode", "capped"}, {"width_m", 6000}, {"height_m", 6000}}},
          {"ga", {{"population_size", 10}, {"generations", 5}}},
          {"rng_seed", 3}};
}

fs::path write_scenario(const fs::path& dir, const nlohmann::json& j) {
  const auto p = dir / "scenario.json";
  write_text_file(p, j.dump(2));
  return p;
}

}  // namespace

TEST_CASE("scenario: defaults are filled in and echoed") {
  const auto s = load_scenario(kData + "/scenarios/ak_offshore.json");
  CHECK(s.turbine_count == 15);
  CHECK(s.kind == SiteKind::offshore);
  CHECK(s.wake_params().turbulence_intensity == 0.075);
  CHECK(s.roughness().z0 == 0.0002);
  CHECK(s.costs.c_elec == 0.41);
  const auto echo = scenario_to_json(s);
  CHECK(echo.at("costs").at("c_cable_usd_per_m") == 400.0);
  CHECK(echo.at("ga").at("population_size") == 80);
  CHECK(echo.at("boundary").at("footprint") == "bounding_box");
  CHECK(echo.at("hub_case") == "case1");
}

TEST_CASE("scenario: onshore kind switches roughness and turbulence") {
  auto j = tiny_scenario();
  j["site_kind"] = "onshore";
  const auto s = scenario_from_json(j, {});
  CHECK(s.roughness().z0 == 0.03);
  CHECK(s.wake_params().turbulence_intensity == 0.15);
}

TEST_CASE("scenario: area cap becomes a square boundary") {
  const auto s = load_scenario(kData + "/scenarios/high_wind_sweep.json");
  CHECK(s.boundary == BoundaryMode::capped);
  CHECK(s.bounds().area() == doctest::Approx(145e6));
  CHECK(s.footprint_mode() == FootprintMode::bounding_box);
  CHECK(s.resolved_ga().fixed_boundary);
}

TEST_CASE("scenario: unknown keys and bad types are rejected") {
  auto j = tiny_scenario();
  j["turbines"] = 3;
  CHECK_THROWS_AS(scenario_from_json(j, {}), Error);
  j = tiny_scenario();
  j["ga"]["population"] = 3;
  CHECK_THROWS_AS(scenario_from_json(j, {}), Error);
  j = tiny_scenario();
  j["turbine_count"] = "many";
  CHECK_THROWS_AS(scenario_from_json(j, {}), Error);
}

TEST_CASE("svg: 15-turbine layout has 15 markers and 15 cables") {
  const auto s = scenario_from_json(tiny_scenario(), {});
  const auto site = load_site(s);
  FarmLayout layout;
  for (int i = 0; i < 15; ++i)
    layout.turbines.push_back({{(i % 5) * 900.0, (i / 5) * 900.0}, static_cast<std::size_t>(i % 6)});
  layout.substation = {1800, -600};
  const auto svg = render_layout_svg(layout, site);
  CHECK(count(svg, "<circle class=\"turbine\"") == 15);
  CHECK(count(svg, "<line class=\"cable\"") == 15);
  CHECK(count(svg, "class=\"substation\"") == 1);
  CHECK(count(svg, "class=\"scale-bar\"") == 1);
  CHECK(count(svg, "wake-cone primary") > 0);
}

TEST_CASE("svg: single turbine draws no cones") {
  const auto site = load_site(scenario_from_json(tiny_scenario(), {}));
  FarmLayout layout;
  layout.turbines = {{{0, 0}, 5}};
  layout.substation = {300, 300};
  const auto svg = render_layout_svg(layout, site);
  CHECK(count(svg, "<path class=\"wake-cone") == 0);
}

TEST_CASE("svg: cone half-width equals the wake radius") {
  const auto site = load_site(scenario_from_json(tiny_scenario(), {}));
  FarmLayout layout;
  // Dominant CA sector is 330 degrees; place a turbine well downwind of another.
  const Point dw = downwind_axis(330.0);
  layout.turbines = {{{0, 0}, 5}, {{dw.x * 2000.0, dw.y * 2000.0}, 5}};
  layout.substation = {800, 800};
  const auto svg = render_layout_svg(layout, site);
  const std::regex path_re("class=\"wake-cone primary\" data-turbine=\"0\"[^>]* d=\"M ([-0-9.]+) ([-0-9.]+) L ([-0-9.]+) ([-0-9.]+) L ([-0-9.]+) ([-0-9.]+) L ([-0-9.]+) ([-0-9.]+) Z\"");
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, path_re));
  auto v = [&](int i) { return std::stod(m[i].str()); };
  // Drawing units are metres with y flipped.
  const double near_half = 0.5 * std::hypot(v(1) - v(7), v(2) - v(8));
  const double far_half = 0.5 * std::hypot(v(3) - v(5), v(4) - v(6));
  const double far_x = std::hypot(0.5 * (v(3) + v(5)) - 0.5 * (v(1) + v(7)),
                                  0.5 * (v(4) + v(6)) - 0.5 * (v(2) + v(8)));
  const double d = site.catalog[5].rotor_diameter;
  const double k = site.wake.expansion();
  CHECK(near_half == doctest::Approx(wake_radius(0.0, d, k)).epsilon(1e-4));
  CHECK(far_x == doctest::Approx(2000.0).epsilon(1e-4));
  CHECK(far_half == doctest::Approx(wake_radius(far_x, d, k)).epsilon(1e-4));
}

TEST_CASE("svg: wind rose and line chart") {
  std::vector<double> p(16, 1.0 / 16.0);
  const auto rose = render_wind_rose_svg(p, "rose");
  CHECK(count(rose, "class=\"rose-sector\"") == 16);
  const auto chart = render_line_chart_svg("t", "x", "y", {{"s", {1, 2, 3}, {3, 1, 2}}});
  CHECK(count(chart, "<polyline class=\"series\"") == 1);
}

TEST_CASE("commands: optimize writes all outputs and its CSV round-trips") {
  const auto dir = scratch("optimize");
  const auto scen = write_scenario(dir, tiny_scenario());
  GlobalOptions g;
  g.out_dir = dir / "out";
  std::ostringstream log;
  cmd_optimize(scen, g, log);
  for (const char* f : {"optimize.json", "optimize_report.csv", "optimize_layout.svg", "optimize_trace.csv"})
    CHECK(fs::exists(g.out_dir / f));

  const auto result = nlohmann::json::parse(read_text_file(g.out_dir / "optimize.json"));
  CHECK(result.at("scenario").at("rng_seed") == 3);
  const auto csv = read_text_file(g.out_dir / "optimize_report.csv");
  const auto stored = report_from_csv_row(csv.substr(csv.find('\n') + 1));

  const auto scenario = load_scenario(scen);
  const auto site = load_site(scenario);
  const auto layout = layout_from_json(result.at("layout"), site.catalog);
  const auto again = evaluate(layout, site, WakeMode::aware);
  CHECK(again.aep == doctest::Approx(stored.aep).epsilon(1e-6));
  CHECK(again.aeb == doctest::Approx(stored.aeb).epsilon(1e-6));
  CHECK(again.footprint == doctest::Approx(stored.footprint).epsilon(1e-6));
  CHECK(again.cable_length == doctest::Approx(stored.cable_length).epsilon(1e-6));
}

TEST_CASE("commands: compare keeps the post-wake inequality") {
  const auto dir = scratch("compare");
  const auto scen = write_scenario(dir, tiny_scenario());
  GlobalOptions g;
  g.out_dir = dir / "out";
  std::ostringstream log;
  cmd_compare(scen, g, log);
  const auto j = nlohmann::json::parse(read_text_file(g.out_dir / "compare.json"));
  CHECK(j.at("wake_ignorant").at("post_wake").at("aep_gwh").get<double>() <=
        j.at("wake_ignorant").at("no_wake").at("aep_gwh").get<double>());
  const auto csv = read_text_file(g.out_dir / "compare.csv");
  CHECK(csv.rfind("metric,wake_aware,wake_ignorant_no_wake,wake_ignorant_post_wake\n", 0) == 0);
  CHECK(count(csv, "\n") == 12);
}

TEST_CASE("commands: sweep over one count gives one row") {
  const auto dir = scratch("sweep");
  const auto scen = write_scenario(dir, tiny_scenario());
  GlobalOptions g;
  g.out_dir = dir / "out";
  std::ostringstream log;
  cmd_sweep(scen, {3}, g, log);
  const auto csv = read_text_file(g.out_dir / "sweep.csv");
  CHECK(count(csv, "\n") == 2);
  CHECK(csv.find("\n3,") != std::string::npos);
}

TEST_CASE("commands: hub cases pin hub heights") {
  const auto dir = scratch("hub");
  const auto scen = write_scenario(dir, tiny_scenario());
  GlobalOptions g;
  g.out_dir = dir / "out";
  std::ostringstream log;
  cmd_hub_case(scen, "all", g, log);
  const auto c3 = nlohmann::json::parse(read_text_file(g.out_dir / "hub_case3.json"));
  for (const auto& t : c3.at("layout").at("turbines")) CHECK(t.at("hub_height_m") == 320.0);
  const auto c2 = nlohmann::json::parse(read_text_file(g.out_dir / "hub_case2.json"));
  for (const auto& t : c2.at("layout").at("turbines")) {
    const double h = t.at("hub_height_m");
    CHECK((h == 125.0 || h == 320.0));
  }
  const auto csv = read_text_file(g.out_dir / "hub_case.csv");
  CHECK(csv.rfind("metric,case1,case2,case3\n", 0) == 0);
}

TEST_CASE("cli: exit codes") {
  const auto dir = scratch("cli");
  const std::string out = " --out-dir \"" + (dir / "out").string() + "\" ";
  CHECK(run_cli(out + "ingest \"" + kData + "/fixtures/ndbc_10rows.txt\"") == 0);
  CHECK(fs::exists(dir / "out" / "distribution.json"));
  CHECK(run_cli(out + "ingest \"" + kData + "/fixtures/ndbc_all_missing.txt\"") == 2);
  CHECK(run_cli(out + "ingest /nonexistent/file.txt") == 2);
  CHECK(run_cli(out + "optimize /nonexistent/scenario.json") == 2);

  auto crowded = tiny_scenario();
  crowded["turbine_count"] = 60;
  crowded["boundary"] = {{"mode", "capped"}, {"width_m", 1500}, {"height_m", 1500}};
  crowded["ga"]["placement_attempts"] = 100;
  const auto scen = write_scenario(dir, crowded);
  CHECK(run_cli(out + "optimize \"" + scen.string() + "\"") == 3);
  CHECK(run_cli("catalog dump --profile case3") == 0);
  CHECK(run_cli("no-such-command") == 2);
}

TEST_CASE("ingest summary line") {
  const auto dir = scratch("ingest");
  IngestOptions o;
  o.input = kData + "/fixtures/ndbc_10rows.txt";
  o.output = dir / "d.json";
  std::ostringstream log;
  cmd_ingest(o, {}, log);
  CHECK(log.str().rfind("samples 7, dropped 3, mean speed at 80 m ", 0) == 0);
  CHECK(fs::exists(dir / "d_rose.svg"));
}

TEST_CASE("fitted slope") {
  CHECK(fitted_slope({1, 2, 3}, {2, 4, 6}) == doctest::Approx(2.0));
  CHECK(fitted_slope({1, 2, 3}, {5, 5, 5}) == 0.0);
  CHECK_THROWS_AS(fitted_slope({1}, {1}), DomainError);
}
