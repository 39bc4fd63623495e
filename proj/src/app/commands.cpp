#include "windfarm/commands.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "windfarm/error.hpp"
#include "windfarm/svg.hpp"

namespace windfarm {

namespace {

std::string fixed(double v, int digits = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

std::string full(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// One row per metric, one column per report.
std::string metrics_table_csv(const std::vector<std::string>& columns,
                              const std::vector<const EvaluationReport*>& reports) {
  std::ostringstream os;
  os << "metric";
  for (const auto& c : columns) os << ',' << c;
  os << '\n';
  auto row = [&](const char* name, auto get) {
    os << name;
    for (const auto* r : reports) os << ',' << get(*r);
    os << '\n';
  };
  row("aep_gwh", [](const EvaluationReport& r) { return full(r.aep); });
  row("apb_musd", [](const EvaluationReport& r) { return full(r.apb); });
  row("farm_capacity_mw", [](const EvaluationReport& r) { return full(r.farm_capacity); });
  row("capacity_mix", [](const EvaluationReport& r) { return '"' + r.capacity_mix + '"'; });
  row("capacity_factor_pct", [](const EvaluationReport& r) { return full(100.0 * r.capacity_factor); });
  row("footprint_km2", [](const EvaluationReport& r) { return full(r.footprint); });
  row("cable_length_km", [](const EvaluationReport& r) { return full(r.cable_length); });
  row("land_cost_musd", [](const EvaluationReport& r) { return full(r.land_cost); });
  row("cable_cost_musd", [](const EvaluationReport& r) { return full(r.cable_cost); });
  row("turbine_cost_musd", [](const EvaluationReport& r) { return full(r.turbine_cost); });
  row("aeb_musd", [](const EvaluationReport& r) { return full(r.aeb); });
  return os.str();
}

std::string report_csv(const EvaluationReport& r) { return report_csv_header() + "\n" + report_csv_row(r) + "\n"; }

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void summary(std::ostream& out, const std::string& label, const EvaluationReport& r) {
  out << label << ": AEP " << fixed(r.aep) << " GWh/yr, CF " << fixed(100.0 * r.capacity_factor)
      << "%, footprint " << fixed(r.footprint) << " km2, cable " << fixed(r.cable_length)
      << " km, AEB " << fixed(r.aeb) << " M$/yr, " << r.capacity_mix << '\n';
}

void write_optimization(const OptimizationResult& result, const Scenario& scenario,
                        const SiteModel& site, const std::filesystem::path& dir,
                        const std::string& stem) {
  auto j = result_to_json(result, site.catalog);
  j["scenario"] = scenario_to_json(scenario);
  write_text_file(dir / (stem + ".json"), dump(j));
  write_text_file(dir / (stem + "_report.csv"), report_csv(result.report));
  write_text_file(dir / (stem + "_trace.csv"), trace_csv(result));
  LayoutRenderOptions opts;
  opts.title = scenario.site + " " + std::string(to_string(result.config.wake_mode));
  write_text_file(dir / (stem + "_layout.svg"), render_layout_svg(result.layout, site, opts));
}

}  // namespace

Scenario apply_globals(Scenario s, const GlobalOptions& g) {
  if (g.seed) s.ga.rng_seed = *g.seed;
  if (g.fast) {
    const auto fast = GAConfig::fast();
    s.ga.population_size = fast.population_size;
    s.ga.generations = fast.generations;
  }
  s.ga.threads = std::max(1u, g.threads);
  return s;
}

ComparisonReport run_comparison(const Scenario& scenario, const SiteModel& site) {
  ComparisonReport c;
  GAConfig config = scenario.resolved_ga();
  config.wake_mode = WakeMode::aware;
  c.aware = run(config, site);
  config.wake_mode = WakeMode::ignorant;
  c.ignorant = run(config, site);
  c.ignorant_post_wake = evaluate(c.ignorant.layout, site, WakeMode::aware);
  if (c.ignorant_post_wake.aep > c.ignorant.report.aep * (1.0 + 1e-12))
    throw InvariantError("wake post-analysis raised the ignorant layout's AEP");
  return c;
}

std::string comparison_csv(const ComparisonReport& c) {
  return metrics_table_csv({"wake_aware", "wake_ignorant_no_wake", "wake_ignorant_post_wake"},
                           {&c.aware.report, &c.ignorant.report, &c.ignorant_post_wake});
}

nlohmann::json comparison_json(const ComparisonReport& c, const Scenario& scenario) {
  const auto& catalog = scenario.catalog;
  return nlohmann::json{
      {"scenario", scenario_to_json(scenario)},
      {"wake_aware", {{"report", c.aware.report}, {"layout", layout_to_json(c.aware.layout, catalog)}}},
      {"wake_ignorant",
       {{"no_wake", c.ignorant.report},
        {"post_wake", c.ignorant_post_wake},
        {"layout", layout_to_json(c.ignorant.layout, catalog)}}},
      {"deltas",
       {{"ignorant_aep_change_gwh", c.ignorant_post_wake.aep - c.ignorant.report.aep},
        {"ignorant_apb_change_musd", c.ignorant_post_wake.apb - c.ignorant.report.apb},
        {"ignorant_aeb_change_musd", c.ignorant_post_wake.aeb - c.ignorant.report.aeb},
        {"aware_minus_ignorant_post_wake_aeb_musd", c.aware.report.aeb - c.ignorant_post_wake.aeb},
        {"aware_minus_ignorant_post_wake_aep_gwh", c.aware.report.aep - c.ignorant_post_wake.aep}}},
  };
}

std::vector<SweepRow> run_sweep(const Scenario& scenario, const SiteModel& site,
                                const std::vector<std::size_t>& counts) {
  if (counts.empty()) throw Error("sweep needs at least one turbine count");
  std::vector<SweepRow> rows;
  for (std::size_t t : counts) {
    Scenario s = scenario;
    s.turbine_count = t;
    const auto result = run(s.resolved_ga(), site);
    rows.push_back({t, result.report, result.layout});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "turbine_count,capacity_factor_pct,aeb_musd,aeb_per_turbine_musd,footprint_km2,aep_gwh,"
        "farm_capacity_mw\n";
  for (const auto& r : rows)
    os << r.turbine_count << ',' << full(100.0 * r.report.capacity_factor) << ','
       << full(r.report.aeb) << ',' << full(r.report.aeb / static_cast<double>(r.turbine_count))
       << ',' << full(r.report.footprint) << ',' << full(r.report.aep) << ','
       << full(r.report.farm_capacity) << '\n';
  return os.str();
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope needs two or more points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw DomainError("slope needs distinct x values");
  return sxy / sxx;
}

void cmd_ingest(const IngestOptions& o, const GlobalOptions& g, std::ostream& out) {
  const auto text = read_text_file(o.input);
  const auto format = parse_format(o.format);
  NceiColumnMap columns;
  if (o.ncei_columns) columns = NceiColumnMap::from_json(nlohmann::json::parse(read_text_file(*o.ncei_columns)));
  const auto obs = parse_observations(text, format, o.measurement_height, columns);
  const auto roughness = o.kind == SiteKind::onshore ? SurfaceRoughness::onshore() : SurfaceRoughness::offshore();
  const auto dist = build_distribution(obs.samples, o.binning, roughness);

  double sum = 0.0;
  for (const auto& s : obs.samples)
    sum += extrapolate_speed(s.speed, s.measurement_height, o.binning.reference_height, roughness.z0);
  const double mean = sum / static_cast<double>(obs.samples.size());

  const auto target = o.output.empty() ? g.out_dir / "distribution.json" : o.output;
  write_text_file(target, dump(dist));

  // Display rose at 16 sectors, computation stays at the configured count.
  BinningOptions display = o.binning;
  display.sector_count = 16;
  const auto rose = build_distribution(obs.samples, display, roughness);
  const auto rose_path = target.parent_path() / (target.stem().string() + "_rose.svg");
  write_text_file(rose_path, render_wind_rose_svg(rose.p_theta, o.input.filename().string()));

  out << "samples " << obs.samples.size() << ", dropped " << obs.dropped_rows << ", mean speed at "
      << fixed(o.binning.reference_height, 0) << " m " << fixed(mean, 3) << " m/s\n";
  out << "wrote " << target.generic_string() << " and " << rose_path.generic_string() << '\n';
}

void cmd_optimize(const std::filesystem::path& path, const GlobalOptions& g, std::ostream& out) {
  const auto scenario = apply_globals(load_scenario(path), g);
  const auto site = load_site(scenario);
  const auto result = run(scenario.resolved_ga(), site);
  write_optimization(result, scenario, site, g.out_dir, "optimize");
  summary(out, scenario.site, result.report);
}

void cmd_evaluate(const std::filesystem::path& path, const std::filesystem::path& layout_path,
                  WakeMode mode, const GlobalOptions& g, std::ostream& out) {
  const auto scenario = apply_globals(load_scenario(path), g);
  const auto site = load_site(scenario);
  auto lj = nlohmann::json::parse(read_text_file(layout_path));
  if (lj.contains("layout")) lj = lj.at("layout");
  const auto layout = layout_from_json(lj, site.catalog);
  validate_layout(layout, site.catalog, scenario.ga.min_spacing_factor);
  const auto report = evaluate(layout, site, mode);
  write_text_file(g.out_dir / "evaluate_report.csv", report_csv(report));
  write_text_file(g.out_dir / "evaluate.json",
                  dump({{"report", report}, {"layout", layout_to_json(layout, site.catalog)}}));
  const auto order = dominant_sectors(site.wind);
  if (!order.empty()) {
    const auto deficits = compute_deficits(layout_rotors(layout, site.catalog),
                                           site.wind.sector_direction(order.front()), site.wake);
    write_text_file(g.out_dir / "evaluate_deficits.csv", deficits.to_csv());
  }
  summary(out, scenario.site + " (" + std::string(to_string(mode)) + ")", report);
}

void cmd_compare(const std::filesystem::path& path, const GlobalOptions& g, std::ostream& out) {
  const auto scenario = apply_globals(load_scenario(path), g);
  const auto site = load_site(scenario);
  const auto c = run_comparison(scenario, site);
  write_text_file(g.out_dir / "compare.csv", comparison_csv(c));
  write_text_file(g.out_dir / "compare.json", dump(comparison_json(c, scenario)));
  write_optimization(c.aware, scenario, site, g.out_dir, "compare_aware");
  write_optimization(c.ignorant, scenario, site, g.out_dir, "compare_ignorant");
  summary(out, "wake-aware", c.aware.report);
  summary(out, "wake-ignorant (no wake)", c.ignorant.report);
  summary(out, "wake-ignorant (post wake)", c.ignorant_post_wake);
  out << "ignorant layout AEP change after wake post-analysis: "
      << fixed(c.ignorant_post_wake.aep - c.ignorant.report.aep) << " GWh/yr\n";
}

void cmd_sweep(const std::filesystem::path& path, const std::vector<std::size_t>& counts,
               const GlobalOptions& g, std::ostream& out) {
  const auto scenario = apply_globals(load_scenario(path), g);
  const auto site = load_site(scenario);
  const auto rows = run_sweep(scenario, site, counts.empty() ? scenario.sweep_counts : counts);
  write_text_file(g.out_dir / "sweep.csv", sweep_csv(rows));

  std::vector<double> t, cf, aeb, per, area;
  for (const auto& r : rows) {
    t.push_back(static_cast<double>(r.turbine_count));
    cf.push_back(100.0 * r.report.capacity_factor);
    aeb.push_back(r.report.aeb);
    per.push_back(r.report.aeb / static_cast<double>(r.turbine_count));
    area.push_back(r.report.footprint);
  }
  write_text_file(g.out_dir / "sweep_capacity_factor.svg",
                  render_line_chart_svg("Capacity factor", "turbines", "%", {{"CF", t, cf}}));
  write_text_file(g.out_dir / "sweep_aeb.svg",
                  render_line_chart_svg("Annual economic benefit", "turbines", "M$/yr", {{"AEB", t, aeb}}));
  write_text_file(g.out_dir / "sweep_aeb_per_turbine.svg",
                  render_line_chart_svg("AEB per turbine", "turbines", "M$/yr", {{"AEB/turbine", t, per}}));
  write_text_file(g.out_dir / "sweep_footprint.svg",
                  render_line_chart_svg("Farm footprint", "turbines", "km2", {{"footprint", t, area}}));
  for (const auto& r : rows)
    out << "T=" << r.turbine_count << ": CF " << fixed(100.0 * r.report.capacity_factor) << "%, AEB "
        << fixed(r.report.aeb) << " M$/yr, footprint " << fixed(r.report.footprint) << " km2\n";
}

void cmd_hub_case(const std::filesystem::path& path, const std::string& which,
                  const GlobalOptions& g, std::ostream& out) {
  const auto base = apply_globals(load_scenario(path), g);
  std::vector<HubHeightProfile> profiles;
  if (which == "all") {
    profiles = {HubHeightProfile::case1_six_heights, HubHeightProfile::case2_two_heights,
                HubHeightProfile::case3_single_height};
  } else {
    const auto p = parse_hub_profile(which);
    if (p == HubHeightProfile::custom) throw Error("hub-case takes 1, 2, 3 or all");
    profiles = {p};
  }
  std::vector<std::string> names;
  std::vector<OptimizationResult> results;
  for (auto p : profiles) {
    Scenario s = base;
    s.catalog = s.catalog.with_profile(p);
    const auto site = load_site(s);
    results.push_back(run(s.resolved_ga(), site));
    const std::string name(to_string(p));
    names.push_back(name);
    write_optimization(results.back(), s, site, g.out_dir, "hub_" + name);
    summary(out, name, results.back().report);
  }
  std::vector<const EvaluationReport*> reports;
  for (const auto& r : results) reports.push_back(&r.report);
  write_text_file(g.out_dir / "hub_case.csv", metrics_table_csv(names, reports));
}

void cmd_catalog_dump(const std::string& profile, std::ostream& out) {
  out << dump(TurbineCatalog::standard(parse_hub_profile(profile)));
}

void cmd_render(const std::filesystem::path& path, const std::filesystem::path& layout_path,
                const std::filesystem::path& output, const GlobalOptions& g, std::ostream& out) {
  const auto scenario = apply_globals(load_scenario(path), g);
  const auto site = load_site(scenario);
  auto lj = nlohmann::json::parse(read_text_file(layout_path));
  if (lj.contains("layout")) lj = lj.at("layout");
  const auto layout = layout_from_json(lj, site.catalog);
  const auto target = output.empty() ? g.out_dir / "layout.svg" : output;
  LayoutRenderOptions opts;
  opts.title = scenario.site;
  write_text_file(target, render_layout_svg(layout, site, opts));
  out << "wrote " << target.generic_string() << '\n';
}

}  // namespace windfarm
