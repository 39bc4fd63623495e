#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "windfarm/commands.hpp"
#include "windfarm/error.hpp"

namespace {

enum Exit { ok = 0, input_error = 2, infeasible = 3, invariant = 4 };

}  // namespace

int main(int argc, char** argv) {
  using namespace windfarm;

  CLI::App app{"Wind farm layout, wake and economics toolkit"};
  app.require_subcommand(1);

  GlobalOptions g;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (overrides the scenario)");
  app.add_flag("--fast", g.fast, "Desk-scale GA budget: population 40, 120 generations");
  app.add_option("--out-dir", out_dir, "Directory for output files")->capture_default_str();
  app.add_option("--threads", g.threads, "Fitness-evaluation threads")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();

  IngestOptions ingest;
  std::string input, output, ncei, site_kind = "offshore";
  auto* c_ingest = app.add_subcommand("ingest", "Bin raw wind observations into a distribution");
  c_ingest->add_option("input", input, "Observation file")->required();
  c_ingest->add_option("--format", ingest.format, "ndbc, ncei or generic_csv")->capture_default_str();
  c_ingest->add_option("--height", ingest.measurement_height, "Anemometer height, m")->capture_default_str();
  c_ingest->add_option("--output,-o", output, "Distribution JSON (default <out-dir>/distribution.json)");
  c_ingest->add_option("--sectors", ingest.binning.sector_count, "Direction sectors")->capture_default_str();
  c_ingest->add_option("--reference-height", ingest.binning.reference_height, "m")->capture_default_str();
  c_ingest->add_option("--site-kind", site_kind, "offshore or onshore")->capture_default_str();
  c_ingest->add_option("--ncei-columns", ncei, "JSON column map for NCEI files");

  std::string scenario, layout, mode = "aware", which = "all";
  std::vector<std::size_t> counts;
  auto* c_opt = app.add_subcommand("optimize", "Run the GA for one scenario");
  c_opt->add_option("scenario", scenario)->required();

  auto* c_eval = app.add_subcommand("evaluate", "Evaluate a stored layout");
  c_eval->add_option("scenario", scenario)->required();
  c_eval->add_option("layout", layout, "Layout or result JSON")->required();
  c_eval->add_option("--wake-mode", mode, "aware or ignorant")->capture_default_str();

  auto* c_cmp = app.add_subcommand("compare", "Wake-aware vs wake-ignorant optimization");
  c_cmp->add_option("scenario", scenario)->required();

  auto* c_sweep = app.add_subcommand("sweep", "Optimize once per turbine count");
  c_sweep->add_option("scenario", scenario)->required();
  c_sweep->add_option("--counts", counts, "Turbine counts, comma separated (default from scenario)")->delimiter(',');

  auto* c_hub = app.add_subcommand("hub-case", "Optimize under hub-height cases 1-3");
  c_hub->add_option("scenario", scenario)->required();
  c_hub->add_option("--case", which, "1, 2, 3 or all")->capture_default_str();

  std::string profile = "case1";
  auto* c_cat = app.add_subcommand("catalog", "Turbine catalog utilities");
  auto* c_dump = c_cat->add_subcommand("dump", "Print the standard catalog as JSON");
  c_dump->add_option("--profile", profile, "case1, case2 or case3")->capture_default_str();
  c_cat->require_subcommand(1);

  auto* c_render = app.add_subcommand("render", "Render a stored layout as SVG");
  c_render->add_option("scenario", scenario)->required();
  c_render->add_option("layout", layout)->required();
  c_render->add_option("--output,-o", output, "SVG path (default <out-dir>/layout.svg)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : input_error;
  }

  if (*seed_opt) g.seed = seed;
  g.out_dir = out_dir;

  try {
    if (*c_ingest) {
      ingest.input = input;
      ingest.output = output;
      if (!ncei.empty()) ingest.ncei_columns = ncei;
      ingest.kind = parse_site_kind(site_kind);
      cmd_ingest(ingest, g, std::cout);
    } else if (*c_opt) {
      cmd_optimize(scenario, g, std::cout);
    } else if (*c_eval) {
      cmd_evaluate(scenario, layout, parse_wake_mode(mode), g, std::cout);
    } else if (*c_cmp) {
      cmd_compare(scenario, g, std::cout);
    } else if (*c_sweep) {
      cmd_sweep(scenario, counts, g, std::cout);
    } else if (*c_hub) {
      cmd_hub_case(scenario, which, g, std::cout);
    } else if (*c_dump) {
      cmd_catalog_dump(profile, std::cout);
    } else if (*c_render) {
      cmd_render(scenario, layout, output, g, std::cout);
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return infeasible;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return invariant;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return input_error;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return input_error;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return input_error;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return invariant;
  }
  return ok;
}
