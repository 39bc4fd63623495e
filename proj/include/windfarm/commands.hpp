#pragma once

// The study commands behind the command-line tool. Each writes its files
// under the output directory and a short summary to the given stream;
// failures surface as windfarm::Error subclasses.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "windfarm/scenario.hpp"

namespace windfarm {

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  bool fast = false;
  std::filesystem::path out_dir = "out";
  unsigned threads = 1;
};

/// Seed, --fast budget and thread count folded into the scenario's GA settings.
Scenario apply_globals(Scenario scenario, const GlobalOptions& globals);

struct ComparisonReport {
  OptimizationResult aware;
  OptimizationResult ignorant;
  EvaluationReport ignorant_post_wake;  // ignorant layout re-evaluated with wakes

  double aep_loss() const { return ignorant.report.aep - ignorant_post_wake.aep; }
};

ComparisonReport run_comparison(const Scenario& scenario, const SiteModel& site);

/// Rows: metric name, then aware / ignorant without wakes / ignorant with wakes.
std::string comparison_csv(const ComparisonReport& report);
nlohmann::json comparison_json(const ComparisonReport& report, const Scenario& scenario);

struct SweepRow {
  std::size_t turbine_count = 0;
  EvaluationReport report;
  FarmLayout layout;
};

std::vector<SweepRow> run_sweep(const Scenario& scenario, const SiteModel& site,
                                const std::vector<std::size_t>& counts);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Least-squares slope of y on x.
double fitted_slope(const std::vector<double>& x, const std::vector<double>& y);

struct IngestOptions {
  std::filesystem::path input;
  std::string format = "ndbc";
  double measurement_height = 4.1;
  std::filesystem::path output;  // distribution JSON; defaults to out_dir/distribution.json
  std::optional<std::filesystem::path> ncei_columns;
  BinningOptions binning;
  SiteKind kind = SiteKind::offshore;
};

void cmd_ingest(const IngestOptions& options, const GlobalOptions& globals, std::ostream& out);
void cmd_optimize(const std::filesystem::path& scenario, const GlobalOptions& globals,
                  std::ostream& out);
void cmd_evaluate(const std::filesystem::path& scenario, const std::filesystem::path& layout,
                  WakeMode mode, const GlobalOptions& globals, std::ostream& out);
void cmd_compare(const std::filesystem::path& scenario, const GlobalOptions& globals,
                 std::ostream& out);
void cmd_sweep(const std::filesystem::path& scenario, const std::vector<std::size_t>& counts,
               const GlobalOptions& globals, std::ostream& out);
/// which is "1", "2", "3" (or case1...) or "all".
void cmd_hub_case(const std::filesystem::path& scenario, const std::string& which,
                  const GlobalOptions& globals, std::ostream& out);
void cmd_catalog_dump(const std::string& profile, std::ostream& out);
void cmd_render(const std::filesystem::path& scenario, const std::filesystem::path& layout,
                const std::filesystem::path& output, const GlobalOptions& globals,
                std::ostream& out);

}  // namespace windfarm
