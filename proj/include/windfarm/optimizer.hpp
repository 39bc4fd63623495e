#pragma once

// Genetic search over turbine positions, capacity selection and substation
// placement, maximising annual economic benefit.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <json.hpp>

#include "windfarm/economics.hpp"

namespace windfarm {

using Rng = std::mt19937_64;

struct TurbineGene {
  Point position;
  std::size_t spec = 0;

  friend bool operator==(const TurbineGene&, const TurbineGene&) = default;
};

struct Genome {
  std::vector<TurbineGene> turbines;
  Point substation;

  friend bool operator==(const Genome&, const Genome&) = default;
};

struct GAConfig {
  std::size_t turbine_count = 15;
  std::size_t population_size = 80;
  std::size_t generations = 300;
  double crossover_rate = 0.9;
  double mutation_rate = 0.15;  // per gene
  // Gaussian position step in m, decaying linearly over the run. Unset means
  // 5% and 1% of the search-box diagonal.
  std::optional<double> sigma_start;
  std::optional<double> sigma_end;
  std::size_t tournament_size = 3;
  std::size_t elite_count = 2;
  std::uint64_t rng_seed = 1;
  Rect bounds = Rect::centered(20000.0, 20000.0);
  bool fixed_boundary = false;  // bounds become the layout's site boundary
  double min_spacing_factor = 2.0;
  WakeMode wake_mode = WakeMode::aware;
  unsigned threads = 1;  // fitness evaluation only; never changes results
  std::size_t repair_iterations = 200;
  std::size_t placement_attempts = 2000;

  /// Desk-scale budget (population 40, 120 generations).
  static GAConfig fast();

  void validate() const;
  double sigma_at(std::size_t generation) const;

  /// Defaults with any fields present in j overriding them.
  static GAConfig from_json(const nlohmann::json& j);
  static GAConfig from_json(const nlohmann::json& j, GAConfig base);
};

void to_json(nlohmann::json& j, const GAConfig& config);

struct Individual {
  Genome genome;
  double fitness = 0.0;
};

struct GenerationStats {
  std::size_t generation = 0;
  double best = 0.0;  // best fitness seen so far
  double mean = 0.0;  // mean of the current population
};

struct OptimizationResult {
  Genome best;
  FarmLayout layout;
  EvaluationReport report;
  std::vector<GenerationStats> trace;
  GAConfig config;
};

/// Minimum centre distance the config requires between two specs.
double required_spacing(const TurbineSpec& a, const TurbineSpec& b, const GAConfig& config);

/// True when every gene is in bounds, spec indices are valid and spacing holds.
bool is_feasible(const Genome& genome, const GAConfig& config, const TurbineCatalog& catalog);

/// Clamps to bounds, then pushes the later turbine of each violating pair
/// away along the pair axis; any turbine still in conflict after the
/// iteration budget is re-sampled. Throws InfeasibleError when re-sampling
/// runs out of attempts.
void repair(Genome& genome, const GAConfig& config, const TurbineCatalog& catalog, Rng& rng);

FarmLayout to_layout(const Genome& genome, const GAConfig& config);

/// Random feasible genomes, each drawn inside a random sub-window of the
/// bounds so the population spans compact and spread-out farms.
std::vector<Genome> initialize_population(const GAConfig& config, const TurbineCatalog& catalog,
                                          Rng& rng);

double fitness(const Genome& genome, const SiteModel& site, const GAConfig& config);

/// Fitness of each genome, evaluated on config.threads workers. Output order
/// matches input order.
std::vector<double> evaluate_population(std::span<const Genome> genomes, const SiteModel& site,
                                        const GAConfig& config);

/// Elitism, tournament selection, uniform crossover, Gaussian position and
/// spec re-draw mutation, repair. All randomness is drawn on the calling
/// thread before the parallel evaluation.
std::vector<Individual> step_generation(std::span<const Individual> population,
                                        const GAConfig& config, const SiteModel& site, Rng& rng,
                                        std::size_t generation);

OptimizationResult run(const GAConfig& config, const SiteModel& site);

nlohmann::json result_to_json(const OptimizationResult& result, const TurbineCatalog& catalog);
std::string trace_csv(const OptimizationResult& result);

}  // namespace windfarm
