#include "windfarm/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "windfarm/error.hpp"

namespace windfarm {

namespace {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool chance(Rng& rng, double p) { return p > 0.0 && uniform(rng, 0.0, 1.0) < p; }

double gauss(Rng& rng, double sigma) { return std::normal_distribution<double>(0.0, sigma)(rng); }

bool conflicts(const Genome& g, std::size_t j, const GAConfig& config,
               const TurbineCatalog& catalog) {
  const auto& a = g.turbines[j];
  for (std::size_t i = 0; i < g.turbines.size(); ++i) {
    if (i == j) continue;
    const auto& b = g.turbines[i];
    if (distance(a.position, b.position) < required_spacing(catalog[a.spec], catalog[b.spec], config))
      return true;
  }
  return false;
}

// Places turbine j uniformly in the window until it clears every other
// turbine in [0, limit).
bool place(Genome& g, std::size_t j, std::size_t limit, const Rect& window, const GAConfig& config,
           const TurbineCatalog& catalog, Rng& rng) {
  for (std::size_t attempt = 0; attempt < config.placement_attempts; ++attempt) {
    g.turbines[j].position = {uniform(rng, window.x_min, window.x_max),
                              uniform(rng, window.y_min, window.y_max)};
    bool ok = true;
    for (std::size_t i = 0; i < limit && ok; ++i) {
      if (i == j) continue;
      ok = distance(g.turbines[i].position, g.turbines[j].position) >=
           required_spacing(catalog[g.turbines[i].spec], catalog[g.turbines[j].spec], config);
    }
    if (ok) return true;
  }
  return false;
}

std::size_t tournament(std::span<const Individual> pop, std::size_t size, Rng& rng) {
  std::size_t best = uniform_index(rng, pop.size());
  for (std::size_t k = 1; k < size; ++k) {
    const std::size_t c = uniform_index(rng, pop.size());
    if (pop[c].fitness > pop[best].fitness || (pop[c].fitness == pop[best].fitness && c < best))
      best = c;
  }
  return best;
}

void mutate(Genome& g, const GAConfig& config, const TurbineCatalog& catalog, double sigma,
            Rng& rng) {
  for (auto& t : g.turbines) {
    if (chance(rng, config.mutation_rate)) {
      t.position.x += gauss(rng, sigma);
      t.position.y += gauss(rng, sigma);
    }
    if (chance(rng, config.mutation_rate)) t.spec = uniform_index(rng, catalog.size());
  }
  if (chance(rng, config.mutation_rate)) {
    g.substation.x += gauss(rng, sigma);
    g.substation.y += gauss(rng, sigma);
  }
}

void crossover(Genome& a, Genome& b, Rng& rng) {
  for (std::size_t i = 0; i < a.turbines.size(); ++i)
    if (chance(rng, 0.5)) std::swap(a.turbines[i], b.turbines[i]);
  if (chance(rng, 0.5)) std::swap(a.substation, b.substation);
}

GenerationStats stats(std::span<const Individual> pop, std::size_t generation, double best_so_far) {
  GenerationStats s;
  s.generation = generation;
  double sum = 0.0;
  for (const auto& ind : pop) {
    sum += ind.fitness;
    best_so_far = std::max(best_so_far, ind.fitness);
  }
  s.best = best_so_far;
  s.mean = sum / static_cast<double>(pop.size());
  return s;
}

}  // namespace

GAConfig GAConfig::fast() {
  GAConfig c;
  c.population_size = 40;
  c.generations = 120;
  return c;
}

void GAConfig::validate() const {
  if (population_size < 2) throw DomainError("population_size must be at least 2");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0) ||
      !(mutation_rate >= 0.0 && mutation_rate <= 1.0))
    throw DomainError("crossover and mutation rates must lie in [0, 1]");
  if (elite_count > population_size)
    throw DomainError("elite_count cannot exceed population_size");
  if (tournament_size < 1) throw DomainError("tournament_size must be at least 1");
  if (!(bounds.x_max > bounds.x_min) || !(bounds.y_max > bounds.y_min))
    throw DomainError("search bounds are degenerate");
  if (!(min_spacing_factor >= 0.0)) throw DomainError("min_spacing_factor must be non-negative");
  if (threads < 1) throw DomainError("threads must be at least 1");
}

double GAConfig::sigma_at(std::size_t generation) const {
  const double start = sigma_start.value_or(0.05 * bounds.diagonal());
  const double end = sigma_end.value_or(0.01 * bounds.diagonal());
  if (generations <= 1) return start;
  const double t = std::min(1.0, static_cast<double>(generation) / static_cast<double>(generations - 1));
  return start + (end - start) * t;
}

GAConfig GAConfig::from_json(const nlohmann::json& j) { return from_json(j, GAConfig{}); }

GAConfig GAConfig::from_json(const nlohmann::json& j, GAConfig c) {
  c.turbine_count = j.value("turbine_count", c.turbine_count);
  c.population_size = j.value("population_size", c.population_size);
  c.generations = j.value("generations", c.generations);
  c.crossover_rate = j.value("crossover_rate", c.crossover_rate);
  c.mutation_rate = j.value("mutation_rate", c.mutation_rate);
  if (j.contains("sigma_start_m") && !j.at("sigma_start_m").is_null())
    c.sigma_start = j.at("sigma_start_m").get<double>();
  if (j.contains("sigma_end_m") && !j.at("sigma_end_m").is_null())
    c.sigma_end = j.at("sigma_end_m").get<double>();
  c.tournament_size = j.value("tournament_size", c.tournament_size);
  c.elite_count = j.value("elite_count", c.elite_count);
  c.rng_seed = j.value("rng_seed", c.rng_seed);
  c.min_spacing_factor = j.value("min_spacing_factor", c.min_spacing_factor);
  c.repair_iterations = j.value("repair_iterations", c.repair_iterations);
  c.placement_attempts = j.value("placement_attempts", c.placement_attempts);
  if (j.contains("wake_mode")) c.wake_mode = parse_wake_mode(j.at("wake_mode").get<std::string>());
  return c;
}

void to_json(nlohmann::json& j, const GAConfig& c) {
  j = nlohmann::json{
      {"turbine_count", c.turbine_count},
      {"population_size", c.population_size},
      {"generations", c.generations},
      {"crossover_rate", c.crossover_rate},
      {"mutation_rate", c.mutation_rate},
      {"sigma_start_m", c.sigma_at(0)},
      {"sigma_end_m", c.sigma_at(c.generations)},
      {"tournament_size", c.tournament_size},
      {"elite_count", c.elite_count},
      {"rng_seed", c.rng_seed},
      {"bounds",
       {{"x_min", c.bounds.x_min}, {"x_max", c.bounds.x_max}, {"y_min", c.bounds.y_min}, {"y_max", c.bounds.y_max}}},
      {"fixed_boundary", c.fixed_boundary},
      {"min_spacing_factor", c.min_spacing_factor},
      {"wake_mode", to_string(c.wake_mode)},
      {"repair_iterations", c.repair_iterations},
      {"placement_attempts", c.placement_attempts},
  };
}

double required_spacing(const TurbineSpec& a, const TurbineSpec& b, const GAConfig& config) {
  return config.min_spacing_factor * std::max(a.rotor_diameter, b.rotor_diameter);
}

bool is_feasible(const Genome& genome, const GAConfig& config, const TurbineCatalog& catalog) {
  if (genome.turbines.size() != config.turbine_count) return false;
  if (!config.bounds.contains(genome.substation)) return false;
  for (const auto& t : genome.turbines)
    if (t.spec >= catalog.size() || !config.bounds.contains(t.position)) return false;
  for (std::size_t j = 0; j < genome.turbines.size(); ++j)
    if (conflicts(genome, j, config, catalog)) return false;
  return true;
}

void repair(Genome& g, const GAConfig& config, const TurbineCatalog& catalog, Rng& rng) {
  const auto& box = config.bounds;
  for (auto& t : g.turbines) t.position = box.clamp(t.position);
  g.substation = box.clamp(g.substation);

  const std::size_t n = g.turbines.size();
  for (std::size_t iter = 0; iter < config.repair_iterations; ++iter) {
    bool moved = false;
    for (std::size_t i = 0; i < n && !moved; ++i)
      for (std::size_t j = i + 1; j < n && !moved; ++j) {
        auto& a = g.turbines[i];
        auto& b = g.turbines[j];
        const double need = required_spacing(catalog[a.spec], catalog[b.spec], config);
        const double dist = distance(a.position, b.position);
        if (dist >= need) continue;
        Point axis;
        if (dist > 1e-9) {
          axis = {(b.position.x - a.position.x) / dist, (b.position.y - a.position.y) / dist};
        } else {
          const double angle = uniform(rng, 0.0, 2.0 * kPi);
          axis = {std::cos(angle), std::sin(angle)};
        }
        const double step = need * (1.0 + 1e-6);
        b.position = box.clamp({a.position.x + axis.x * step, a.position.y + axis.y * step});
        moved = true;
      }
    if (!moved) return;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!conflicts(g, j, config, catalog)) continue;
    if (!place(g, j, n, box, config, catalog, rng))
      throw InfeasibleError("min_spacing", "could not re-sample turbine " + std::to_string(j) +
                                               " clear of its neighbours");
  }
}

FarmLayout to_layout(const Genome& genome, const GAConfig& config) {
  FarmLayout layout;
  layout.turbines.reserve(genome.turbines.size());
  for (const auto& t : genome.turbines) layout.turbines.push_back({t.position, t.spec});
  layout.substation = genome.substation;
  if (config.fixed_boundary) layout.boundary = config.bounds;
  return layout;
}

std::vector<Genome> initialize_population(const GAConfig& config, const TurbineCatalog& catalog,
                                          Rng& rng) {
  config.validate();
  if (catalog.empty()) throw DomainError("turbine catalog is empty");
  const auto& box = config.bounds;
  std::vector<Genome> population;
  population.reserve(config.population_size);
  for (std::size_t p = 0; p < config.population_size; ++p) {
    Genome g;
    g.turbines.resize(config.turbine_count);
    double fraction = uniform(rng, 0.2, 1.0);
    for (;;) {
      const double w = fraction * box.width();
      const double h = fraction * box.height();
      const double x0 = uniform(rng, box.x_min, box.x_max - w);
      const double y0 = uniform(rng, box.y_min, box.y_max - h);
      const Rect window{x0, x0 + w, y0, y0 + h};
      bool ok = true;
      for (std::size_t j = 0; j < config.turbine_count && ok; ++j) {
        g.turbines[j].spec = uniform_index(rng, catalog.size());
        ok = place(g, j, j, window, config, catalog, rng);
      }
      if (ok) {
        g.substation = {uniform(rng, window.x_min, window.x_max),
                        uniform(rng, window.y_min, window.y_max)};
        break;
      }
      if (fraction >= 1.0)
        throw InfeasibleError("min_spacing", "cannot fit " + std::to_string(config.turbine_count) +
                                                 " turbines at " +
                                                 std::to_string(config.min_spacing_factor) +
                                                 " rotor diameters inside the site");
      fraction = std::min(1.0, fraction * 1.5);
    }
    population.push_back(std::move(g));
  }
  return population;
}

double fitness(const Genome& genome, const SiteModel& site, const GAConfig& config) {
  return evaluate(to_layout(genome, config), site, config.wake_mode).aeb;
}

std::vector<double> evaluate_population(std::span<const Genome> genomes, const SiteModel& site,
                                        const GAConfig& config) {
  std::vector<double> out(genomes.size(), 0.0);
  const std::size_t workers = std::min<std::size_t>(std::max(1u, config.threads), genomes.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < genomes.size(); ++i) out[i] = fitness(genomes[i], site, config);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < genomes.size(); i += workers)
            out[i] = fitness(genomes[i], site, config);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<Individual> step_generation(std::span<const Individual> population,
                                        const GAConfig& config, const SiteModel& site, Rng& rng,
                                        std::size_t generation) {
  std::vector<std::size_t> order(population.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return population[a].fitness > population[b].fitness;
  });

  std::vector<Individual> next;
  next.reserve(config.population_size);
  for (std::size_t e = 0; e < std::min(config.elite_count, order.size()); ++e)
    next.push_back(population[order[e]]);

  const double sigma = config.sigma_at(generation);
  std::vector<Genome> children;
  const std::size_t needed = config.population_size - next.size();
  while (children.size() < needed) {
    Genome a = population[tournament(population, config.tournament_size, rng)].genome;
    Genome b = population[tournament(population, config.tournament_size, rng)].genome;
    if (chance(rng, config.crossover_rate)) crossover(a, b, rng);
    mutate(a, config, site.catalog, sigma, rng);
    mutate(b, config, site.catalog, sigma, rng);
    repair(a, config, site.catalog, rng);
    children.push_back(std::move(a));
    if (children.size() < needed) {
      repair(b, config, site.catalog, rng);
      children.push_back(std::move(b));
    }
  }
  const auto scores = evaluate_population(children, site, config);
  for (std::size_t i = 0; i < children.size(); ++i)
    next.push_back({std::move(children[i]), scores[i]});
  return next;
}

OptimizationResult run(const GAConfig& config, const SiteModel& site) {
  config.validate();
  site.costs.validate();
  Rng rng(config.rng_seed);

  auto genomes = initialize_population(config, site.catalog, rng);
  const auto scores = evaluate_population(genomes, site, config);
  std::vector<Individual> population;
  population.reserve(genomes.size());
  for (std::size_t i = 0; i < genomes.size(); ++i) population.push_back({std::move(genomes[i]), scores[i]});

  OptimizationResult result;
  result.config = config;
  double best = population.front().fitness;
  result.best = population.front().genome;
  auto track_best = [&](const std::vector<Individual>& pop) {
    for (const auto& ind : pop)
      if (ind.fitness > best) {
        best = ind.fitness;
        result.best = ind.genome;
      }
  };
  track_best(population);
  result.trace.push_back(stats(population, 0, best));

  for (std::size_t g = 1; g <= config.generations; ++g) {
    population = step_generation(population, config, site, rng, g - 1);
    track_best(population);
    result.trace.push_back(stats(population, g, best));
  }

  result.layout = to_layout(result.best, config);
  validate_layout(result.layout, site.catalog, config.min_spacing_factor);
  result.report = evaluate(result.layout, site, config.wake_mode);
  return result;
}

nlohmann::json result_to_json(const OptimizationResult& result, const TurbineCatalog& catalog) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& s : result.trace) trace.push_back({{"generation", s.generation}, {"best", s.best}, {"mean", s.mean}});
  return nlohmann::json{{"layout", layout_to_json(result.layout, catalog)},
                        {"report", result.report},
                        {"config", result.config},
                        {"rng_seed", result.config.rng_seed},
                        {"trace", std::move(trace)}};
}

std::string trace_csv(const OptimizationResult& result) {
  std::ostringstream os;
  os.precision(17);
  os << "generation,best_aeb_musd,mean_aeb_musd\n";
  for (const auto& s : result.trace) os << s.generation << ',' << s.best << ',' << s.mean << '\n';
  return os.str();
}

}  // namespace windfarm
