#include "gaseg/ga.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <string>

#include "gaseg/error.hpp"

namespace gaseg {

std::string_view to_string(MutationMode mode) {
  switch (mode) {
    case MutationMode::per_chromosome:
      return "per-chromosome";
    case MutationMode::per_bit:
      return "per-bit";
  }
  return "unknown";
}

MutationMode parse_mutation_mode(std::string_view text) {
  if (text == "per-chromosome") return MutationMode::per_chromosome;
  if (text == "per-bit") return MutationMode::per_bit;
  throw ConfigError("unknown mutation mode '" + std::string(text) +
                    "' (expected per-chromosome or per-bit)");
}

void GaConfig::validate() const {
  if (clusters < 2) {
    throw ConfigError("GA needs at least 2 clusters; use Lloyd or the single-cluster J for c = 1");
  }
  if (population < 2) throw ConfigError("population must be at least 2");
  if (generations < 0) throw ConfigError("generations must be non-negative");
  if (elitism < 0 || elitism >= population) {
    throw ConfigError("elitism must be in [0, population)");
  }
  if (tournament_size < 2) throw ConfigError("tournament size must be at least 2");
  auto is_rate = [](double r) { return r >= 0.0 && r <= 1.0; };
  if (!is_rate(crossover_rate)) throw ConfigError("crossover rate must lie in [0, 1]");
  if (!is_rate(mutation_rate)) throw ConfigError("mutation rate must lie in [0, 1]");
  if (early_stop_stall && *early_stop_stall < 1) {
    throw ConfigError("early-stop stall must be at least 1 generation");
  }
}

int bits_per_label(int clusters) {
  if (clusters < 2) throw ConfigError("bit encoding needs at least 2 clusters");
  return std::bit_width(static_cast<unsigned>(clusters - 1));
}

std::size_t chromosome_length(std::size_t bins, int clusters) {
  return bins * static_cast<std::size_t>(bits_per_label(clusters));
}

Assignment decode(const Chromosome& chrom, std::size_t bins, int clusters) {
  const std::size_t width = static_cast<std::size_t>(bits_per_label(clusters));
  if (chrom.size() != bins * width) {
    throw ConsistencyError("chromosome has " + std::to_string(chrom.size()) + " bits, expected " +
                           std::to_string(bins * width));
  }
  Assignment asg;
  asg.clusters = clusters;
  asg.labels.resize(bins);
  for (std::size_t j = 0; j < bins; ++j) {
    int raw = 0;
    for (std::size_t k = 0; k < width; ++k) raw = (raw << 1) | chrom.bits[j * width + k];
    asg.labels[j] = raw % clusters;
  }
  return asg;
}

double fitness(const Chromosome& chrom, const BinnedHistogram& bins, int clusters) {
  return objective_j(bins, decode(chrom, bins.size(), clusters));
}

Chromosome random_chromosome(std::size_t length, Rng& rng) {
  Chromosome chrom;
  chrom.bits.resize(length);
  for (auto& bit : chrom.bits) bit = rng.bit() ? 1 : 0;
  return chrom;
}

std::size_t tournament_winner(std::span<const Individual> pop, std::span<const std::size_t> draws) {
  std::size_t best = draws.front();
  for (const std::size_t idx : draws.subspan(1)) {
    if (pop[idx].j < pop[best].j) best = idx;
  }
  return best;
}

std::size_t tournament_select(std::span<const Individual> pop, int size, Rng& rng) {
  if (pop.empty()) throw ConsistencyError("tournament on an empty population");
  std::vector<std::size_t> draws(static_cast<std::size_t>(std::max(size, 1)));
  for (auto& d : draws) d = rng.below(pop.size());
  return tournament_winner(pop, draws);
}

std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& p1, const Chromosome& p2,
                                               std::size_t cut) {
  if (p1.size() != p2.size()) throw ConsistencyError("crossover parents differ in length");
  if (cut < 1 || cut >= p1.size()) {
    throw ConsistencyError("crossover cut " + std::to_string(cut) + " outside [1, L-1]");
  }
  Chromosome c1 = p1;
  Chromosome c2 = p2;
  std::swap_ranges(c1.bits.begin() + static_cast<std::ptrdiff_t>(cut), c1.bits.end(),
                   c2.bits.begin() + static_cast<std::ptrdiff_t>(cut));
  return {std::move(c1), std::move(c2)};
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& p1, const Chromosome& p2,
                                            double rate, Rng& rng) {
  if (p1.size() != p2.size()) throw ConsistencyError("crossover parents differ in length");
  // A one-bit genome has no cut point.
  if (p1.size() < 2) return {p1, p2};
  if (!rng.chance(rate)) return {p1, p2};
  const std::size_t cut = 1 + rng.below(p1.size() - 1);
  return crossover_at(p1, p2, cut);
}

Chromosome mutate(Chromosome chrom, double rate, MutationMode mode, Rng& rng) {
  if (chrom.bits.empty()) return chrom;
  if (mode == MutationMode::per_chromosome) {
    if (rng.chance(rate)) chrom.bits[rng.below(chrom.size())] ^= 1;
  } else {
    for (auto& bit : chrom.bits) {
      if (rng.chance(rate)) bit ^= 1;
    }
  }
  return chrom;
}

namespace {

GenerationStats summarize(std::span<const Individual> pop) {
  GenerationStats stats{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& ind : pop) {
    stats.best_j = std::min(stats.best_j, ind.j);
    stats.mean_j += ind.j;
  }
  stats.mean_j /= static_cast<double>(pop.size());
  return stats;
}

// Population indices ordered by (J, position).
std::vector<std::size_t> ranking(std::span<const Individual> pop) {
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pop[a].j < pop[b].j; });
  return order;
}

}  // namespace

GaResult evolve(const BinnedHistogram& bins, const GaConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = bins.size();
  const std::size_t length = chromosome_length(n, cfg.clusters);
  if (length == 0) throw CapacityError("chromosome length is zero (no bins)");

  const auto pop_size = static_cast<std::size_t>(cfg.population);
  const auto elites = static_cast<std::size_t>(cfg.elitism);
  Rng rng(cfg.seed);

  std::vector<Individual> pop(pop_size);
  for (auto& ind : pop) ind.chrom = random_chromosome(length, rng);
  for (auto& ind : pop) ind.j = fitness(ind.chrom, bins, cfg.clusters);

  GaResult result;
  result.history.push_back(summarize(pop));
  Individual best = pop[ranking(pop).front()];
  int stall = 0;

  std::vector<Individual> next;
  next.reserve(pop_size);
  for (int gen = 1; gen <= cfg.generations; ++gen) {
    next.clear();
    const auto order = ranking(pop);
    for (std::size_t e = 0; e < elites; ++e) next.push_back(pop[order[e]]);
    const std::size_t first_child = next.size();

    // Every random draw for this generation happens here, in individual order.
    while (next.size() < pop_size) {
      const std::size_t a = tournament_select(pop, cfg.tournament_size, rng);
      const std::size_t b = tournament_select(pop, cfg.tournament_size, rng);
      auto [c1, c2] = crossover(pop[a].chrom, pop[b].chrom, cfg.crossover_rate, rng);
      c1 = mutate(std::move(c1), cfg.mutation_rate, cfg.mutation_mode, rng);
      c2 = mutate(std::move(c2), cfg.mutation_rate, cfg.mutation_mode, rng);
      next.push_back({std::move(c1), 0.0});
      if (next.size() < pop_size) next.push_back({std::move(c2), 0.0});
    }
    for (std::size_t i = first_child; i < next.size(); ++i) {
      next[i].j = fitness(next[i].chrom, bins, cfg.clusters);
    }
    pop.swap(next);

    result.history.push_back(summarize(pop));
    result.generations_run = gen;
    if (result.history.back().best_j < best.j) {
      best = pop[ranking(pop).front()];
      stall = 0;
    } else if (cfg.early_stop_stall && ++stall >= *cfg.early_stop_stall) {
      break;
    }
  }

  result.best_chromosome = best.chrom;
  result.best_assignment = decode(best.chrom, n, cfg.clusters);
  result.best_j = best.j;
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace gaseg
