#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "gaseg/clustering.hpp"
#include "gaseg/random.hpp"

namespace gaseg {

/// Concatenated per-bin cluster labels, ceil(log2 c) bits per bin, most
/// significant bit first. One byte per bit.
struct Chromosome {
  std::vector<std::uint8_t> bits;

  std::size_t size() const { return bits.size(); }
  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

enum class MutationMode {
  /// With probability `rate`, flip one uniformly chosen bit.
  per_chromosome,
  /// Flip every bit independently with probability `rate`.
  per_bit,
};

std::string_view to_string(MutationMode mode);
MutationMode parse_mutation_mode(std::string_view text);

struct GaConfig {
  int clusters = 2;
  int population = 50;
  int generations = 10000;
  double crossover_rate = 0.95;
  double mutation_rate = 0.85;
  MutationMode mutation_mode = MutationMode::per_chromosome;
  int elitism = 1;
  int tournament_size = 2;
  std::uint64_t seed = 1;
  /// Halt after this many consecutive generations without a best-J improvement.
  std::optional<int> early_stop_stall;

  void validate() const;
};

struct GenerationStats {
  double best_j = 0.0;
  double mean_j = 0.0;
};

struct GaResult {
  Assignment best_assignment;
  Chromosome best_chromosome;
  double best_j = 0.0;
  /// Entry 0 is the initial population, entry g the population after generation g.
  std::vector<GenerationStats> history;
  int generations_run = 0;
  std::chrono::duration<double> elapsed{};
};

struct Individual {
  Chromosome chrom;
  double j = 0.0;
};

/// ceil(log2 c) for c >= 2.
int bits_per_label(int clusters);

/// n * ceil(log2 c).
std::size_t chromosome_length(std::size_t bins, int clusters);

Assignment decode(const Chromosome& chrom, std::size_t bins, int clusters);

/// J of the decoded assignment; lower is fitter.
double fitness(const Chromosome& chrom, const BinnedHistogram& bins, int clusters);

Chromosome random_chromosome(std::size_t length, Rng& rng);

/// Index of the tournament winner among the drawn indices: lowest J, ties to
/// the first drawn.
std::size_t tournament_winner(std::span<const Individual> pop, std::span<const std::size_t> draws);

/// Draws `size` indices uniformly with replacement and returns the winner's index.
std::size_t tournament_select(std::span<const Individual> pop, int size, Rng& rng);

/// Swaps suffixes starting at `cut`, 1 <= cut <= L-1.
std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& p1, const Chromosome& p2,
                                               std::size_t cut);

/// Single-point crossover with probability `rate`; otherwise copies of the parents.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& p1, const Chromosome& p2,
                                            double rate, Rng& rng);

Chromosome mutate(Chromosome chrom, double rate, MutationMode mode, Rng& rng);

/// Runs the generational GA. Deterministic given cfg.seed.
GaResult evolve(const BinnedHistogram& bins, const GaConfig& cfg);

}  // namespace gaseg
