#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gaseg/histogram.hpp"

namespace gaseg {

/// Hard partition of bins into clusters: one label in [0, clusters) per bin.
struct Assignment {
  std::vector<int> labels;
  int clusters = 1;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Frequency-weighted cluster centres. The centre of an unoccupied cluster is
/// meaningless and left at zero.
struct Centroids {
  std::vector<Vec3> centres;
  std::vector<std::uint64_t> weights;
  std::vector<bool> occupied;

  int clusters() const { return static_cast<int>(centres.size()); }
};

struct LloydResult {
  Assignment assignment;
  double j = 0.0;
  /// J after every assignment + update step.
  std::vector<double> history;
  int iterations = 0;
  bool converged = false;
};

struct OracleResult {
  Assignment assignment;
  double j = 0.0;
  std::uint64_t evaluated = 0;
};

/// Upper bound on c^n for brute_force_optimum.
inline constexpr std::uint64_t kOracleCapacity = std::uint64_t{1} << 20;

double squared_distance(const Vec3& a, const Vec3& b);

/// Throws ConsistencyError unless asg has one in-range label per bin.
void check_assignment(const BinnedHistogram& bins, const Assignment& asg);

Centroids weighted_centroids(const BinnedHistogram& bins, const Assignment& asg);

/// Frequency-weighted within-cluster sum of squared distances. Bins whose
/// cluster is unoccupied in cen contribute nothing.
double objective_j(const BinnedHistogram& bins, const Assignment& asg, const Centroids& cen);

/// weighted_centroids followed by objective_j.
double objective_j(const BinnedHistogram& bins, const Assignment& asg);

/// Label of the nearest occupied centre; ties go to the lowest index.
int nearest_centre(const Vec3& point, const Centroids& cen);

LloydResult lloyd_kmeans(const BinnedHistogram& bins, int clusters, std::uint64_t seed,
                         int max_iter = 300);

/// Lloyd iteration started from the centroids of an existing assignment.
/// The result's J never exceeds the starting assignment's J.
LloydResult lloyd_refine(const BinnedHistogram& bins, const Assignment& start, int max_iter = 300);

/// Best of `restarts` Lloyd runs seeded seed, seed+1, ...; ties keep the earliest.
LloydResult lloyd_best_of(const BinnedHistogram& bins, int clusters, std::uint64_t seed,
                          int restarts, int max_iter = 300);

/// True when clusters^bins <= kOracleCapacity.
bool oracle_fits(std::size_t bins, int clusters);

/// Exhaustive search over all label vectors. Returns the lexicographically
/// smallest J-minimising assignment.
OracleResult brute_force_optimum(const BinnedHistogram& bins, int clusters);

}  // namespace gaseg
