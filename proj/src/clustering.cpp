#include "gaseg/clustering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "gaseg/error.hpp"
#include "gaseg/random.hpp"

namespace gaseg {

namespace {

void accumulate_centroids(const BinnedHistogram& bins, std::span<const int> labels, int clusters,
                          Centroids& out) {
  const auto c = static_cast<std::size_t>(clusters);
  out.centres.assign(c, Vec3{0.0, 0.0, 0.0});
  out.weights.assign(c, 0);
  out.occupied.assign(c, false);
  std::vector<Vec3> sums(c, Vec3{0.0, 0.0, 0.0});
  for (std::size_t j = 0; j < bins.bins.size(); ++j) {
    const auto i = static_cast<std::size_t>(labels[j]);
    const auto& bin = bins.bins[j];
    const auto f = static_cast<double>(bin.frequency);
    for (int k = 0; k < 3; ++k) sums[i][k] += f * bin.centre[k];
    out.weights[i] += bin.frequency;
  }
  for (std::size_t i = 0; i < c; ++i) {
    if (out.weights[i] == 0) continue;
    out.occupied[i] = true;
    const auto w = static_cast<double>(out.weights[i]);
    for (int k = 0; k < 3; ++k) out.centres[i][k] = sums[i][k] / w;
  }
}

double accumulate_objective(const BinnedHistogram& bins, std::span<const int> labels,
                            const Centroids& cen) {
  double j = 0.0;
  for (std::size_t b = 0; b < bins.bins.size(); ++b) {
    const auto i = static_cast<std::size_t>(labels[b]);
    if (!cen.occupied[i]) continue;
    const auto& bin = bins.bins[b];
    j += static_cast<double>(bin.frequency) * squared_distance(bin.centre, cen.centres[i]);
  }
  return j;
}

LloydResult lloyd_iterate(const BinnedHistogram& bins, Centroids cen, std::vector<int> labels,
                          int max_iter) {
  const std::size_t n = bins.bins.size();
  const auto c = cen.centres.size();
  LloydResult result;
  result.assignment.clusters = static_cast<int>(c);
  Centroids updated;
  for (int iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    for (std::size_t j = 0; j < n; ++j) {
      const int label = nearest_centre(bins.bins[j].centre, cen);
      if (label != labels[j]) {
        labels[j] = label;
        changed = true;
      }
    }
    if (!changed) {
      result.converged = true;
      break;
    }
    accumulate_centroids(bins, labels, static_cast<int>(c), updated);
    // An emptied cluster keeps its previous centre as a candidate.
    for (std::size_t i = 0; i < c; ++i) {
      if (updated.occupied[i]) {
        cen.centres[i] = updated.centres[i];
        cen.weights[i] = updated.weights[i];
      } else {
        cen.weights[i] = 0;
      }
    }
    result.history.push_back(accumulate_objective(bins, labels, updated));
    result.iterations = iter + 1;
  }
  result.assignment.labels = std::move(labels);
  result.j = objective_j(bins, result.assignment);
  if (result.history.empty()) result.history.push_back(result.j);
  return result;
}

}  // namespace

double squared_distance(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

void check_assignment(const BinnedHistogram& bins, const Assignment& asg) {
  if (asg.clusters < 1) throw ConfigError("cluster count must be at least 1");
  if (asg.labels.size() != bins.bins.size()) {
    throw ConsistencyError("assignment has " + std::to_string(asg.labels.size()) +
                           " labels for " + std::to_string(bins.bins.size()) + " bins");
  }
  for (const int label : asg.labels) {
    if (label < 0 || label >= asg.clusters) {
      throw ConsistencyError("label " + std::to_string(label) + " outside [0, " +
                             std::to_string(asg.clusters) + ")");
    }
  }
}

Centroids weighted_centroids(const BinnedHistogram& bins, const Assignment& asg) {
  check_assignment(bins, asg);
  Centroids out;
  accumulate_centroids(bins, asg.labels, asg.clusters, out);
  return out;
}

double objective_j(const BinnedHistogram& bins, const Assignment& asg, const Centroids& cen) {
  check_assignment(bins, asg);
  if (cen.clusters() != asg.clusters || cen.occupied.size() != cen.centres.size()) {
    throw ConsistencyError("centroids have " + std::to_string(cen.clusters()) +
                           " clusters, assignment has " + std::to_string(asg.clusters));
  }
  return accumulate_objective(bins, asg.labels, cen);
}

double objective_j(const BinnedHistogram& bins, const Assignment& asg) {
  return objective_j(bins, asg, weighted_centroids(bins, asg));
}

int nearest_centre(const Vec3& point, const Centroids& cen) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cen.clusters(); ++i) {
    if (!cen.occupied[static_cast<std::size_t>(i)]) continue;
    const double d = squared_distance(point, cen.centres[static_cast<std::size_t>(i)]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  if (best < 0) throw ConsistencyError("no occupied centre to assign to");
  return best;
}

LloydResult lloyd_kmeans(const BinnedHistogram& bins, int clusters, std::uint64_t seed,
                         int max_iter) {
  if (clusters < 1) throw ConfigError("cluster count must be at least 1");
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
  if (bins.bins.empty()) throw EmptyInputError("lloyd_kmeans needs at least one bin");
  const std::size_t n = bins.bins.size();
  const auto c = static_cast<std::size_t>(clusters);

  LloydResult result;
  result.assignment.clusters = clusters;
  if (c >= n) {
    result.assignment.labels.resize(n);
    std::iota(result.assignment.labels.begin(), result.assignment.labels.end(), 0);
    result.j = objective_j(bins, result.assignment);
    result.history.push_back(result.j);
    result.iterations = 1;
    result.converged = true;
    return result;
  }

  // Seeds: c distinct bins by partial Fisher-Yates.
  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t k = 0; k < c; ++k) {
    std::swap(order[k], order[k + rng.below(n - k)]);
  }
  Centroids cen;
  cen.centres.resize(c);
  cen.weights.assign(c, 0);
  cen.occupied.assign(c, true);
  for (std::size_t k = 0; k < c; ++k) cen.centres[k] = bins.bins[order[k]].centre;
  return lloyd_iterate(bins, std::move(cen), std::vector<int>(n, -1), max_iter);
}

LloydResult lloyd_refine(const BinnedHistogram& bins, const Assignment& start, int max_iter) {
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
  Centroids cen = weighted_centroids(bins, start);
  // Unoccupied clusters never attract a bin.
  return lloyd_iterate(bins, std::move(cen), start.labels, max_iter);
}

LloydResult lloyd_best_of(const BinnedHistogram& bins, int clusters, std::uint64_t seed,
                          int restarts, int max_iter) {
  if (restarts < 1) throw ConfigError("restarts must be at least 1");
  LloydResult best = lloyd_kmeans(bins, clusters, seed, max_iter);
  for (int r = 1; r < restarts; ++r) {
    LloydResult trial = lloyd_kmeans(bins, clusters, seed + static_cast<std::uint64_t>(r), max_iter);
    if (trial.j < best.j) best = std::move(trial);
  }
  return best;
}

bool oracle_fits(std::size_t bins, int clusters) {
  if (clusters < 1) return false;
  std::uint64_t space = 1;
  for (std::size_t j = 0; j < bins; ++j) {
    space *= static_cast<std::uint64_t>(clusters);
    if (space > kOracleCapacity) return false;
  }
  return true;
}

OracleResult brute_force_optimum(const BinnedHistogram& bins, int clusters) {
  if (clusters < 1) throw ConfigError("cluster count must be at least 1");
  const std::size_t n = bins.bins.size();
  if (n == 0) throw EmptyInputError("brute_force_optimum needs at least one bin");
  if (!oracle_fits(n, clusters)) {
    throw CapacityError("exhaustive search needs clusters^bins <= 2^20; got " +
                        std::to_string(clusters) + "^" + std::to_string(n));
  }

  OracleResult best;
  best.assignment.clusters = clusters;
  best.j = std::numeric_limits<double>::infinity();
  std::vector<int> labels(n, 0);
  Centroids cen;
  // Odometer over label vectors in lexicographic order (first bin most significant).
  while (true) {
    accumulate_centroids(bins, labels, clusters, cen);
    const double j = accumulate_objective(bins, labels, cen);
    ++best.evaluated;
    if (j < best.j) {
      best.j = j;
      best.assignment.labels = labels;
    }
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++labels[pos] < clusters) break;
      labels[pos] = 0;
      if (pos == 0) return best;
    }
  }
}

}  // namespace gaseg
