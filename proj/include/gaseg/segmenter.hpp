#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaseg/clustering.hpp"
#include "gaseg/image.hpp"

namespace gaseg {

/// Per-pixel cluster labels, same dimensions as the source image.
struct LabelImage {
  std::size_t width = 0;
  std::size_t height = 0;
  int clusters = 1;
  std::vector<int> labels;
};

struct ClusterSummary {
  int label = 0;
  std::uint64_t pixels = 0;
  bool occupied = false;
  Vec3 centroid{};
  /// Centroid rounded half-up per channel.
  Rgb colour;
};

struct SegmentationReport {
  std::string mode = "ga";
  int clusters = 1;
  int side = kDefaultSide;
  std::uint64_t seed = 0;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t distinct_colours = 0;
  std::size_t bins = 0;
  std::size_t chromosome_length = 0;
  int generations_run = 0;
  /// J of the rendered assignment over bin centres.
  double j = 0.0;
  /// The same partition's J over raw pixel colours; differs from j by the
  /// intra-voxel quantisation error.
  double j_pixels = 0.0;
  std::optional<double> ga_j;
  std::optional<double> lloyd_j;
  std::optional<double> oracle_j;
  std::vector<ClusterSummary> per_cluster;
};

/// Labels every pixel with the cluster of its voxel bin.
LabelImage assign_pixels(const PixelGrid& grid, const BinnedHistogram& bins, const Assignment& asg);

/// Per-cluster pixel counts and mean colours for a labelled image.
std::vector<ClusterSummary> summarize_clusters(const LabelImage& labels, const Centroids& cen);

/// Rebuilds the voxel histogram from the labelled image (each pixel replaced
/// by its bin centre) and evaluates J on it. Throws ConsistencyError when
/// two pixels of one voxel carry different labels.
double recompute_j_bin_centres(const PixelGrid& grid, const LabelImage& labels, int side);

/// J of the labelled partition over the raw pixel colours, using centroids
/// of the raw colours.
double raw_pixel_j(const PixelGrid& grid, const LabelImage& labels);

/// Rounds half-up and clamps to [0, 255].
Rgb to_display(const Vec3& colour);

/// Each pixel painted with its cluster's display colour.
PixelGrid palette_image(const LabelImage& labels, const SegmentationReport& report);

/// 255 where the pixel belongs to `cluster`, 0 elsewhere.
std::vector<std::uint8_t> cluster_mask(const LabelImage& labels, int cluster);

nlohmann::ordered_json to_json(const SegmentationReport& report);

struct RenderedFiles {
  std::filesystem::path palette;
  std::vector<std::filesystem::path> masks;
  std::filesystem::path report;
};

/// Writes palette.png, cluster_<i>.png for every cluster and report.json.
RenderedFiles render(const LabelImage& labels, const SegmentationReport& report,
                     const std::filesystem::path& outdir);

}  // namespace gaseg
