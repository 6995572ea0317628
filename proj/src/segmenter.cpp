#include "gaseg/segmenter.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaseg/error.hpp"

namespace gaseg {

LabelImage assign_pixels(const PixelGrid& grid, const BinnedHistogram& bins, const Assignment& asg) {
  check_assignment(bins, asg);
  const auto g = static_cast<std::size_t>(grid_size(bins.side));
  // voxel index -> position in bins, -1 when absent
  std::vector<int> lookup(g * g * g, -1);
  for (std::size_t j = 0; j < bins.bins.size(); ++j) lookup[bins.bins[j].index] = static_cast<int>(j);

  LabelImage out;
  out.width = grid.width;
  out.height = grid.height;
  out.clusters = asg.clusters;
  out.labels.resize(grid.pixels.size());
  for (std::size_t p = 0; p < grid.pixels.size(); ++p) {
    const int bin = lookup[voxel_index(grid.pixels[p], bins.side)];
    if (bin < 0) {
      throw ConsistencyError("pixel " + std::to_string(p) + " falls in a voxel absent from the bins");
    }
    out.labels[p] = asg.labels[static_cast<std::size_t>(bin)];
  }
  return out;
}

Rgb to_display(const Vec3& colour) {
  auto channel = [](double v) {
    return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
  };
  return {channel(colour[0]), channel(colour[1]), channel(colour[2])};
}

std::vector<ClusterSummary> summarize_clusters(const LabelImage& labels, const Centroids& cen) {
  if (cen.clusters() != labels.clusters) {
    throw ConsistencyError("centroid count does not match the label image's cluster count");
  }
  std::vector<ClusterSummary> out(static_cast<std::size_t>(labels.clusters));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].label = static_cast<int>(i);
    out[i].occupied = cen.occupied[i];
    out[i].centroid = cen.centres[i];
    out[i].colour = to_display(cen.centres[i]);
  }
  for (const int label : labels.labels) ++out[static_cast<std::size_t>(label)].pixels;
  return out;
}

double recompute_j_bin_centres(const PixelGrid& grid, const LabelImage& labels, int side) {
  if (grid.pixels.size() != labels.labels.size()) {
    throw ConsistencyError("label image and pixel grid differ in size");
  }
  const auto g = static_cast<std::size_t>(grid_size(side));
  std::vector<std::uint64_t> counts(g * g * g, 0);
  std::vector<int> voxel_label(g * g * g, -1);
  for (std::size_t p = 0; p < grid.pixels.size(); ++p) {
    const auto v = voxel_index(grid.pixels[p], side);
    const int label = labels.labels[p];
    if (voxel_label[v] >= 0 && voxel_label[v] != label) {
      throw ConsistencyError("voxel " + std::to_string(v) + " carries two labels");
    }
    voxel_label[v] = label;
    ++counts[v];
  }
  BinnedHistogram bins;
  bins.side = side;
  Assignment asg;
  asg.clusters = labels.clusters;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    if (counts[v] == 0) continue;
    const auto index = static_cast<std::uint32_t>(v);
    bins.bins.push_back({index, voxel_centre(index, side), counts[v]});
    bins.total += counts[v];
    asg.labels.push_back(voxel_label[v]);
  }
  return objective_j(bins, asg);
}

double raw_pixel_j(const PixelGrid& grid, const LabelImage& labels) {
  if (grid.pixels.size() != labels.labels.size()) {
    throw ConsistencyError("label image and pixel grid differ in size");
  }
  const auto c = static_cast<std::size_t>(labels.clusters);
  std::vector<Vec3> sums(c, Vec3{0, 0, 0});
  std::vector<std::uint64_t> counts(c, 0);
  for (std::size_t p = 0; p < grid.pixels.size(); ++p) {
    const auto i = static_cast<std::size_t>(labels.labels[p]);
    const auto& px = grid.pixels[p];
    sums[i][0] += px.r;
    sums[i][1] += px.g;
    sums[i][2] += px.b;
    ++counts[i];
  }
  for (std::size_t i = 0; i < c; ++i) {
    if (counts[i] == 0) continue;
    for (auto& s : sums[i]) s /= static_cast<double>(counts[i]);
  }
  double j = 0.0;
  for (std::size_t p = 0; p < grid.pixels.size(); ++p) {
    const auto& px = grid.pixels[p];
    j += squared_distance({double(px.r), double(px.g), double(px.b)},
                          sums[static_cast<std::size_t>(labels.labels[p])]);
  }
  return j;
}

PixelGrid palette_image(const LabelImage& labels, const SegmentationReport& report) {
  if (report.per_cluster.size() != static_cast<std::size_t>(labels.clusters)) {
    throw ConsistencyError("report cluster count does not match the label image");
  }
  PixelGrid out(labels.width, labels.height);
  for (std::size_t p = 0; p < labels.labels.size(); ++p) {
    out.pixels[p] = report.per_cluster[static_cast<std::size_t>(labels.labels[p])].colour;
  }
  return out;
}

std::vector<std::uint8_t> cluster_mask(const LabelImage& labels, int cluster) {
  std::vector<std::uint8_t> mask(labels.labels.size(), 0);
  for (std::size_t p = 0; p < labels.labels.size(); ++p) {
    if (labels.labels[p] == cluster) mask[p] = 255;
  }
  return mask;
}

nlohmann::ordered_json to_json(const SegmentationReport& report) {
  nlohmann::ordered_json clusters = nlohmann::ordered_json::array();
  for (const auto& cl : report.per_cluster) {
    nlohmann::ordered_json entry;
    entry["label"] = cl.label;
    entry["pixels"] = cl.pixels;
    entry["occupied"] = cl.occupied;
    entry["centroid"] = {cl.centroid[0], cl.centroid[1], cl.centroid[2]};
    entry["colour"] = {cl.colour.r, cl.colour.g, cl.colour.b};
    clusters.push_back(entry);
  }
  nlohmann::ordered_json out;
  out["mode"] = report.mode;
  out["clusters"] = report.clusters;
  out["side"] = report.side;
  out["seed"] = report.seed;
  out["width"] = report.width;
  out["height"] = report.height;
  out["distinct_colours"] = report.distinct_colours;
  out["bins"] = report.bins;
  out["chromosome_length"] = report.chromosome_length;
  out["generations_run"] = report.generations_run;
  out["j"] = report.j;
  out["j_pixels"] = report.j_pixels;
  out["ga_j"] = report.ga_j ? nlohmann::ordered_json(*report.ga_j) : nlohmann::ordered_json();
  out["lloyd_j"] = report.lloyd_j ? nlohmann::ordered_json(*report.lloyd_j) : nlohmann::ordered_json();
  out["oracle_j"] = report.oracle_j ? nlohmann::ordered_json(*report.oracle_j) : nlohmann::ordered_json();
  out["per_cluster"] = clusters;
  return out;
}

RenderedFiles render(const LabelImage& labels, const SegmentationReport& report,
                     const std::filesystem::path& outdir) {
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw IoError("cannot create " + outdir.string() + ": " + ec.message());

  RenderedFiles files;
  files.palette = outdir / "palette.png";
  write_file(files.palette, encode_png_rgb(palette_image(labels, report)));
  for (int i = 0; i < labels.clusters; ++i) {
    auto path = outdir / ("cluster_" + std::to_string(i) + ".png");
    write_file(path, encode_png_gray(labels.width, labels.height, cluster_mask(labels, i)));
    files.masks.push_back(std::move(path));
  }
  files.report = outdir / "report.json";
  const std::string text = to_json(report).dump(2) + "\n";
  write_file(files.report, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  return files;
}

}  // namespace gaseg
