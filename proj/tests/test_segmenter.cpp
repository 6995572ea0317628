#include <doctest.h>

#include <filesystem>

#include "gaseg/error.hpp"
#include "gaseg/ga.hpp"
#include "gaseg/segmenter.hpp"
#include "gaseg/synthetic.hpp"

using namespace gaseg;

namespace {

struct Prepared {
  PixelGrid grid;
  BinnedHistogram bins;
};

Prepared prepare(PixelGrid grid, int side = 32) {
  auto bins = voxelize(build_histogram(grid), side);
  return {std::move(grid), std::move(bins)};
}

SegmentationReport report_for(const Prepared& p, const Assignment& asg, const LabelImage& labels) {
  SegmentationReport r;
  r.clusters = asg.clusters;
  r.width = p.grid.width;
  r.height = p.grid.height;
  r.bins = p.bins.size();
  const auto cen = weighted_centroids(p.bins, asg);
  r.j = objective_j(p.bins, asg, cen);
  r.j_pixels = raw_pixel_j(p.grid, labels);
  r.per_cluster = summarize_clusters(labels, cen);
  return r;
}

std::filesystem::path scratch(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / "gaseg_test_segmenter" / name;
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("assign_pixels: constant and two-colour images") {
  const auto flat = prepare(PixelGrid(5, 4, {100, 100, 100}));
  const auto lab = assign_pixels(flat.grid, flat.bins, {{0}, 3});
  CHECK(lab.width == 5);
  CHECK(lab.height == 4);
  for (int l : lab.labels) CHECK(l == 0);

  PixelGrid two(4, 1);
  two.pixels = {{10, 10, 10}, {200, 200, 200}, {200, 200, 200}, {10, 10, 10}};
  const auto p = prepare(two);
  REQUIRE(p.bins.size() == 2);
  const auto l2 = assign_pixels(p.grid, p.bins, {{0, 1}, 2});
  CHECK(l2.labels == std::vector<int>{0, 1, 1, 0});
}

TEST_CASE("assign_pixels: inconsistent inputs") {
  const auto p = prepare(PixelGrid(2, 2, {1, 2, 3}));
  PixelGrid other(1, 1, {250, 250, 250});
  CHECK_THROWS_AS(assign_pixels(other, p.bins, {{0}, 2}), ConsistencyError);
  CHECK_THROWS_AS(assign_pixels(p.grid, p.bins, {{0, 0}, 2}), ConsistencyError);
}

TEST_CASE("to_display rounds half up and clamps") {
  CHECK(to_display({15.5, 15.49, 0.5}) == Rgb{16, 15, 1});
  CHECK(to_display({-3, 255.4, 300}) == Rgb{0, 255, 255});
}

TEST_CASE("property: partition, colour consistency and exact round-trip J") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto p = prepare(granite_like(seed, 48));
    GaConfig cfg;
    cfg.clusters = 2 + static_cast<int>(seed % 3);
    cfg.generations = 200;
    cfg.seed = seed;
    const auto ga = evolve(p.bins, cfg);
    const auto labels = assign_pixels(p.grid, p.bins, ga.best_assignment);

    // Same colour, same label.
    std::vector<int> by_colour(1 << 24, -1);
    for (std::size_t i = 0; i < p.grid.pixels.size(); ++i) {
      const auto& px = p.grid.pixels[i];
      const std::size_t key = (std::size_t{px.r} << 16) | (std::size_t{px.g} << 8) | px.b;
      if (by_colour[key] >= 0) CHECK(by_colour[key] == labels.labels[i]);
      by_colour[key] = labels.labels[i];
    }

    std::vector<int> cover(labels.labels.size(), 0);
    for (int c = 0; c < cfg.clusters; ++c) {
      const auto mask = cluster_mask(labels, c);
      for (std::size_t i = 0; i < mask.size(); ++i) {
        CHECK((mask[i] == 0 || mask[i] == 255));
        cover[i] += mask[i] == 255;
      }
    }
    for (int k : cover) CHECK(k == 1);

    CHECK(recompute_j_bin_centres(p.grid, labels, p.bins.side) == ga.best_j);
  }
}

TEST_CASE("raw-pixel J matches a direct per-pixel computation") {
  PixelGrid g(3, 1);
  g.pixels = {{0, 0, 0}, {2, 0, 0}, {100, 0, 0}};
  LabelImage labels{3, 1, 2, {0, 0, 1}};
  CHECK(raw_pixel_j(g, labels) == doctest::Approx(2.0).epsilon(1e-12));
  LabelImage wrong{2, 1, 2, {0, 0}};
  CHECK_THROWS_AS(raw_pixel_j(g, wrong), ConsistencyError);
}

TEST_CASE("recompute rejects a voxel carrying two labels") {
  PixelGrid g(2, 1);
  g.pixels = {{1, 1, 1}, {2, 2, 2}};
  LabelImage labels{2, 1, 2, {0, 1}};
  CHECK_THROWS_AS(recompute_j_bin_centres(g, labels, 32), ConsistencyError);
}

TEST_CASE("render: c = 2 masks are exact complements and match the report") {
  const auto p = prepare(skin_mark(11, 64));
  GaConfig cfg;
  cfg.generations = 300;
  const auto ga = evolve(p.bins, cfg);
  const auto labels = assign_pixels(p.grid, p.bins, ga.best_assignment);
  const auto report = report_for(p, ga.best_assignment, labels);
  const auto dir = scratch("c2");
  const auto files = render(labels, report, dir);
  REQUIRE(files.masks.size() == 2);
  CHECK(files.masks[0].filename() == "cluster_0.png");
  CHECK(files.masks[1].filename() == "cluster_1.png");

  const auto m0 = load_image(files.masks[0]);
  const auto m1 = load_image(files.masks[1]);
  std::uint64_t n0 = 0;
  std::uint64_t n1 = 0;
  for (std::size_t i = 0; i < m0.pixels.size(); ++i) {
    CHECK(m0.pixels[i].r + m1.pixels[i].r == 255);
    n0 += m0.pixels[i].r == 255;
    n1 += m1.pixels[i].r == 255;
  }
  CHECK(n0 == report.per_cluster[0].pixels);
  CHECK(n1 == report.per_cluster[1].pixels);
  CHECK(n0 + n1 == p.grid.width * p.grid.height);

  const auto palette = load_image(files.palette);
  for (std::size_t i = 0; i < palette.pixels.size(); ++i) {
    CHECK(palette.pixels[i] == report.per_cluster[static_cast<std::size_t>(labels.labels[i])].colour);
  }

  const auto json = nlohmann::json::parse(read_file(files.report));
  CHECK(json["clusters"] == 2);
  CHECK(json["j"].get<double>() == report.j);
  CHECK(json["per_cluster"].size() == 2);
  CHECK(json["per_cluster"][0]["pixels"].get<std::uint64_t>() == n0);
  CHECK(json["oracle_j"].is_null());
}

TEST_CASE("render: c = 1 palette is the global mean colour") {
  PixelGrid g(2, 1);
  g.pixels = {{0, 0, 0}, {63, 63, 63}};
  const auto p = prepare(g);
  const Assignment one{std::vector<int>(p.bins.size(), 0), 1};
  const auto labels = assign_pixels(p.grid, p.bins, one);
  const auto report = report_for(p, one, labels);
  // Bin centres 15.5 and 47.5 average to 31.5, displayed as 32.
  CHECK(report.per_cluster[0].colour == Rgb{32, 32, 32});
  const auto files = render(labels, report, scratch("c1"));
  const auto palette = load_image(files.palette);
  for (const auto& px : palette.pixels) CHECK(px == Rgb{32, 32, 32});
  CHECK(files.masks.size() == 1);
}
