// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gaseg/ga.hpp"
#include "gaseg/pipeline.hpp"
#include "gaseg/synthetic.hpp"

using namespace gaseg;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(const char* name, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] %s (%.2fs): %s\n", v.pass ? "PASS" : "FAIL", name, secs, v.detail.c_str());
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

bool rel_equal(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Random image whose colours fall in at most `voxels` voxels at side 32.
PixelGrid few_voxel_image(Rng& rng, int voxels) {
  std::vector<Rgb> lows;
  for (int v = 0; v < voxels; ++v) {
    lows.push_back({static_cast<std::uint8_t>(rng.below(8) * 32), static_cast<std::uint8_t>(rng.below(8) * 32),
                    static_cast<std::uint8_t>(rng.below(8) * 32)});
  }
  PixelGrid grid(16, 1 + rng.below(16));
  for (auto& px : grid.pixels) {
    const auto& low = lows[rng.below(lows.size())];
    px = {static_cast<std::uint8_t>(low.r + rng.below(32)), static_cast<std::uint8_t>(low.g + rng.below(32)),
          static_cast<std::uint8_t>(low.b + rng.below(32))};
  }
  return grid;
}

struct Scenario {
  const char* name;
  PixelGrid grid;
  int clusters;
};

std::vector<Scenario> scenarios() {
  return {{"granite-like", granite_like(), 3}, {"skin-mark", skin_mark(), 2}, {"colour-map", colour_map(), 6}};
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / "gaseg_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  criterion("encoding arithmetic L = n*ceil(log2 c)", [] {
    const bool ok = chromosome_length(62, 3) == 124 && chromosome_length(64, 2) == 64 &&
                    chromosome_length(156, 6) == 468;
    return Verdict{ok, "(62,3)->" + std::to_string(chromosome_length(62, 3)) + " (64,2)->" +
                           std::to_string(chromosome_length(64, 2)) + " (156,6)->" +
                           std::to_string(chromosome_length(156, 6))};
  });

  criterion("pre-partition bound: <= 512 bins at side 32, frequencies conserve pixels", [] {
    Rng rng(512);
    std::vector<PixelGrid> images = {granite_like(), skin_mark(), colour_map()};
    PixelGrid noise(256, 256);
    for (auto& px : noise.pixels) {
      px = {static_cast<std::uint8_t>(rng.next()), static_cast<std::uint8_t>(rng.next()),
            static_cast<std::uint8_t>(rng.next())};
    }
    images.push_back(noise);
    for (int k = 0; k < 30; ++k) images.push_back(few_voxel_image(rng, 1 + static_cast<int>(rng.below(40))));
    std::size_t max_bins = 0;
    for (const auto& img : images) {
      const auto bins = voxelize(build_histogram(img), 32);
      std::uint64_t sum = 0;
      for (const auto& b : bins.bins) sum += b.frequency;
      if (bins.size() > 512 || sum != img.width * img.height) {
        return Verdict{false, "violated on a " + std::to_string(img.width) + "x" + std::to_string(img.height) + " image"};
      }
      max_bins = std::max(max_bins, bins.size());
    }
    return Verdict{true, std::to_string(images.size()) + " images, max bins " + std::to_string(max_bins)};
  });

  criterion("oracle suite: GA hits the exhaustive optimum on >= 95% of 100 runs, < 120 s", [] {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(2000);
    int hits = 0;
    int runs = 0;
    for (int inst = 0; inst < 20; ++inst) {
      const int c = 2 + inst % 2;
      BinnedHistogram bins;
      do {
        bins = voxelize(build_histogram(few_voxel_image(rng, 2 + static_cast<int>(rng.below(7)))), 32);
      } while (bins.size() < 2 || bins.size() > 8);
      const double optimum = brute_force_optimum(bins, c).j;
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        GaConfig cfg;
        cfg.clusters = c;
        cfg.population = 50;
        cfg.generations = 2000;
        cfg.seed = seed;
        const auto r = evolve(bins, cfg);
        ++runs;
        if (rel_equal(r.best_j, optimum, 1e-9)) ++hits;
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double rate = static_cast<double>(hits) / runs;
    return Verdict{rate >= 0.95 && secs < 120.0,
                   std::to_string(hits) + "/" + std::to_string(runs) + " optimal, " + std::to_string(secs) + " s"};
  });

  criterion("monotonicity: Lloyd J per iteration and GA best J per generation, 100 instances each", [] {
    Rng rng(100);
    int lloyd_violations = 0;
    int ga_violations = 0;
    for (int inst = 0; inst < 100; ++inst) {
      const auto bins = voxelize(build_histogram(few_voxel_image(rng, 2 + static_cast<int>(rng.below(60)))), 32);
      const int c = 2 + static_cast<int>(rng.below(5));
      const auto lloyd = lloyd_kmeans(bins, c, rng.next());
      for (std::size_t k = 1; k < lloyd.history.size(); ++k) lloyd_violations += lloyd.history[k] > lloyd.history[k - 1];
      GaConfig cfg;
      cfg.clusters = c;
      cfg.generations = 300;
      cfg.seed = rng.next();
      const auto ga = evolve(bins, cfg);
      for (std::size_t g = 1; g < ga.history.size(); ++g) ga_violations += ga.history[g].best_j > ga.history[g - 1].best_j;
    }
    return Verdict{lloyd_violations == 0 && ga_violations == 0,
                   "Lloyd violations " + std::to_string(lloyd_violations) + ", GA violations " +
                       std::to_string(ga_violations)};
  });

  criterion("weighted objective unit values to 1e-12", [] {
    auto bins_of = [](std::uint64_t f0, std::uint64_t f1) {
      BinnedHistogram b;
      b.bins = {{0, {0, 0, 0}, f0}, {1, {4, 0, 0}, f1}};
      b.total = f0 + f1;
      return b;
    };
    const auto base = bins_of(3, 1);
    const Assignment together{{0, 0}, 1};
    const double j12 = objective_j(base, together);
    const double j0 = objective_j(base, {{0, 1}, 2});
    const double j120 = objective_j(bins_of(30, 10), together);
    bool ok = std::abs(j12 - 12.0) <= 1e-12 && std::abs(j0) <= 1e-12 && std::abs(j120 - 120.0) <= 1e-12;
    for (std::uint64_t k : {2, 7, 1000}) ok = ok && std::abs(objective_j(bins_of(3 * k, k), together) - 12.0 * k) <= 1e-12 * k;
    std::ostringstream d;
    d.precision(17);
    d << "J=" << j12 << ", split J=" << j0 << ", x10 J=" << j120;
    return Verdict{ok, d.str()};
  });

  for (const auto& sc : scenarios()) {
    const std::string name = std::string("baseline parity on ") + sc.name +
                             ": GA J <= 1.05 x best-of-20 Lloyd J at defaults, < 60 s";
    criterion(name.c_str(), [&] {
      const auto bins = voxelize(build_histogram(sc.grid), 32);
      GaConfig cfg;
      cfg.clusters = sc.clusters;
      const auto ga = evolve(bins, cfg);
      const auto lloyd = lloyd_best_of(bins, sc.clusters, 1, 20);
      const double ratio = ga.best_j / lloyd.j;
      std::ostringstream d;
      d.precision(10);
      d << bins.size() << " bins, GA J " << ga.best_j << ", Lloyd J " << lloyd.j << ", ratio " << ratio
        << ", GA " << ga.elapsed.count() << " s";
      return Verdict{ratio <= 1.05 && ga.elapsed.count() < 60.0, d.str()};
    });
  }

  criterion("determinism: identical config and seed give byte-identical outputs", [&] {
    std::size_t compared = 0;
    for (const auto& sc : scenarios()) {
      const auto input = work / (std::string(sc.name) + ".png");
      write_file(input, encode_png_rgb(sc.grid));
      RunConfig cfg;
      cfg.input = input;
      cfg.ga.clusters = sc.clusters;
      cfg.log = LogLevel::quiet;
      std::ostringstream log;
      for (const char* run_name : {"run1", "run2"}) {
        cfg.outdir = work / sc.name / run_name;
        if (run(cfg, log) != kExitOk) return Verdict{false, log.str()};
      }
      std::vector<std::string> files = {"convergence.csv", "report.json", "palette.png"};
      for (int i = 0; i < sc.clusters; ++i) files.push_back("cluster_" + std::to_string(i) + ".png");
      for (const auto& f : files) {
        if (read_file(work / sc.name / "run1" / f) != read_file(work / sc.name / "run2" / f)) {
          return Verdict{false, std::string(sc.name) + "/" + f + " differs"};
        }
        ++compared;
      }
    }
    return Verdict{true, std::to_string(compared) + " file pairs identical"};
  });

  criterion("segmentation partition: masks disjoint, union-complete, c = 2 complementary", [&] {
    std::string detail;
    for (const auto& sc : scenarios()) {
      const auto dir = work / sc.name / "run1";
      std::vector<PixelGrid> masks;
      for (int i = 0; i < sc.clusters; ++i) masks.push_back(load_image(dir / ("cluster_" + std::to_string(i) + ".png")));
      for (std::size_t p = 0; p < sc.grid.pixels.size(); ++p) {
        int members = 0;
        for (const auto& m : masks) {
          if (m.pixels[p].r != 0 && m.pixels[p].r != 255) return Verdict{false, "non-binary mask"};
          members += m.pixels[p].r == 255;
        }
        if (members != 1) return Verdict{false, std::string(sc.name) + ": pixel in " + std::to_string(members) + " masks"};
      }
      if (sc.clusters == 2) {
        for (std::size_t p = 0; p < sc.grid.pixels.size(); ++p) {
          if (masks[0].pixels[p].r != 255 - masks[1].pixels[p].r) return Verdict{false, "c=2 masks not complementary"};
        }
        detail += std::string(sc.name) + " complementary; ";
      }
    }
    return Verdict{true, detail + "all three scenarios partition the frame"};
  });

  criterion("round-trip J: label image with bin-centre substitution reproduces the reported J exactly", [] {
    std::ostringstream d;
    d.precision(17);
    bool ok = true;
    for (const auto& sc : scenarios()) {
      RunConfig cfg;
      cfg.ga.clusters = sc.clusters;
      cfg.ga.generations = 2000;
      cfg.log = LogLevel::quiet;
      std::ostringstream log;
      const auto out = segment_image(sc.grid, cfg, log);
      const double again = recompute_j_bin_centres(sc.grid, out.labels, cfg.side);
      ok = ok && again == out.report.j;
      d << sc.name << " J " << out.report.j << " (raw-pixel J " << out.report.j_pixels << "); ";
    }
    return Verdict{ok, d.str()};
  });

  std::printf("%d criterion failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
