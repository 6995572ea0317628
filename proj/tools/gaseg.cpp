// gaseg: colour image segmentation by genetic clustering of the voxelized
// RGB histogram.
//
//   gaseg --input img.png --outdir out --clusters 3
//   gaseg synth --kind granite --out granite.png

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gaseg/error.hpp"
#include "gaseg/pipeline.hpp"
#include "gaseg/synthetic.hpp"

namespace {

int write_synthetic(const std::string& kind, const std::filesystem::path& out,
                    gaseg::SyntheticSpec spec, std::optional<std::uint64_t> seed) {
  gaseg::PixelGrid grid;
  if (kind == "clusters") {
    if (seed) spec.seed = *seed;
    grid = gaseg::make_synthetic(spec).grid;
  } else if (kind == "granite") {
    grid = seed ? gaseg::granite_like(*seed) : gaseg::granite_like();
  } else if (kind == "skin") {
    grid = seed ? gaseg::skin_mark(*seed) : gaseg::skin_mark();
  } else if (kind == "map") {
    grid = seed ? gaseg::colour_map(*seed) : gaseg::colour_map();
  } else {
    throw gaseg::ConfigError("unknown synthetic kind '" + kind + "'");
  }
  const auto bytes = out.extension() == ".png" ? gaseg::encode_png_rgb(grid) : gaseg::encode_ppm(grid);
  gaseg::write_file(out, bytes);
  return gaseg::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Segment a colour image by genetic clustering of its RGB histogram"};
  app.set_version_flag("--version", "gaseg 1.0.0");

  gaseg::RunConfig cfg;
  std::string mode = "ga";
  std::string mutation_mode = "per-chromosome";
  int early_stop = 0;

  app.add_option("--input", cfg.input, "PNG or binary PPM (P6) image");
  app.add_option("--outdir", cfg.outdir, "Output directory")->capture_default_str();
  app.add_option("--clusters", cfg.ga.clusters, "Number of colour clusters")->capture_default_str();
  app.add_option("--side", cfg.side, "Voxel side of the colour-cube pre-partition")->capture_default_str();
  app.add_option("--pop", cfg.ga.population, "GA population size")->capture_default_str();
  app.add_option("--generations", cfg.ga.generations, "GA generation budget")->capture_default_str();
  app.add_option("--crossover-rate", cfg.ga.crossover_rate, "Single-point crossover probability")
      ->capture_default_str();
  app.add_option("--mutation-rate", cfg.ga.mutation_rate, "Mutation probability")->capture_default_str();
  app.add_option("--mutation-mode", mutation_mode, "per-chromosome | per-bit")->capture_default_str();
  app.add_option("--elitism", cfg.ga.elitism, "Individuals copied unchanged")->capture_default_str();
  app.add_option("--tournament", cfg.ga.tournament_size, "Tournament size")->capture_default_str();
  app.add_option("--seed", cfg.ga.seed, "RNG seed")->capture_default_str();
  app.add_option("--early-stop-stall", early_stop,
                 "Stop after this many generations without improvement (0 = off)")
      ->capture_default_str();
  app.add_option("--mode", mode, "ga | lloyd | oracle | all")->capture_default_str();
  app.add_option("--lloyd-restarts", cfg.lloyd_restarts, "Lloyd restarts (best kept)")->capture_default_str();
  app.add_option("--lloyd-max-iter", cfg.lloyd_max_iter, "Lloyd iteration cap")->capture_default_str();

  auto* synth = app.add_subcommand("synth", "Write a synthetic test image (PPM, or PNG by extension)");
  std::string kind = "clusters";
  std::filesystem::path synth_out;
  gaseg::SyntheticSpec spec;
  synth->add_option("--kind", kind, "clusters | granite | skin | map")->capture_default_str();
  synth->add_option("--out", synth_out, "Output file")->required();
  synth->add_option("--groups", spec.groups, "Colour groups (clusters kind)")->capture_default_str();
  synth->add_option("--points", spec.points_per_group, "Pixels per group")->capture_default_str();
  synth->add_option("--separation", spec.separation, "Voxels between groups")->capture_default_str();
  synth->add_option("--side", spec.side, "Voxel side")->capture_default_str();
  std::optional<std::uint64_t> synth_seed;
  synth->add_option("--seed", synth_seed, "RNG seed (each kind has its own default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? gaseg::kExitOk : gaseg::kExitUsage;
  }

  try {
    if (*synth) return write_synthetic(kind, synth_out, spec, synth_seed);
    if (cfg.input.empty()) {
      std::cerr << "error [configure]: --input is required\n";
      return gaseg::kExitUsage;
    }
    cfg.mode = gaseg::parse_run_mode(mode);
    cfg.ga.mutation_mode = gaseg::parse_mutation_mode(mutation_mode);
    if (early_stop > 0) cfg.ga.early_stop_stall = early_stop;
    cfg.log = gaseg::log_level_from_env();
  } catch (const gaseg::ConfigError& e) {
    std::cerr << "error [configure]: " << e.what() << "\n";
    return gaseg::kExitUsage;
  } catch (const gaseg::Error& e) {
    std::cerr << "error [synth]: " << e.what() << "\n";
    return gaseg::kExitIo;
  }
  return gaseg::run(cfg, std::cerr);
}
