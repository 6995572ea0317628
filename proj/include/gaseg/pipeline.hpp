#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "gaseg/ga.hpp"
#include "gaseg/segmenter.hpp"

namespace gaseg {

enum class RunMode { ga, lloyd, oracle, all };

std::string_view to_string(RunMode mode);
RunMode parse_run_mode(std::string_view text);

enum class LogLevel { quiet, info, debug };

/// Reads GASEG_LOG (quiet | info | debug); defaults to info.
LogLevel log_level_from_env();

struct RunConfig {
  std::filesystem::path input;
  std::filesystem::path outdir = "out";
  int side = kDefaultSide;
  /// ga.clusters is the cluster count for every mode.
  GaConfig ga;
  RunMode mode = RunMode::ga;
  int lloyd_restarts = 20;
  int lloyd_max_iter = 300;
  LogLevel log = LogLevel::info;
};

struct RunOutcome {
  SegmentationReport report;
  LabelImage labels;
  /// Rows of convergence.csv.
  std::vector<GenerationStats> convergence;
  double elapsed_seconds = 0.0;
};

/// Segments an already decoded image; writes nothing.
RunOutcome segment_image(const PixelGrid& grid, const RunConfig& cfg, std::ostream& log);

/// `generation,best_j,mean_j` with shortest round-trip numbers.
std::string convergence_csv(const std::vector<GenerationStats>& rows);

/// Writes convergence.csv, report.json, timing.json, palette.png and the
/// cluster masks into cfg.outdir.
void write_outputs(const RunOutcome& outcome, const RunConfig& cfg);

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitIo = 2, kExitCapacity = 3 };

/// load -> histogram -> voxelize -> optimise -> label -> render. Errors are
/// reported on `log` with the failing stage and mapped to an exit code.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace gaseg
