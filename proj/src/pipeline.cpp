#include "gaseg/pipeline.hpp"

#include <charconv>
#include <cstdlib>
#include <ostream>
#include <string>

#include "gaseg/error.hpp"

namespace gaseg {

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::ga:
      return "ga";
    case RunMode::lloyd:
      return "lloyd";
    case RunMode::oracle:
      return "oracle";
    case RunMode::all:
      return "all";
  }
  return "unknown";
}

RunMode parse_run_mode(std::string_view text) {
  if (text == "ga") return RunMode::ga;
  if (text == "lloyd") return RunMode::lloyd;
  if (text == "oracle") return RunMode::oracle;
  if (text == "all") return RunMode::all;
  throw ConfigError("unknown mode '" + std::string(text) + "' (expected ga, lloyd, oracle or all)");
}

LogLevel log_level_from_env() {
  const char* value = std::getenv("GASEG_LOG");
  if (value == nullptr) return LogLevel::info;
  const std::string_view v(value);
  if (v == "quiet") return LogLevel::quiet;
  if (v == "debug") return LogLevel::debug;
  return LogLevel::info;
}

std::string convergence_csv(const std::vector<GenerationStats>& rows) {
  std::string out = "generation,best_j,mean_j\n";
  for (std::size_t g = 0; g < rows.size(); ++g) {
    out += std::to_string(g);
    out += ',';
    out += format_double(rows[g].best_j);
    out += ',';
    out += format_double(rows[g].mean_j);
    out += '\n';
  }
  return out;
}

RunOutcome segment_image(const PixelGrid& grid, const RunConfig& cfg, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  const bool info = cfg.log != LogLevel::quiet;
  const int c = cfg.ga.clusters;
  if (c < 1) throw ConfigError("--clusters must be at least 1");
  if (cfg.lloyd_restarts < 1) throw ConfigError("Lloyd restarts must be at least 1");
  validate_side(cfg.side);
  if (c >= 2 && (cfg.mode == RunMode::ga || cfg.mode == RunMode::all)) cfg.ga.validate();

  const auto hist = build_histogram(grid);
  const auto bins = voxelize(hist, cfg.side);
  if (info) {
    log << "histogram: " << hist.entries.size() << " colours -> " << bins.size()
        << " bins at side " << cfg.side << "\n";
  }

  if (cfg.mode == RunMode::oracle && !oracle_fits(bins.size(), c)) {
    throw CapacityError("oracle mode needs clusters^bins <= 2^20, got " + std::to_string(c) + "^" +
                        std::to_string(bins.size()) + "; coarsen --side or use --mode ga");
  }

  RunOutcome outcome;
  auto& report = outcome.report;
  report.mode = std::string(to_string(cfg.mode));
  report.clusters = c;
  report.side = cfg.side;
  report.seed = cfg.ga.seed;
  report.width = grid.width;
  report.height = grid.height;
  report.distinct_colours = hist.entries.size();
  report.bins = bins.size();
  report.chromosome_length = c >= 2 ? chromosome_length(bins.size(), c) : 0;

  Assignment chosen;
  if (cfg.mode == RunMode::ga || cfg.mode == RunMode::all) {
    if (c == 1) {
      chosen = Assignment{std::vector<int>(bins.size(), 0), 1};
      const double j = objective_j(bins, chosen);
      outcome.convergence.push_back({j, j});
    } else {
      const GaResult ga = evolve(bins, cfg.ga);
      chosen = ga.best_assignment;
      outcome.convergence = ga.history;
      report.generations_run = ga.generations_run;
      if (info) {
        log << "ga: best J " << format_double(ga.best_j) << " after " << ga.generations_run
            << " generations\n";
      }
    }
    report.ga_j = objective_j(bins, chosen);
  }
  if (cfg.mode == RunMode::lloyd || cfg.mode == RunMode::all) {
    const LloydResult lloyd =
        lloyd_best_of(bins, c, cfg.ga.seed, cfg.lloyd_restarts, cfg.lloyd_max_iter);
    report.lloyd_j = lloyd.j;
    if (info) log << "lloyd: best-of-" << cfg.lloyd_restarts << " J " << format_double(lloyd.j) << "\n";
    if (cfg.mode == RunMode::lloyd) {
      chosen = lloyd.assignment;
      for (const double j : lloyd.history) outcome.convergence.push_back({j, j});
    }
  }
  if (cfg.mode == RunMode::oracle || cfg.mode == RunMode::all) {
    if (oracle_fits(bins.size(), c)) {
      const OracleResult oracle = brute_force_optimum(bins, c);
      report.oracle_j = oracle.j;
      if (info) log << "oracle: optimal J " << format_double(oracle.j) << "\n";
      if (cfg.mode == RunMode::oracle) {
        chosen = oracle.assignment;
        outcome.convergence.push_back({oracle.j, oracle.j});
      }
    } else if (info) {
      log << "oracle: skipped, " << c << "^" << bins.size() << " exceeds 2^20\n";
    }
  }

  const Centroids cen = weighted_centroids(bins, chosen);
  report.j = objective_j(bins, chosen, cen);
  outcome.labels = assign_pixels(grid, bins, chosen);
  report.j_pixels = raw_pixel_j(grid, outcome.labels);
  report.per_cluster = summarize_clusters(outcome.labels, cen);
  outcome.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return outcome;
}

void write_outputs(const RunOutcome& outcome, const RunConfig& cfg) {
  render(outcome.labels, outcome.report, cfg.outdir);
  write_text(cfg.outdir / "convergence.csv", convergence_csv(outcome.convergence));
  nlohmann::ordered_json timing;
  timing["elapsed_seconds"] = outcome.elapsed_seconds;
  write_text(cfg.outdir / "timing.json", timing.dump(2) + "\n");
}

int run(const RunConfig& cfg, std::ostream& log) {
  const char* stage = "configure";
  try {
    stage = "load";
    const PixelGrid grid = load_image(cfg.input);
    stage = "segment";
    const RunOutcome outcome = segment_image(grid, cfg, log);
    stage = "render";
    write_outputs(outcome, cfg);
    if (cfg.log != LogLevel::quiet) {
      log << "wrote " << outcome.report.clusters << " masks to " << cfg.outdir.string() << "\n";
    }
    return kExitOk;
  } catch (const CapacityError& e) {
    log << "error [" << stage << "]: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ConfigError& e) {
    log << "error [" << stage << "]: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    log << "error [" << stage << "]: " << e.what() << "\n";
    return kExitIo;
  } catch (const DecodeError& e) {
    log << "error [" << stage << "]: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    log << "error [" << stage << "]: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace gaseg
