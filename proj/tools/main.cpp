#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "simplex_margin/experiments.hpp"
#include "simplex_margin/properties.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

void print_hard_summary(const simplex_margin::HardMarginResult& result) {
  for (const auto& cell : result.cells) {
    int diverged = 0;
    int reached_zero = 0;
    double zero_epoch_sum = 0.0;
    double final_error_sum = 0.0;
    int used = 0;
    for (const auto& run : cell.runs) {
      if (run.diverged) {
        ++diverged;
        continue;
      }
      ++used;
      final_error_sum += run.final_test_zero_one;
      if (run.zero_one_zero_epoch >= 0) {
        ++reached_zero;
        zero_epoch_sum += run.zero_one_zero_epoch;
      }
    }
    std::printf(
        "%-11s delta=%.3g: mean final 0-1 %.5f, %d/%d runs hit zero (mean epoch %.1f), %d diverged\n",
        cell.loss.name().c_str(), cell.delta, used > 0 ? final_error_sum / used : 0.0,
        reached_zero, used, reached_zero > 0 ? zero_epoch_sum / reached_zero : -1.0,
        diverged);
  }
}

void print_soft_summary(const simplex_margin::SoftMarginResult& result) {
  for (const auto& row : result.slopes) {
    std::printf("alpha=%-4g slope %.4f (r^2 %.3f, %d points, %d zeros excluded)\n",
                row.alpha, row.fit.slope, row.fit.r_squared, row.fit.n_points,
                row.fit.excluded_zeros);
  }
  std::printf("slope-vs-alpha line: slope %.4f, r^2 %.3f\n", result.meta.slope,
              result.meta.r_squared);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simplex-coded multiclass classification experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment described by a config file");
  std::string config_path;
  std::string out_dir;
  std::string fault;
  std::uint64_t seed = 0;
  bool svg = false;
  int repeats = 0;
  int jobs = 0;
  run->add_option("--config", config_path, "Path to key=value config file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides config)");
  run->add_option("--seed", seed, "Base seed (overrides config and environment)");
  run->add_flag("--svg", svg, "Also emit SVG plots");
  run->add_option("--repeats", repeats, "Repeats per cell (overrides config)");
  run->add_option("--jobs", jobs, "Worker threads for independent cells");
  run->add_option("--inject-fault", fault, "Self-test hook (gradient)")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    simplex_margin::ExperimentConfig cfg = simplex_margin::parse_config_file(config_path);

    if (run->count("--seed") > 0) {
      cfg.seed = seed;
    } else if (const char* env = std::getenv("SIMPLEX_MARGIN_SEED")) {
      try {
        cfg.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw simplex_margin::ConfigError("SIMPLEX_MARGIN_SEED",
                                          std::string("not an unsigned integer: ") + env);
      }
    }
    cfg.property_options.seed = cfg.seed;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (svg) cfg.svg = true;
    if (repeats > 0) cfg.repeats = repeats;
    if (jobs > 0) cfg.jobs = jobs;
    if (!fault.empty()) {
      if (fault != "gradient") {
        throw simplex_margin::ConfigError("inject-fault", "unknown fault '" + fault + "'");
      }
      cfg.property_options.inject_gradient_fault = true;
    }

    if (cfg.experiment == "properties") {
      const int failures = simplex_margin::print_property_report(cfg.property_options);
      return failures == 0 ? kExitOk : kExitPropertyFailure;
    }
    if (cfg.experiment == "hard-margin") {
      const auto result = simplex_margin::run_hard_margin(cfg);
      print_hard_summary(result);
      std::printf("wrote %s and %s\n", result.trace_csv.c_str(), result.runs_csv.c_str());
      return kExitOk;
    }
    const auto result = simplex_margin::run_soft_margin(cfg);
    print_soft_summary(result);
    std::printf("wrote %s, %s, %s\n", result.errors_csv.c_str(), result.slopes_csv.c_str(),
                result.meta_csv.c_str());
    return kExitOk;
  } catch (const simplex_margin::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntimeError;
  }
}
