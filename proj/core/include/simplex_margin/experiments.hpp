#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "simplex_margin/losses.hpp"
#include "simplex_margin/properties.hpp"
#include "simplex_margin/rate_fit.hpp"
#include "simplex_margin/trainer.hpp"

namespace simplex_margin {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field_name, const std::string& why)
      : std::runtime_error("config error in '" + field_name + "': " + why),
        field(std::move(field_name)) {}
  std::string field;
};

/// Flat key=value experiment description; lists are comma-separated.
/// Recognized keys: experiment, losses, delta, alpha, n, train_n, test_n,
/// repeats, seed, rff_features, bandwidth, step_size (number or "auto"),
/// lambda, max_epochs, eval_every, stop_grad_norm, out_dir, svg, jobs.
struct ExperimentConfig {
  std::string experiment;  // hard-margin | soft-margin | properties

  std::vector<SurrogateLoss> losses;
  std::vector<double> deltas{0.1, 0.2};
  std::vector<double> alphas{0.5, 1.0, 2.0, 3.0, 4.0};
  std::vector<int> train_sizes{250, 500, 1000, 2000, 4000};  // soft-margin n list

  int train_n = 500;  // hard-margin train size
  int test_n = 0;     // 0 -> experiment default
  int repeats = 20;
  std::uint64_t seed = 20260810;

  int rff_features = 300;
  double bandwidth = 0.5;

  double step_size = 0.0;  // 0 -> auto (0.5/L)
  double lambda = 1e-4;
  int max_epochs = 2000;
  int eval_every = 0;  // 0 -> experiment default
  double stop_grad_norm = -1.0;  // <0 -> experiment default

  std::string out_dir = "out";
  bool svg = false;
  int jobs = 1;

  PropertyOptions property_options;  // used when experiment == properties
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

struct HardMarginRunStats {
  bool diverged = false;
  double final_test_zero_one = 0.0;
  double final_test_surrogate = 0.0;
  int zero_one_zero_epoch = -1;       // first recorded epoch with 0 test error
  int surrogate_within_1pct_epoch = -1;  // first epoch within 1% of final surrogate
};

struct HardMarginCell {
  SurrogateLoss loss;
  double delta = 0.0;
  std::vector<TraceRow> mean_trace;  // averaged over non-diverged runs
  std::vector<HardMarginRunStats> runs;
};

struct HardMarginResult {
  std::vector<HardMarginCell> cells;
  std::string trace_csv;
  std::string runs_csv;
};

/// Desk-scale rerun of the hard-margin optimization-curves experiment:
/// for each (loss, delta) trains `repeats` models on fresh datasets and
/// writes the averaged traces plus per-run statistics.
HardMarginResult run_hard_margin(const ExperimentConfig& config);

struct SoftMarginErrorRow {
  double alpha = 0.0;
  int n = 0;
  double mean_error = 0.0;
  double std_error = 0.0;
  int repeats_used = 0;
};

struct SoftMarginSlopeRow {
  double alpha = 0.0;
  RateFit fit;
};

struct SoftMarginResult {
  std::vector<SoftMarginErrorRow> errors;
  std::vector<SoftMarginSlopeRow> slopes;
  RateFit meta;  // straight-line fit of slope against alpha
  std::string errors_csv;
  std::string slopes_csv;
  std::string meta_csv;
};

/// Soft-margin learning-rate experiment: mean test error per (alpha, n),
/// a log-log rate fit per alpha, and the slope-vs-alpha line.
SoftMarginResult run_soft_margin(const ExperimentConfig& config);

/// Plain OLS of y on x (no transforms); used for the slope-vs-alpha fit.
RateFit linear_fit(const std::vector<std::pair<double, double>>& pairs);

}  // namespace simplex_margin
