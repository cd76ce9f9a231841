#include "simplex_margin/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "simplex_margin/rng.hpp"
#include "simplex_margin/svg.hpp"
#include "simplex_margin/synthetic.hpp"
#include "text_format.hpp"

namespace simplex_margin {

namespace {

constexpr std::uint64_t kHardStream = 101;
constexpr std::uint64_t kSoftStream = 202;
// per-cell purposes
constexpr std::uint64_t kTrainData = 0;
constexpr std::uint64_t kTestData = 1;
constexpr std::uint64_t kFeatureMap = 2;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key, "not a number: '" + value + "'");
  }
}

long parse_integer(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key, "not an integer: '" + value + "'");
  }
}

// Runs fn(0..count-1) on `jobs` threads; any exception is rethrown.
void parallel_cells(int count, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir);
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  return out;
}

int first_epoch_with_zero_error(const TrainTrace& trace) {
  for (const TraceRow& row : trace.epochs) {
    if (row.test_zero_one == 0.0) return row.epoch;
  }
  return -1;
}

int first_epoch_within_1pct(const TrainTrace& trace) {
  const double final_value = trace.epochs.back().test_surrogate;
  for (const TraceRow& row : trace.epochs) {
    if (row.test_surrogate <= 1.01 * final_value) return row.epoch;
  }
  return trace.epochs.back().epoch;
}

}  // namespace

RateFit linear_fit(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2) throw InsufficientDataError("linear_fit: need at least 2 points");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pairs) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pairs.size());
  my /= static_cast<double>(pairs.size());
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : pairs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0) throw InsufficientDataError("linear_fit: degenerate x values");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.n_points = static_cast<int>(pairs.size());
  double ss_res = 0.0;
  for (const auto& [x, y] : pairs) {
    const double r = y - (fit.intercept + fit.slope * x);
    ss_res += r * r;
  }
  fit.r_squared = syy > 1e-300 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line, "expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (kv.count(key)) throw ConfigError(key, "duplicate key");
    kv[key] = trim(line.substr(eq + 1));
  }

  ExperimentConfig cfg;
  auto take = [&](const char* key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) return "";
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  cfg.experiment = take("experiment");
  if (cfg.experiment.empty()) throw ConfigError("experiment", "missing (hard-margin | soft-margin | properties)");
  if (cfg.experiment != "hard-margin" && cfg.experiment != "soft-margin" &&
      cfg.experiment != "properties") {
    throw ConfigError("experiment", "unknown experiment '" + cfg.experiment + "'");
  }

  if (const std::string v = take("losses"); !v.empty()) {
    cfg.losses.clear();
    for (const std::string& name : split_list(v)) {
      try {
        cfg.losses.push_back(SurrogateLoss::parse(name));
      } catch (const std::exception&) {
        throw ConfigError("losses", "unknown loss '" + name + "'");
      }
    }
    if (cfg.losses.empty()) throw ConfigError("losses", "empty list");
  } else if (cfg.experiment == "hard-margin") {
    cfg.losses = {SurrogateLoss::square(), SurrogateLoss::margin(PhiKind::logistic),
                  SurrogateLoss::margin(PhiKind::exponential)};
  } else {
    cfg.losses = {SurrogateLoss::margin(PhiKind::logistic)};
  }

  if (const std::string v = take("delta"); !v.empty()) {
    cfg.deltas.clear();
    for (const std::string& item : split_list(v)) {
      const double d = parse_number("delta", item);
      if (!(d > 0.0 && d < 0.5)) throw ConfigError("delta", "must lie in (0, 0.5)");
      cfg.deltas.push_back(d);
    }
  }
  if (const std::string v = take("alpha"); !v.empty()) {
    cfg.alphas.clear();
    for (const std::string& item : split_list(v)) {
      const double a = parse_number("alpha", item);
      if (!(a > 0.0)) throw ConfigError("alpha", "must be positive");
      cfg.alphas.push_back(a);
    }
  }
  if (const std::string v = take("n"); !v.empty()) {
    cfg.train_sizes.clear();
    for (const std::string& item : split_list(v)) {
      const long n = parse_integer("n", item);
      if (n < 1) throw ConfigError("n", "sizes must be >= 1");
      cfg.train_sizes.push_back(static_cast<int>(n));
    }
  }

  auto take_positive_int = [&](const char* key, int& target) {
    if (const std::string v = take(key); !v.empty()) {
      const long n = parse_integer(key, v);
      if (n < 1) throw ConfigError(key, "must be >= 1");
      target = static_cast<int>(n);
    }
  };
  take_positive_int("train_n", cfg.train_n);
  take_positive_int("test_n", cfg.test_n);
  take_positive_int("repeats", cfg.repeats);
  take_positive_int("rff_features", cfg.rff_features);
  take_positive_int("max_epochs", cfg.max_epochs);
  take_positive_int("eval_every", cfg.eval_every);
  take_positive_int("jobs", cfg.jobs);

  if (const std::string v = take("seed"); !v.empty()) {
    try {
      cfg.seed = std::stoull(v);
    } catch (const std::exception&) {
      throw ConfigError("seed", "not an unsigned integer: '" + v + "'");
    }
    cfg.property_options.seed = cfg.seed;
  } else {
    cfg.property_options.seed = cfg.seed;
  }

  if (const std::string v = take("bandwidth"); !v.empty()) {
    cfg.bandwidth = parse_number("bandwidth", v);
    if (!(cfg.bandwidth > 0.0)) throw ConfigError("bandwidth", "must be positive");
  }
  if (const std::string v = take("step_size"); !v.empty()) {
    if (v == "auto") {
      cfg.step_size = 0.0;
    } else {
      cfg.step_size = parse_number("step_size", v);
      if (!(cfg.step_size > 0.0)) throw ConfigError("step_size", "must be positive or 'auto'");
    }
  }
  if (const std::string v = take("lambda"); !v.empty()) {
    cfg.lambda = parse_number("lambda", v);
    if (cfg.lambda < 0.0) throw ConfigError("lambda", "must be >= 0");
  }
  if (const std::string v = take("stop_grad_norm"); !v.empty()) {
    cfg.stop_grad_norm = parse_number("stop_grad_norm", v);
    if (cfg.stop_grad_norm < 0.0) throw ConfigError("stop_grad_norm", "must be >= 0");
  }
  if (const std::string v = take("out_dir"); !v.empty()) cfg.out_dir = v;
  if (const std::string v = take("svg"); !v.empty()) {
    if (v == "0" || v == "false") {
      cfg.svg = false;
    } else if (v == "1" || v == "true") {
      cfg.svg = true;
    } else {
      throw ConfigError("svg", "expected 0/1/true/false");
    }
  }

  if (!kv.empty()) throw ConfigError(kv.begin()->first, "unknown key");

  // experiment-specific defaults for unset knobs
  if (cfg.test_n == 0) cfg.test_n = cfg.experiment == "soft-margin" ? 10000 : 2000;
  if (cfg.eval_every == 0) cfg.eval_every = 1;
  if (cfg.stop_grad_norm < 0.0) {
    cfg.stop_grad_norm = cfg.experiment == "soft-margin" ? 1e-7 : 0.0;
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

namespace {

struct HardRunOutput {
  HardMarginRunStats stats;
  TrainTrace trace;
};

HardRunOutput run_one_hard_cell(const ExperimentConfig& cfg, const SurrogateLoss& loss,
                                double delta, const Rng& cell_rng) {
  HardRunOutput out;
  const Dataset train_set =
      gen_hard_margin(cfg.train_n, 3, delta, cell_rng.substream({kTrainData}).seed());
  const Dataset test_set =
      gen_hard_margin(cfg.test_n, 3, delta, cell_rng.substream({kTestData}).seed());

  LinearRffModel model;
  model.features = sample_feature_map(2, cfg.rff_features, cfg.bandwidth,
                                      cell_rng.substream({kFeatureMap}).seed());
  model.weights = Eigen::MatrixXd::Zero(cfg.rff_features, 2);

  GdConfig gd;
  gd.step_size = cfg.step_size > 0.0
                     ? cfg.step_size
                     : default_step_size(model.features, train_set, loss, cfg.lambda);
  gd.max_epochs = cfg.max_epochs;
  gd.lambda = cfg.lambda;
  gd.stop_grad_norm = cfg.stop_grad_norm;
  gd.eval_every = cfg.eval_every;

  try {
    TrainResult result = train(train_set, test_set, model, loss, gd);
    out.trace = std::move(result.trace);
    out.stats.final_test_zero_one = out.trace.epochs.back().test_zero_one;
    out.stats.final_test_surrogate = out.trace.epochs.back().test_surrogate;
    out.stats.zero_one_zero_epoch = first_epoch_with_zero_error(out.trace);
    out.stats.surrogate_within_1pct_epoch = first_epoch_within_1pct(out.trace);
  } catch (const TrainDivergedError&) {
    out.stats.diverged = true;
  }
  return out;
}

std::vector<TraceRow> average_traces(const std::vector<TrainTrace>& traces) {
  std::vector<TraceRow> mean;
  if (traces.empty()) return mean;
  std::size_t max_rows = 0;
  for (const TrainTrace& t : traces) max_rows = std::max(max_rows, t.epochs.size());
  mean.resize(max_rows);
  for (std::size_t r = 0; r < max_rows; ++r) {
    TraceRow acc;
    for (const TrainTrace& t : traces) {
      // shorter traces (early stop) hold their converged values
      const TraceRow& row = r < t.epochs.size() ? t.epochs[r] : t.epochs.back();
      acc.epoch = std::max(acc.epoch, row.epoch);
      acc.train_surrogate += row.train_surrogate;
      acc.test_surrogate += row.test_surrogate;
      acc.test_zero_one += row.test_zero_one;
    }
    const auto k = static_cast<double>(traces.size());
    acc.train_surrogate /= k;
    acc.test_surrogate /= k;
    acc.test_zero_one /= k;
    mean[r] = acc;
  }
  return mean;
}

void write_hard_svg(const ExperimentConfig& cfg, const HardMarginResult& result) {
  std::vector<svg::Panel> panels;
  const auto make_panel = [&](const SurrogateLoss& loss, bool surrogate) {
    svg::Panel panel;
    panel.title = loss.name() + std::string(surrogate ? " surrogate" : " 0-1");
    panel.x_label = "epoch";
    panel.y_label = surrogate ? "test surrogate" : "test 0-1 error";
    for (const HardMarginCell& cell : result.cells) {
      if (cell.loss.name() != loss.name()) continue;
      svg::Series series;
      series.label = "delta=" + detail::format_double(cell.delta);
      for (const TraceRow& row : cell.mean_trace) {
        series.points.emplace_back(row.epoch,
                                   surrogate ? row.test_surrogate : row.test_zero_one);
      }
      panel.series.push_back(std::move(series));
    }
    return panel;
  };
  for (const SurrogateLoss& loss : cfg.losses) panels.push_back(make_panel(loss, true));
  for (const SurrogateLoss& loss : cfg.losses) panels.push_back(make_panel(loss, false));
  svg::write_panels(cfg.out_dir + "/hard_margin.svg", panels,
                    static_cast<int>(cfg.losses.size()));
}

}  // namespace

HardMarginResult run_hard_margin(const ExperimentConfig& cfg) {
  if (cfg.experiment != "hard-margin") {
    throw ConfigError("experiment", "run_hard_margin needs experiment=hard-margin");
  }
  ensure_out_dir(cfg.out_dir);

  struct CellKey {
    std::size_t loss_idx;
    std::size_t delta_idx;
  };
  std::vector<CellKey> keys;
  for (std::size_t li = 0; li < cfg.losses.size(); ++li) {
    for (std::size_t di = 0; di < cfg.deltas.size(); ++di) keys.push_back({li, di});
  }

  const int total_runs = static_cast<int>(keys.size()) * cfg.repeats;
  std::vector<HardRunOutput> outputs(static_cast<std::size_t>(total_runs));
  const Rng root(cfg.seed);

  parallel_cells(total_runs, cfg.jobs, [&](int idx) {
    const auto key = keys[static_cast<std::size_t>(idx) / static_cast<std::size_t>(cfg.repeats)];
    const int repeat = idx % cfg.repeats;
    const SurrogateLoss& loss = cfg.losses[key.loss_idx];
    const double delta = cfg.deltas[key.delta_idx];
    const Rng cell_rng = root.substream({kHardStream, key.loss_idx, key.delta_idx,
                                         static_cast<std::uint64_t>(repeat)});
    outputs[static_cast<std::size_t>(idx)] = run_one_hard_cell(cfg, loss, delta, cell_rng);
  });

  HardMarginResult result;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    HardMarginCell cell;
    cell.loss = cfg.losses[keys[k].loss_idx];
    cell.delta = cfg.deltas[keys[k].delta_idx];
    std::vector<TrainTrace> traces;
    for (int r = 0; r < cfg.repeats; ++r) {
      const HardRunOutput& out = outputs[k * static_cast<std::size_t>(cfg.repeats) +
                                         static_cast<std::size_t>(r)];
      cell.runs.push_back(out.stats);
      if (!out.stats.diverged) traces.push_back(out.trace);
    }
    cell.mean_trace = average_traces(traces);
    result.cells.push_back(std::move(cell));
  }

  result.trace_csv = cfg.out_dir + "/hard_margin_trace.csv";
  {
    std::ofstream out = open_csv(result.trace_csv);
    out << "#schema=hard_margin_trace_v1\n";
    out << "loss,delta,epoch,train_surrogate,test_surrogate,test_zero_one\n";
    for (const HardMarginCell& cell : result.cells) {
      for (const TraceRow& row : cell.mean_trace) {
        out << cell.loss.name() << "," << detail::format_double(cell.delta) << ","
            << row.epoch << "," << detail::format_double(row.train_surrogate) << ","
            << detail::format_double(row.test_surrogate) << ","
            << detail::format_double(row.test_zero_one) << "\n";
      }
    }
  }

  result.runs_csv = cfg.out_dir + "/hard_margin_runs.csv";
  {
    std::ofstream out = open_csv(result.runs_csv);
    out << "#schema=hard_margin_runs_v1\n";
    out << "loss,delta,repeat,diverged,final_test_zero_one,zero_one_zero_epoch,"
           "surrogate_within_1pct_epoch\n";
    for (const HardMarginCell& cell : result.cells) {
      for (std::size_t r = 0; r < cell.runs.size(); ++r) {
        const HardMarginRunStats& stats = cell.runs[r];
        out << cell.loss.name() << "," << detail::format_double(cell.delta) << "," << r
            << "," << (stats.diverged ? 1 : 0) << ","
            << detail::format_double(stats.final_test_zero_one) << ","
            << stats.zero_one_zero_epoch << "," << stats.surrogate_within_1pct_epoch
            << "\n";
      }
    }
  }

  if (cfg.svg) write_hard_svg(cfg, result);
  return result;
}

namespace {

double run_one_soft_cell(const ExperimentConfig& cfg, double alpha, int n,
                         const Rng& cell_rng) {
  const Dataset train_set =
      gen_soft_margin(n, 3, alpha, cell_rng.substream({kTrainData}).seed());
  const Dataset test_set =
      gen_soft_margin(cfg.test_n, 3, alpha, cell_rng.substream({kTestData}).seed());

  LinearRffModel model;
  model.features = sample_feature_map(2, cfg.rff_features, cfg.bandwidth,
                                      cell_rng.substream({kFeatureMap}).seed());
  model.weights = Eigen::MatrixXd::Zero(cfg.rff_features, 2);

  const SurrogateLoss& loss = cfg.losses.front();
  GdConfig gd;
  gd.step_size = cfg.step_size > 0.0
                     ? cfg.step_size
                     : default_step_size(model.features, train_set, loss, cfg.lambda);
  gd.max_epochs = cfg.max_epochs;
  gd.lambda = cfg.lambda;
  gd.stop_grad_norm = cfg.stop_grad_norm;
  gd.eval_every = cfg.max_epochs;  // only the final error matters here

  const TrainResult result = train(train_set, test_set, model, loss, gd);
  return result.trace.epochs.back().test_zero_one;
}

void write_soft_svg(const ExperimentConfig& cfg, const SoftMarginResult& result) {
  svg::Panel curves;
  curves.title = "test error vs n";
  curves.x_label = "n";
  curves.y_label = "mean 0-1 error";
  curves.log_x = true;
  curves.log_y = true;
  for (double alpha : cfg.alphas) {
    svg::Series series;
    series.label = "alpha=" + detail::format_double(alpha);
    for (const SoftMarginErrorRow& row : result.errors) {
      if (row.alpha == alpha) series.points.emplace_back(row.n, row.mean_error);
    }
    curves.series.push_back(std::move(series));
  }

  svg::Panel slopes;
  slopes.title = "rate vs alpha";
  slopes.x_label = "alpha";
  slopes.y_label = "log-log slope";
  svg::Series points;
  points.label = "fitted slope";
  for (const SoftMarginSlopeRow& row : result.slopes) {
    points.points.emplace_back(row.alpha, row.fit.slope);
  }
  svg::Series line;
  line.label = "slope " + detail::format_double(result.meta.slope);
  if (!result.slopes.empty()) {
    const double a0 = result.slopes.front().alpha;
    const double a1 = result.slopes.back().alpha;
    line.points.emplace_back(a0, result.meta.intercept + result.meta.slope * a0);
    line.points.emplace_back(a1, result.meta.intercept + result.meta.slope * a1);
  }
  slopes.series.push_back(std::move(points));
  slopes.series.push_back(std::move(line));

  svg::write_panels(cfg.out_dir + "/soft_margin.svg", {curves, slopes}, 2);
}

}  // namespace

SoftMarginResult run_soft_margin(const ExperimentConfig& cfg) {
  if (cfg.experiment != "soft-margin") {
    throw ConfigError("experiment", "run_soft_margin needs experiment=soft-margin");
  }
  ensure_out_dir(cfg.out_dir);

  struct CellKey {
    std::size_t alpha_idx;
    std::size_t n_idx;
  };
  std::vector<CellKey> keys;
  for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
    for (std::size_t ni = 0; ni < cfg.train_sizes.size(); ++ni) keys.push_back({ai, ni});
  }

  const int total_runs = static_cast<int>(keys.size()) * cfg.repeats;
  std::vector<double> errors(static_cast<std::size_t>(total_runs));
  const Rng root(cfg.seed);

  parallel_cells(total_runs, cfg.jobs, [&](int idx) {
    const auto key = keys[static_cast<std::size_t>(idx) / static_cast<std::size_t>(cfg.repeats)];
    const int repeat = idx % cfg.repeats;
    const Rng cell_rng = root.substream({kSoftStream, key.alpha_idx, key.n_idx,
                                         static_cast<std::uint64_t>(repeat)});
    errors[static_cast<std::size_t>(idx)] = run_one_soft_cell(
        cfg, cfg.alphas[key.alpha_idx], cfg.train_sizes[key.n_idx], cell_rng);
  });

  SoftMarginResult result;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    SoftMarginErrorRow row;
    row.alpha = cfg.alphas[keys[k].alpha_idx];
    row.n = cfg.train_sizes[keys[k].n_idx];
    double sum = 0.0, sum_sq = 0.0;
    for (int r = 0; r < cfg.repeats; ++r) {
      const double e = errors[k * static_cast<std::size_t>(cfg.repeats) +
                              static_cast<std::size_t>(r)];
      sum += e;
      sum_sq += e * e;
    }
    row.repeats_used = cfg.repeats;
    row.mean_error = sum / cfg.repeats;
    const double var = std::max(0.0, sum_sq / cfg.repeats - row.mean_error * row.mean_error);
    row.std_error = std::sqrt(var / cfg.repeats);
    result.errors.push_back(row);
  }

  // experiment-grade rate fits: at least 4 distinct n with positive error
  for (double alpha : cfg.alphas) {
    std::vector<std::pair<double, double>> pairs;
    for (const SoftMarginErrorRow& row : result.errors) {
      if (row.alpha == alpha) pairs.emplace_back(row.n, row.mean_error);
    }
    SoftMarginSlopeRow slope_row;
    slope_row.alpha = alpha;
    slope_row.fit = loglog_slope(pairs, 4);
    result.slopes.push_back(slope_row);
  }

  std::vector<std::pair<double, double>> slope_pairs;
  for (const SoftMarginSlopeRow& row : result.slopes) {
    slope_pairs.emplace_back(row.alpha, row.fit.slope);
  }
  result.meta = linear_fit(slope_pairs);

  result.errors_csv = cfg.out_dir + "/soft_margin_errors.csv";
  {
    std::ofstream out = open_csv(result.errors_csv);
    out << "#schema=soft_margin_errors_v1\n";
    out << "alpha,n,mean_error,std_error,repeats_used\n";
    for (const SoftMarginErrorRow& row : result.errors) {
      out << detail::format_double(row.alpha) << "," << row.n << ","
          << detail::format_double(row.mean_error) << ","
          << detail::format_double(row.std_error) << "," << row.repeats_used << "\n";
    }
  }

  result.slopes_csv = cfg.out_dir + "/soft_margin_slopes.csv";
  {
    std::ofstream out = open_csv(result.slopes_csv);
    out << "#schema=soft_margin_slopes_v1\n";
    out << "alpha,slope,intercept,r_squared,n_points,excluded_zeros\n";
    for (const SoftMarginSlopeRow& row : result.slopes) {
      out << detail::format_double(row.alpha) << "," << detail::format_double(row.fit.slope)
          << "," << detail::format_double(row.fit.intercept) << ","
          << detail::format_double(row.fit.r_squared) << "," << row.fit.n_points << ","
          << row.fit.excluded_zeros << "\n";
    }
  }

  result.meta_csv = cfg.out_dir + "/soft_margin_meta.csv";
  {
    std::ofstream out = open_csv(result.meta_csv);
    out << "#schema=soft_margin_meta_v1\n";
    out << "meta_slope,meta_intercept,meta_r_squared,num_alphas\n";
    out << detail::format_double(result.meta.slope) << ","
        << detail::format_double(result.meta.intercept) << ","
        << detail::format_double(result.meta.r_squared) << "," << result.slopes.size()
        << "\n";
  }

  if (cfg.svg) write_soft_svg(cfg, result);
  return result;
}

}  // namespace simplex_margin
