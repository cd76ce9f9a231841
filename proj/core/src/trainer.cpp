#include "simplex_margin/trainer.hpp"

#include <cmath>
#include <fstream>

#include "text_format.hpp"

namespace simplex_margin {

namespace {

Eigen::MatrixXd label_codes(const Codebook& cb, const std::vector<int>& labels) {
  Eigen::MatrixXd codes(static_cast<Eigen::Index>(labels.size()), cb.dim());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    codes.row(static_cast<Eigen::Index>(i)) = cb.vertices().row(labels[i]);
  }
  return codes;
}

void check_labels(const Dataset& ds, int num_classes, const char* where) {
  for (int label : ds.labels) {
    if (label < 0 || label >= num_classes) {
      throw std::invalid_argument(std::string(where) + ": label out of range for T=" +
                                  std::to_string(num_classes));
    }
  }
}

// Objective and weight gradient given precomputed features and codes.
RiskGrad risk_grad_impl(const Eigen::MatrixXd& z, const Eigen::MatrixXd& codes,
                        const Eigen::MatrixXd& w, const SurrogateLoss& loss,
                        double lambda) {
  const auto n = static_cast<double>(z.rows());
  RiskGrad out;
  if (loss.kind == SurrogateLoss::Kind::square) {
    const Eigen::MatrixXd diff = z * w - codes;
    out.value = diff.squaredNorm() / n;
    out.grad = (2.0 / n) * (z.transpose() * diff);
  } else {
    const Eigen::VectorXd margins = (z * w).cwiseProduct(codes).rowwise().sum();
    Eigen::VectorXd d1(margins.size());
    double total = 0.0;
    for (Eigen::Index i = 0; i < margins.size(); ++i) {
      const PhiEval e = phi_eval(loss.phi, margins(i));
      total += e.value;
      d1(i) = e.d1;
    }
    out.value = total / n;
    out.grad = (1.0 / n) * (z.transpose() * (codes.array().colwise() * d1.array()).matrix());
  }
  out.value += lambda * w.squaredNorm();
  out.grad += 2.0 * lambda * w;
  return out;
}

double mean_test_loss(const Eigen::MatrixXd& z, const Eigen::MatrixXd& codes,
                      const Eigen::MatrixXd& w, const SurrogateLoss& loss) {
  const auto n = static_cast<double>(z.rows());
  if (loss.kind == SurrogateLoss::Kind::square) {
    return (z * w - codes).squaredNorm() / n;
  }
  const Eigen::VectorXd margins = (z * w).cwiseProduct(codes).rowwise().sum();
  double total = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    total += phi_eval(loss.phi, margins(i)).value;
  }
  return total / n;
}

double zero_one_error(const Eigen::MatrixXd& predictions, const Eigen::MatrixXd& vertices,
                      const std::vector<int>& labels) {
  const Eigen::MatrixXd proj = predictions * vertices.transpose();  // n x T
  Eigen::Index mistakes = 0;
  for (Eigen::Index i = 0; i < proj.rows(); ++i) {
    int best = 0;
    for (int c = 1; c < proj.cols(); ++c) {
      if (proj(i, c) > proj(i, best)) best = c;
    }
    if (best != labels[static_cast<std::size_t>(i)]) ++mistakes;
  }
  return static_cast<double>(mistakes) / static_cast<double>(proj.rows());
}

}  // namespace

RiskGrad empirical_risk_and_grad(const LinearRffModel& model, const Dataset& dataset,
                                 const SurrogateLoss& loss, double lambda) {
  if (dataset.size() == 0) {
    throw std::invalid_argument("empirical_risk_and_grad: empty dataset");
  }
  const int t = model.output_dim() + 1;
  check_labels(dataset, t, "empirical_risk_and_grad");
  const Codebook cb = Codebook::build(t);
  const Eigen::MatrixXd z = model.features.transform_matrix(dataset.points);
  return risk_grad_impl(z, label_codes(cb, dataset.labels), model.weights, loss, lambda);
}

double default_step_size(const FeatureMap& features, const Dataset& train_set,
                         const SurrogateLoss& loss, double lambda) {
  if (train_set.size() == 0) {
    throw std::invalid_argument("default_step_size: empty dataset");
  }
  const Eigen::MatrixXd z = features.transform_matrix(train_set.points);
  const auto n = static_cast<double>(z.rows());

  Eigen::VectorXd v = Eigen::VectorXd::Ones(z.cols()).normalized();
  double sigma = 0.0;
  for (int it = 0; it < 100; ++it) {
    Eigen::VectorXd u = z.transpose() * (z * v);
    sigma = u.norm();
    if (sigma == 0.0) break;
    v = u / sigma;
  }
  const double gram_top = sigma / n;

  double curvature = 2.0;  // square loss
  if (loss.kind == SurrogateLoss::Kind::margin) {
    curvature = loss.phi == PhiKind::logistic ? 0.25 * 1.4426950408889634 : 1.0;
  }
  const double lipschitz = curvature * gram_top + 2.0 * lambda;
  return 0.5 / lipschitz;
}

TrainResult train(const Dataset& train_set, const Dataset& test_set,
                  const LinearRffModel& init, const SurrogateLoss& loss,
                  const GdConfig& config) {
  if (!(config.step_size > 0.0)) {
    throw std::invalid_argument("train: step_size must be positive");
  }
  if (config.max_epochs < 1) throw std::invalid_argument("train: max_epochs must be >= 1");
  if (config.eval_every < 1) throw std::invalid_argument("train: eval_every must be >= 1");
  if (config.lambda < 0.0) throw std::invalid_argument("train: lambda must be >= 0");
  if (train_set.size() == 0 || test_set.size() == 0) {
    throw std::invalid_argument("train: datasets must be non-empty");
  }
  if (train_set.dim() != test_set.dim() || train_set.dim() != init.features.input_dim) {
    throw std::invalid_argument("train: dataset/model dimension mismatch");
  }

  const int t = init.output_dim() + 1;
  check_labels(train_set, t, "train");
  check_labels(test_set, t, "train");
  const Codebook cb = Codebook::build(t);

  const Eigen::MatrixXd z_train = init.features.transform_matrix(train_set.points);
  const Eigen::MatrixXd z_test = init.features.transform_matrix(test_set.points);
  const Eigen::MatrixXd codes_train = label_codes(cb, train_set.labels);
  const Eigen::MatrixXd codes_test = label_codes(cb, test_set.labels);

  Eigen::MatrixXd w = init.weights;
  TrainTrace trace;
  auto record = [&](int epoch, double train_objective) {
    TraceRow row;
    row.epoch = epoch;
    row.train_surrogate = train_objective;
    const Eigen::MatrixXd predictions = z_test * w;
    row.test_surrogate = mean_test_loss(z_test, codes_test, w, loss);
    row.test_zero_one = zero_one_error(predictions, cb.vertices(), test_set.labels);
    trace.epochs.push_back(row);
  };

  RiskGrad rg = risk_grad_impl(z_train, codes_train, w, loss, config.lambda);
  record(0, rg.value);

  int last_recorded = 0;
  int epoch = 0;
  while (epoch < config.max_epochs) {
    if (rg.grad.norm() <= config.stop_grad_norm) break;
    ++epoch;
    w -= config.step_size * rg.grad;
    rg = risk_grad_impl(z_train, codes_train, w, loss, config.lambda);
    if (!std::isfinite(rg.value) || rg.value > 1e6) {
      throw TrainDivergedError(epoch, rg.value);
    }
    if (epoch % config.eval_every == 0 || epoch == config.max_epochs) {
      record(epoch, rg.value);
      last_recorded = epoch;
    }
  }
  if (last_recorded != epoch && epoch > 0) record(epoch, rg.value);

  TrainResult result;
  result.model.features = init.features;
  result.model.weights = std::move(w);
  result.trace = std::move(trace);
  return result;
}

void write_trace_csv(const TrainTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_trace_csv: cannot open " + path);
  out << "#schema=train_trace_v1\n";
  out << "epoch,train_surrogate,test_surrogate,test_zero_one\n";
  for (const TraceRow& row : trace.epochs) {
    out << row.epoch << "," << detail::format_double(row.train_surrogate) << ","
        << detail::format_double(row.test_surrogate) << ","
        << detail::format_double(row.test_zero_one) << "\n";
  }
  if (!out) throw std::runtime_error("write_trace_csv: write failed for " + path);
}

}  // namespace simplex_margin
