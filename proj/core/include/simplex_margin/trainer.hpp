#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "simplex_margin/losses.hpp"
#include "simplex_margin/rff.hpp"
#include "simplex_margin/synthetic.hpp"

namespace simplex_margin {

struct GdConfig {
  double step_size = 0.0;  // required > 0; see default_step_size
  int max_epochs = 2000;
  double lambda = 0.0;          // ridge coefficient on ||W||_F^2
  double stop_grad_norm = 0.0;  // 0 disables the gradient stop
  int eval_every = 1;
};

struct TraceRow {
  int epoch = 0;
  double train_surrogate = 0.0;  // regularized objective on the train set
  double test_surrogate = 0.0;   // unregularized mean loss on the test set
  double test_zero_one = 0.0;
};

struct TrainTrace {
  std::vector<TraceRow> epochs;
};

class TrainDivergedError : public std::runtime_error {
 public:
  TrainDivergedError(int at_epoch, double risk)
      : std::runtime_error("train: diverged at epoch " + std::to_string(at_epoch) +
                           " (risk " + std::to_string(risk) + ")"),
        epoch(at_epoch) {}
  int epoch;
};

struct RiskGrad {
  double value = 0.0;
  Eigen::MatrixXd grad;  // d(objective)/dW, R x (T-1)
};

/// Regularized empirical surrogate risk
/// (1/n) sum_i l(f(x_i), y_i) + lambda ||W||_F^2 and its weight gradient.
RiskGrad empirical_risk_and_grad(const LinearRffModel& model, const Dataset& dataset,
                                 const SurrogateLoss& loss, double lambda);

/// 0.5 / L, with L the objective's smoothness bound: the dominant
/// eigenvalue of Z^T Z / n (power iteration) times the loss curvature
/// constant, plus 2 lambda. The exponential loss uses curvature 1, its
/// value at margin 0; valid on the non-negative-margin range reached from
/// zero initialization.
double default_step_size(const FeatureMap& features, const Dataset& train_set,
                         const SurrogateLoss& loss, double lambda);

struct TrainResult {
  LinearRffModel model;
  TrainTrace trace;
};

/// Full-batch gradient descent from `init` for max_epochs or until the
/// gradient norm drops to stop_grad_norm. The trace records epoch 0,
/// every eval_every-th epoch, and the final epoch. Deterministic given
/// inputs. Throws TrainDivergedError when the objective exceeds 1e6.
TrainResult train(const Dataset& train_set, const Dataset& test_set,
                  const LinearRffModel& init, const SurrogateLoss& loss,
                  const GdConfig& config);

/// CSV with columns epoch,train_surrogate,test_surrogate,test_zero_one.
void write_trace_csv(const TrainTrace& trace, const std::string& path);

}  // namespace simplex_margin
