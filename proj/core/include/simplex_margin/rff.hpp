#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace simplex_margin {

/// Random Fourier features for the Gaussian kernel
/// k(x,x') = exp(-||x-x'||^2 / (2 bandwidth^2)), in the single-cosine
/// variant: z(x) = sqrt(2/R) * cos(F x + b) with F ~ N(0, 1/bandwidth^2)
/// i.i.d. and b ~ U[0, 2pi). ||z(x)|| <= sqrt(2) always.
struct FeatureMap {
  int input_dim = 0;
  int num_features = 0;
  double bandwidth = 1.0;
  std::uint64_t seed = 0;
  Eigen::MatrixXd frequencies;  // R x d
  Eigen::VectorXd phases;       // R

  Eigen::VectorXd transform(const Eigen::VectorXd& x) const;

  /// Row-wise transform of an n x d sample matrix into n x R features.
  Eigen::MatrixXd transform_matrix(const Eigen::MatrixXd& xs) const;
};

/// Deterministic given (d, num_features, bandwidth, seed): frequencies are
/// drawn row-major first, then phases, from the stream seeded by `seed`.
FeatureMap sample_feature_map(int input_dim, int num_features, double bandwidth,
                              std::uint64_t seed);

/// Linear model on RFF features: f(x) = W^T z(x) in R^(T-1).
struct LinearRffModel {
  FeatureMap features;
  Eigen::MatrixXd weights;  // R x (T-1)

  int output_dim() const { return static_cast<int>(weights.cols()); }

  Eigen::VectorXd predict(const Eigen::VectorXd& x) const;

  /// Predictions for an n x d sample matrix, one row per sample.
  Eigen::MatrixXd predict_matrix(const Eigen::MatrixXd& xs) const;
};

/// Binary model file: magic "SMRF", u32 version=1, u32 d, u32 R, u32 T,
/// u64 seed, f64 bandwidth, then R*(T-1) f64 weights row-major. All
/// little-endian. The feature map is reconstructed from the seed on load.
void save_model(const LinearRffModel& model, const std::string& path);
LinearRffModel load_model(const std::string& path);

}  // namespace simplex_margin
