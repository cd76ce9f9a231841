#include "simplex_margin/rff.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "simplex_margin/rng.hpp"

namespace simplex_margin {

Eigen::VectorXd FeatureMap::transform(const Eigen::VectorXd& x) const {
  if (x.size() != input_dim) {
    throw std::invalid_argument("FeatureMap::transform: input dimension mismatch");
  }
  const double scale = std::sqrt(2.0 / num_features);
  return (scale * ((frequencies * x + phases).array().cos())).matrix();
}

Eigen::MatrixXd FeatureMap::transform_matrix(const Eigen::MatrixXd& xs) const {
  if (xs.cols() != input_dim) {
    throw std::invalid_argument("FeatureMap::transform_matrix: input dimension mismatch");
  }
  const double scale = std::sqrt(2.0 / num_features);
  Eigen::MatrixXd z = xs * frequencies.transpose();
  z.rowwise() += phases.transpose();
  return scale * z.array().cos().matrix();
}

FeatureMap sample_feature_map(int input_dim, int num_features, double bandwidth,
                              std::uint64_t seed) {
  if (input_dim < 1) throw std::invalid_argument("sample_feature_map: input_dim must be >= 1");
  if (num_features < 1) {
    throw std::invalid_argument("sample_feature_map: num_features must be >= 1");
  }
  if (!(bandwidth > 0.0)) {
    throw std::invalid_argument("sample_feature_map: bandwidth must be positive");
  }

  FeatureMap map;
  map.input_dim = input_dim;
  map.num_features = num_features;
  map.bandwidth = bandwidth;
  map.seed = seed;
  map.frequencies.resize(num_features, input_dim);
  map.phases.resize(num_features);

  Rng rng(seed);
  const double sigma = 1.0 / bandwidth;
  for (int i = 0; i < num_features; ++i) {
    for (int j = 0; j < input_dim; ++j) {
      map.frequencies(i, j) = rng.normal(0.0, sigma);
    }
  }
  for (int i = 0; i < num_features; ++i) {
    map.phases(i) = rng.uniform(0.0, 2.0 * M_PI);
  }
  return map;
}

Eigen::VectorXd LinearRffModel::predict(const Eigen::VectorXd& x) const {
  return weights.transpose() * features.transform(x);
}

Eigen::MatrixXd LinearRffModel::predict_matrix(const Eigen::MatrixXd& xs) const {
  return features.transform_matrix(xs) * weights;
}

namespace {

constexpr char kMagic[4] = {'S', 'M', 'R', 'F'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& in) {
  T value;
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  return value;
}

}  // namespace

void save_model(const LinearRffModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_model: cannot open " + path);

  out.write(kMagic, sizeof(kMagic));
  write_pod(out, kVersion);
  write_pod(out, static_cast<std::uint32_t>(model.features.input_dim));
  write_pod(out, static_cast<std::uint32_t>(model.features.num_features));
  write_pod(out, static_cast<std::uint32_t>(model.output_dim() + 1));  // T
  write_pod(out, model.features.seed);
  write_pod(out, model.features.bandwidth);
  for (int i = 0; i < model.weights.rows(); ++i) {
    for (int j = 0; j < model.weights.cols(); ++j) {
      write_pod(out, model.weights(i, j));
    }
  }
  if (!out) throw std::runtime_error("save_model: write failed for " + path);
}

LinearRffModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_model: cannot open " + path);

  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("load_model: bad magic in " + path);
  }
  const auto version = read_pod<std::uint32_t>(in);
  if (version != kVersion) {
    throw std::runtime_error("load_model: unsupported version in " + path);
  }
  const auto d = read_pod<std::uint32_t>(in);
  const auto r = read_pod<std::uint32_t>(in);
  const auto t = read_pod<std::uint32_t>(in);
  const auto seed = read_pod<std::uint64_t>(in);
  const auto bandwidth = read_pod<double>(in);
  if (!in || d < 1 || r < 1 || t < 2) {
    throw std::runtime_error("load_model: corrupt header in " + path);
  }

  LinearRffModel model;
  model.features = sample_feature_map(static_cast<int>(d), static_cast<int>(r), bandwidth, seed);
  model.weights.resize(r, t - 1);
  for (std::uint32_t i = 0; i < r; ++i) {
    for (std::uint32_t j = 0; j + 1 < t; ++j) {
      model.weights(i, j) = read_pod<double>(in);
    }
  }
  if (!in) throw std::runtime_error("load_model: truncated weights in " + path);
  return model;
}

}  // namespace simplex_margin
