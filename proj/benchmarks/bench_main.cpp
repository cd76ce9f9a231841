#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "simplex_margin/codebook.hpp"
#include "simplex_margin/inner_risk.hpp"
#include "simplex_margin/rff.hpp"
#include "simplex_margin/rng.hpp"
#include "simplex_margin/synthetic.hpp"
#include "simplex_margin/trainer.hpp"

namespace sm = simplex_margin;

static void BM_Decode(benchmark::State& state) {
  const auto t = static_cast<int>(state.range(0));
  const sm::Codebook cb = sm::Codebook::build(t);
  sm::Rng rng(1);
  std::vector<Eigen::VectorXd> ws;
  for (int i = 0; i < 256; ++i) {
    Eigen::VectorXd w(t - 1);
    for (int j = 0; j < t - 1; ++j) w(j) = rng.normal();
    ws.push_back(std::move(w));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cb.decode(ws[i++ & 255]));
  }
}
BENCHMARK(BM_Decode)->Arg(3)->Arg(8)->Arg(16);

static void BM_InnerMinimizer(benchmark::State& state) {
  const auto t = static_cast<int>(state.range(0));
  const sm::Codebook cb = sm::Codebook::build(t);
  sm::Rng rng(2);
  std::vector<Eigen::VectorXd> ps;
  for (int i = 0; i < 64; ++i) {
    const auto raw = rng.simplex_point(t);
    ps.push_back(Eigen::Map<const Eigen::VectorXd>(raw.data(), t));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sm::inner_minimizer(sm::PhiKind::logistic, cb, ps[i++ & 63], 1e-10));
  }
}
BENCHMARK(BM_InnerMinimizer)->Arg(3)->Arg(8);

static void BM_RffTransform(benchmark::State& state) {
  const auto features = static_cast<int>(state.range(0));
  const sm::FeatureMap map = sm::sample_feature_map(2, features, 0.5, 3);
  const sm::Dataset ds = sm::gen_hard_margin(512, 3, 0.1, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(map.transform_matrix(ds.points));
  }
}
BENCHMARK(BM_RffTransform)->Arg(100)->Arg(300)->Arg(1000);

static void BM_TrainEpoch(benchmark::State& state) {
  const sm::Dataset train = sm::gen_hard_margin(500, 3, 0.2, 5);
  const sm::Dataset test = sm::gen_hard_margin(100, 3, 0.2, 6);
  sm::LinearRffModel model;
  model.features = sm::sample_feature_map(2, 300, 0.5, 7);
  model.weights = Eigen::MatrixXd::Zero(300, 2);
  const sm::SurrogateLoss loss = sm::SurrogateLoss::margin(sm::PhiKind::logistic);
  sm::GdConfig config;
  config.step_size = sm::default_step_size(model.features, train, loss, 1e-4);
  config.max_epochs = static_cast<int>(state.range(0));
  config.lambda = 1e-4;
  config.eval_every = config.max_epochs;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sm::train(train, test, model, loss, config));
  }
}
BENCHMARK(BM_TrainEpoch)->Arg(10)->Arg(100);

BENCHMARK_MAIN();
