#include "simplex_margin/properties.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "simplex_margin/codebook.hpp"
#include "simplex_margin/inner_risk.hpp"
#include "simplex_margin/losses.hpp"
#include "simplex_margin/metrics.hpp"
#include "simplex_margin/rff.hpp"
#include "simplex_margin/rng.hpp"
#include "simplex_margin/synthetic.hpp"

namespace simplex_margin {

namespace {

PropertyResult codebook_invariants() {
  PropertyResult res{"codebook_invariants", true, ""};
  double worst = 0.0;
  for (int t = 2; t <= 16; ++t) {
    const Codebook cb = Codebook::build(t);
    const Eigen::MatrixXd gram = cb.vertices() * cb.vertices().transpose();
    for (int i = 0; i < t; ++i) {
      for (int j = 0; j < t; ++j) {
        const double want = i == j ? 1.0 : -1.0 / (t - 1);
        worst = std::max(worst, std::abs(gram(i, j) - want));
      }
    }
    worst = std::max(worst, cb.vertices().colwise().sum().norm());
  }
  res.passed = worst <= 1e-12;
  std::ostringstream os;
  os << "T=2..16, worst deviation " << worst;
  res.details = os.str();
  return res;
}

PropertyResult gradient_check(const SurrogateLoss& loss, Rng rng, bool inject_fault) {
  PropertyResult res{"gradient_check_" + loss.name(), true, ""};
  int violations = 0;
  double worst = 0.0;
  constexpr double kStep = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    const int t = 2 + static_cast<int>(rng.uniform_index(4));  // T in 2..5
    const Codebook cb = Codebook::build(t);
    Eigen::VectorXd w(t - 1);
    for (int i = 0; i < t - 1; ++i) w(i) = rng.normal(0.0, 1.5);
    const int y = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(t)));

    Eigen::VectorXd analytic = loss_value_and_grad(loss, cb, w, y).grad;
    if (inject_fault) analytic(0) += 1e-3;

    Eigen::VectorXd fd(t - 1);
    for (int i = 0; i < t - 1; ++i) {
      Eigen::VectorXd wp = w, wm = w;
      wp(i) += kStep;
      wm(i) -= kStep;
      fd(i) = (loss_value_and_grad(loss, cb, wp, y).value -
               loss_value_and_grad(loss, cb, wm, y).value) /
              (2.0 * kStep);
    }
    const double rel = (fd - analytic).norm() / std::max(analytic.norm(), 1e-8);
    worst = std::max(worst, rel);
    if (rel > 1e-5) ++violations;
  }
  res.passed = violations == 0;
  std::ostringstream os;
  os << "100 trials, " << violations << " violations, worst rel err " << worst;
  res.details = os.str();
  return res;
}

PropertyResult binary_minimizer_oracle() {
  PropertyResult res{"binary_minimizer_oracle", true, ""};
  const Codebook cb = Codebook::build(2);
  double worst = 0.0;
  for (double p = 0.55; p < 0.951; p += 0.05) {
    Eigen::Vector2d prob(p, 1.0 - p);
    const double logit = std::log(p / (1.0 - p));
    const double got_log = inner_minimizer(PhiKind::logistic, cb, prob, 1e-10).argmin_w(0);
    const double got_exp = inner_minimizer(PhiKind::exponential, cb, prob, 1e-10).argmin_w(0);
    worst = std::max(worst, std::abs(got_log - logit));
    worst = std::max(worst, std::abs(got_exp - 0.5 * logit));
  }
  res.passed = worst <= 1e-6;
  std::ostringstream os;
  os << "p in {0.55..0.95}, worst |h - closed form| " << worst;
  res.details = os.str();
  return res;
}

Classifier random_plugin_classifier(const Codebook& cb, Rng& rng) {
  LinearRffModel model;
  model.features = sample_feature_map(2, 30, 0.7, rng.next_u64());
  model.weights.resize(30, cb.dim());
  for (int i = 0; i < model.weights.rows(); ++i) {
    for (int j = 0; j < model.weights.cols(); ++j) {
      model.weights(i, j) = rng.normal(0.0, 1.0);
    }
  }
  return [model, &cb](const Eigen::VectorXd& x) { return cb.decode(model.predict(x)); };
}

// |R(c1) - R(c2)| <= r(c1, c2), allowing three pooled standard errors
PropertyResult risk_vs_hamming(Rng rng) {
  PropertyResult res{"risk_vs_hamming_bound", true, ""};
  const Codebook cb = Codebook::build(3);
  const Dataset eval = gen_hard_margin(10000, 3, 0.1, rng.next_u64());
  int violations = 0;
  for (int pair = 0; pair < 50; ++pair) {
    const Classifier c1 = random_plugin_classifier(cb, rng);
    const Classifier c2 = random_plugin_classifier(cb, rng);
    const RiskEstimate r1 = zero_one_risk(c1, eval);
    const RiskEstimate r2 = zero_one_risk(c2, eval);
    const double ham = hamming_distance(c1, c2, eval.points);
    const double slack = 3.0 * std::sqrt(r1.std_error * r1.std_error +
                                         r2.std_error * r2.std_error);
    if (std::abs(r1.value - r2.value) > ham + slack) ++violations;
  }
  res.passed = violations == 0;
  res.details = "50 classifier pairs on 10^4 points, " + std::to_string(violations) +
                " violations";
  return res;
}

// Decode changes only when ||w1 - w2|| reaches sqrt((T-1)/2T) * M(w1)
PropertyResult decode_stability(Rng rng) {
  PropertyResult res{"decode_stability_bound", true, ""};
  int violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int t = 2 + static_cast<int>(rng.uniform_index(3));
    const Codebook cb = Codebook::build(t);
    Eigen::VectorXd w1(t - 1), w2(t - 1);
    for (int i = 0; i < t - 1; ++i) {
      w1(i) = rng.normal(0.0, 1.0);
      w2(i) = w1(i) + rng.normal(0.0, 0.7);
    }
    const double threshold = std::sqrt((t - 1.0) / (2.0 * t)) * cb.decision_margin(w1);
    const double dist = (w1 - w2).norm();
    const bool same = cb.decode(w1) == cb.decode(w2);
    if (!same && dist < threshold) ++violations;
  }
  res.passed = violations == 0;
  res.details = "10^4 random pairs, " + std::to_string(violations) + " violations";
  return res;
}

PropertyResult hard_margin_generator(Rng rng) {
  PropertyResult res{"hard_margin_generator", true, ""};
  const double delta = 0.15;
  const Dataset ds = gen_hard_margin(30000, 3, delta, rng.next_u64());
  int arc_violations = 0;
  Eigen::Vector3d counts = Eigen::Vector3d::Zero();
  for (int i = 0; i < ds.size(); ++i) {
    const Eigen::VectorXd x = ds.points.row(i).transpose();
    if (boundary_arc_distance(3, x) < delta / 2.0) ++arc_violations;
    counts(ds.labels[static_cast<std::size_t>(i)]) += 1.0;
  }
  counts /= ds.size();
  const double freq_dev = (counts.array() - 1.0 / 3.0).abs().maxCoeff();
  res.passed = arc_violations == 0 && freq_dev <= 0.02;
  std::ostringstream os;
  os << "30000 points, " << arc_violations << " margin violations, class freq dev "
     << freq_dev;
  res.details = os.str();
  return res;
}

PropertyResult soft_margin_generator(Rng rng) {
  PropertyResult res{"soft_margin_generator", true, ""};
  double worst_ks = 0.0;
  for (double alpha : {0.5, 1.0, 2.0, 3.0, 4.0}) {
    const Dataset ds = gen_soft_margin(10000, 3, alpha, rng.next_u64());
    std::vector<double> margins(static_cast<std::size_t>(ds.size()));
    for (int i = 0; i < ds.size(); ++i) {
      margins[static_cast<std::size_t>(i)] =
          2.0 * boundary_arc_distance(3, ds.points.row(i).transpose());
    }
    std::sort(margins.begin(), margins.end());
    // Kolmogorov-Smirnov distance against F(d) = d^alpha
    double ks = 0.0;
    const auto n = static_cast<double>(margins.size());
    for (std::size_t i = 0; i < margins.size(); ++i) {
      const double f = std::pow(std::clamp(margins[i], 0.0, 1.0), alpha);
      ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
      ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - f));
    }
    worst_ks = std::max(worst_ks, ks);
  }
  res.passed = worst_ks <= 0.02;
  std::ostringstream os;
  os << "alpha in {0.5,1,2,3,4}, n=10^4, worst KS distance " << worst_ks;
  res.details = os.str();
  return res;
}

}  // namespace

std::vector<PropertyResult> run_property_suite(const PropertyOptions& options) {
  Rng root(options.seed);
  std::vector<PropertyResult> results;
  results.push_back(codebook_invariants());
  results.push_back(gradient_check(SurrogateLoss::square(), root.substream({1}),
                                   options.inject_gradient_fault));
  results.push_back(gradient_check(SurrogateLoss::margin(PhiKind::logistic),
                                   root.substream({2}), options.inject_gradient_fault));
  results.push_back(gradient_check(SurrogateLoss::margin(PhiKind::exponential),
                                   root.substream({3}), options.inject_gradient_fault));
  results.push_back(binary_minimizer_oracle());
  results.push_back(risk_vs_hamming(root.substream({4})));
  results.push_back(decode_stability(root.substream({5})));
  results.push_back(hard_margin_generator(root.substream({6})));
  results.push_back(soft_margin_generator(root.substream({7})));
  return results;
}

bool all_passed(const std::vector<PropertyResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const PropertyResult& r) { return r.passed; });
}

int print_property_report(const PropertyOptions& options) {
  const auto results = run_property_suite(options);
  int failures = 0;
  for (const PropertyResult& r : results) {
    if (!r.passed) ++failures;
    std::printf("%s %-28s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.details.c_str());
  }
  std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) - failures,
              results.size());
  return failures;
}

}  // namespace simplex_margin
