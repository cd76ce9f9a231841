#include "simplex_margin/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace simplex_margin {

RiskEstimate zero_one_risk(const Classifier& classifier, const Dataset& eval_set) {
  const int n = eval_set.size();
  if (n == 0) throw std::invalid_argument("zero_one_risk: empty evaluation set");
  int mistakes = 0;
  for (int i = 0; i < n; ++i) {
    if (classifier(eval_set.points.row(i).transpose()) != eval_set.labels[static_cast<std::size_t>(i)]) {
      ++mistakes;
    }
  }
  RiskEstimate est;
  est.n_eval = n;
  est.value = static_cast<double>(mistakes) / n;
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / n);
  return est;
}

double hamming_distance(const Classifier& c1, const Classifier& c2,
                        const Eigen::MatrixXd& eval_points) {
  const Eigen::Index n = eval_points.rows();
  if (n == 0) throw std::invalid_argument("hamming_distance: empty point set");
  Eigen::Index disagreements = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd x = eval_points.row(i).transpose();
    if (c1(x) != c2(x)) ++disagreements;
  }
  return static_cast<double>(disagreements) / static_cast<double>(n);
}

double sup_norm_distance(const VectorField& f1, const VectorField& f2,
                         const Eigen::MatrixXd& grid_points) {
  const Eigen::Index n = grid_points.rows();
  if (n == 0) throw std::invalid_argument("sup_norm_distance: empty grid");
  double sup = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd x = grid_points.row(i).transpose();
    sup = std::max(sup, (f1(x) - f2(x)).norm());
  }
  return sup;
}

std::vector<double> margin_histogram(const VectorField& f, const Codebook& cb,
                                     const Eigen::MatrixXd& eval_points,
                                     const std::vector<double>& thresholds) {
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw std::invalid_argument("margin_histogram: thresholds must be ascending");
  }
  const Eigen::Index n = eval_points.rows();
  if (n == 0) return std::vector<double>(thresholds.size(), 0.0);

  std::vector<double> margins(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    margins[static_cast<std::size_t>(i)] = cb.decision_margin(f(eval_points.row(i).transpose()));
  }
  std::sort(margins.begin(), margins.end());

  std::vector<double> cdf;
  cdf.reserve(thresholds.size());
  for (double thr : thresholds) {
    const auto it = std::upper_bound(margins.begin(), margins.end(), thr);
    cdf.push_back(static_cast<double>(it - margins.begin()) / static_cast<double>(n));
  }
  return cdf;
}

Eigen::MatrixXd disk_grid(int resolution) {
  if (resolution < 2) throw std::invalid_argument("disk_grid: resolution must be >= 2");
  std::vector<Eigen::Vector2d> pts;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const double x = -1.0 + 2.0 * i / (resolution - 1);
      const double y = -1.0 + 2.0 * j / (resolution - 1);
      if (x * x + y * y <= 1.0) pts.emplace_back(x, y);
    }
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(pts.size()), 2);
  for (std::size_t k = 0; k < pts.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = pts[k].transpose();
  return out;
}

}  // namespace simplex_margin
