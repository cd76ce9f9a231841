#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "simplex_margin/codebook.hpp"
#include "simplex_margin/synthetic.hpp"

namespace simplex_margin {

using Classifier = std::function<int(const Eigen::VectorXd&)>;
using VectorField = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct RiskEstimate {
  double value = 0.0;
  int n_eval = 0;
  double std_error = 0.0;  // binomial normal approximation
};

/// Fraction of eval_set points the classifier labels differently from the
/// recorded labels.
RiskEstimate zero_one_risk(const Classifier& classifier, const Dataset& eval_set);

/// Fraction of points where the two classifiers disagree.
double hamming_distance(const Classifier& c1, const Classifier& c2,
                        const Eigen::MatrixXd& eval_points);

/// max over the grid of ||f1(x) - f2(x)||; a lower bound on the true
/// sup-norm, limited by the grid.
double sup_norm_distance(const VectorField& f1, const VectorField& f2,
                         const Eigen::MatrixXd& grid_points);

/// Empirical CDF of the decision margin M(f(X)) at the given ascending
/// thresholds.
std::vector<double> margin_histogram(const VectorField& f, const Codebook& cb,
                                     const Eigen::MatrixXd& eval_points,
                                     const std::vector<double>& thresholds);

/// Points of a resolution x resolution lattice over [-1,1]^2 that fall
/// inside the closed unit disk.
Eigen::MatrixXd disk_grid(int resolution);

}  // namespace simplex_margin
