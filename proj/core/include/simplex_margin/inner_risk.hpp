#pragma once

#include <Eigen/Dense>
#include <functional>

#include "simplex_margin/codebook.hpp"
#include "simplex_margin/losses.hpp"
#include "simplex_margin/rng.hpp"

namespace simplex_margin {

struct InnerMinimizerResult {
  Eigen::VectorXd argmin_w;
  double min_value = 0.0;
  double gradient_norm_at_solution = 0.0;
  int iterations = 0;
  /// True when the minimum lies at infinity (some p_y = 0, where any
  /// strictly decreasing phi has no finite argmin). The returned point
  /// then minimizes the problem floored at p_y = 1e-12, subject to a
  /// ||w|| <= 50 cap; its decode and decision margin carry the limiting
  /// geometry.
  bool unbounded_direction = false;
};

struct MarginTransfer {
  double gamma = 0.0;
  double m_gamma = 0.0;
  int grid_resolution = 0;
};

/// Conditional ("inner") risk Phi(p, w) = sum_y phi(<w,y>) p_y.
double inner_risk(PhiKind phi, const Codebook& cb, const Eigen::VectorXd& p,
                  const Eigen::VectorXd& w);

/// Called with (iteration, objective value) after every accepted step.
using IterationObserver = std::function<void(int, double)>;

/// Minimizes Phi(p, .) by damped Newton with backtracking line search,
/// starting from w = 0, with gradient-descent fallback when the Hessian
/// solve fails to produce a descent direction. Stops once the gradient
/// norm (projected onto the norm cap when active) drops to `tol`, or
/// after 200 iterations.
InnerMinimizerResult inner_minimizer(PhiKind phi, const Codebook& cb,
                                     const Eigen::VectorXd& p, double tol = 1e-10,
                                     const IterationObserver& observer = nullptr);

struct CheckReport {
  int samples = 0;
  int violations = 0;
};

/// Draws random p on the simplex with a unique argmax (top-two gap at
/// least 0.05) and checks decode(h_phi(p)) == argmax_y p_y.
CheckReport check_fisher_consistency(PhiKind phi, const Codebook& cb, int num_samples,
                                     Rng rng);

/// Draws random p, transfers mass 0.01 onto a coordinate y off a single
/// other coordinate, and checks <h_phi(p'), y> >= <h_phi(p), y> - 1e-6.
CheckReport check_monotonicity(PhiKind phi, const Codebook& cb, int num_pairs, Rng rng);

/// Margin-transfer constant
///   m(gamma) = max_{y != j} min { M(h_phi(p)) : p in F(y,j,gamma) } / 2,
/// where F(y,j,gamma) = { p in simplex : p_y - p_j = 2 gamma and
/// p_y - p_k >= 2 gamma for every k != y } is the facet of the
/// hard-margin region with the pair constraint active. The min is taken
/// over a uniform grid with `grid_resolution` points per free dimension;
/// for T = 2 the facet is the single point (1/2+gamma, 1/2-gamma) and the
/// 1/2 normalization makes m(gamma) = max{h(1/2+gamma), -h(1/2-gamma)}.
MarginTransfer margin_transfer(PhiKind phi, const Codebook& cb, double gamma,
                               int grid_resolution = 200);

}  // namespace simplex_margin
