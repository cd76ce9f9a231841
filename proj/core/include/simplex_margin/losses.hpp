#pragma once

#include <Eigen/Dense>
#include <string>

#include "simplex_margin/codebook.hpp"

namespace simplex_margin {

/// Scalar margin penalties phi: convex, non-increasing, twice
/// differentiable.
enum class PhiKind {
  logistic,     // phi(t) = ln(1 + e^-t) / ln 2
  exponential,  // phi(t) = e^-t
};

const char* phi_name(PhiKind kind);

struct PhiEval {
  double value;
  double d1;
  double d2;
};

/// Evaluates phi with its first two derivatives. Stable for |t| up to 500
/// (log-sum-exp form for the logistic). Throws on non-finite t.
PhiEval phi_eval(PhiKind kind, double t);

/// Surrogate loss on simplex codes: either the square loss
/// l(w,y) = ||w - y||^2 or a margin loss l_phi(w,y) = phi(<w,y>).
struct SurrogateLoss {
  enum class Kind { square, margin };

  Kind kind = Kind::square;
  PhiKind phi = PhiKind::logistic;  // used when kind == margin

  static SurrogateLoss square() { return {Kind::square, PhiKind::logistic}; }
  static SurrogateLoss margin(PhiKind p) { return {Kind::margin, p}; }

  /// "square", "logistic" or "exponential".
  std::string name() const;

  /// Parses a loss name as produced by name(). Throws on unknown names.
  static SurrogateLoss parse(const std::string& name);
};

struct LossEval {
  double value;
  Eigen::VectorXd grad;  // d/dw, dimension T-1
};

/// Loss value and gradient in the prediction vector w for true class y.
LossEval loss_value_and_grad(const SurrogateLoss& loss, const Codebook& cb,
                             const Eigen::VectorXd& w, int y);

}  // namespace simplex_margin
