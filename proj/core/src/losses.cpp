#include "simplex_margin/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace simplex_margin {

namespace {

constexpr double kInvLn2 = 1.4426950408889634;  // 1/ln 2

// sigmoid(x) = 1/(1+e^-x), evaluated without overflow on either tail
double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

const char* phi_name(PhiKind kind) {
  return kind == PhiKind::logistic ? "logistic" : "exponential";
}

PhiEval phi_eval(PhiKind kind, double t) {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("phi_eval: non-finite argument");
  }
  switch (kind) {
    case PhiKind::logistic: {
      // phi(t) = softplus(-t)/ln2; the branch keeps exp() bounded
      const double softplus = t >= 0.0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t));
      const double s = sigmoid(-t);  // = -ln2 * phi'(t)
      return {softplus * kInvLn2, -s * kInvLn2, s * (1.0 - s) * kInvLn2};
    }
    case PhiKind::exponential: {
      const double e = std::exp(-t);
      return {e, -e, e};
    }
  }
  throw std::invalid_argument("phi_eval: unknown PhiKind");
}

std::string SurrogateLoss::name() const {
  return kind == Kind::square ? "square" : phi_name(phi);
}

SurrogateLoss SurrogateLoss::parse(const std::string& name) {
  if (name == "square") return square();
  if (name == "logistic") return margin(PhiKind::logistic);
  if (name == "exponential") return margin(PhiKind::exponential);
  throw std::invalid_argument("SurrogateLoss::parse: unknown loss '" + name + "'");
}

LossEval loss_value_and_grad(const SurrogateLoss& loss, const Codebook& cb,
                             const Eigen::VectorXd& w, int y) {
  if (w.size() != cb.dim()) {
    throw std::invalid_argument("loss_value_and_grad: prediction dimension mismatch");
  }
  const Eigen::VectorXd code = cb.vertex(y);
  if (loss.kind == SurrogateLoss::Kind::square) {
    const Eigen::VectorXd diff = w - code;
    return {diff.squaredNorm(), 2.0 * diff};
  }
  const PhiEval e = phi_eval(loss.phi, w.dot(code));
  return {e.value, e.d1 * code};
}

}  // namespace simplex_margin
