#include "simplex_margin/codebook.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace simplex_margin {

Codebook Codebook::build(int num_classes) {
  if (num_classes < 2) {
    throw std::invalid_argument("Codebook::build: need at least 2 classes, got " +
                                std::to_string(num_classes));
  }
  const int t = num_classes;

  // Orthonormal basis of the sum-zero subspace: Gram-Schmidt on
  // e_1 - e_{j+1}, j = 1..T-1, in index order.
  Eigen::MatrixXd q(t - 1, t);  // basis vectors as rows
  for (int j = 0; j < t - 1; ++j) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(t);
    v(0) = 1.0;
    v(j + 1) = -1.0;
    for (int k = 0; k < j; ++k) {
      v -= q.row(k).dot(v) * q.row(k).transpose();
    }
    q.row(j) = v.transpose() / v.norm();
  }

  // y_i = sqrt(T/(T-1)) * Q (e_i - 1/T). Q annihilates the constant
  // vector, so Q e_i is enough.
  const double scale = std::sqrt(static_cast<double>(t) / (t - 1.0));
  Eigen::MatrixXd vertices = scale * q.transpose();
  return Codebook(std::move(vertices));
}

Eigen::VectorXd Codebook::vertex(int cls) const {
  if (cls < 0 || cls >= num_classes()) {
    throw std::invalid_argument("Codebook::vertex: class index out of range");
  }
  return vertices_.row(cls).transpose();
}

namespace {

void check_dim(const Codebook& cb, const Eigen::VectorXd& w, const char* op) {
  if (w.size() != cb.dim()) {
    throw std::invalid_argument(std::string(op) + ": expected dimension " +
                                std::to_string(cb.dim()) + ", got " +
                                std::to_string(w.size()));
  }
}

}  // namespace

int Codebook::decode(const Eigen::VectorXd& w) const {
  check_dim(*this, w, "Codebook::decode");
  const Eigen::VectorXd proj = vertices_ * w;
  int best = 0;
  for (int i = 1; i < proj.size(); ++i) {
    if (proj(i) > proj(best)) best = i;  // strict: ties keep the lowest index
  }
  return best;
}

double Codebook::decision_margin(const Eigen::VectorXd& w) const {
  check_dim(*this, w, "Codebook::decision_margin");
  const Eigen::VectorXd proj = vertices_ * w;
  int best = 0;
  for (int i = 1; i < proj.size(); ++i) {
    if (proj(i) > proj(best)) best = i;
  }
  double second = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < proj.size(); ++i) {
    if (i != best && proj(i) > second) second = proj(i);
  }
  return proj(best) - second;
}

Eigen::VectorXd Codebook::barycenter(const Eigen::VectorXd& p) const {
  if (p.size() != num_classes()) {
    throw std::invalid_argument("Codebook::barycenter: expected " +
                                std::to_string(num_classes()) + " probabilities, got " +
                                std::to_string(p.size()));
  }
  const Eigen::VectorXd pn = normalize_probability(p);
  return vertices_.transpose() * pn;
}

Eigen::VectorXd normalize_probability(const Eigen::VectorXd& p, double tol) {
  double sum = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (!(p(i) >= -tol)) {
      throw std::invalid_argument("probability vector has negative entry " +
                                  std::to_string(p(i)) + " at index " + std::to_string(i));
    }
    sum += p(i);
  }
  if (std::abs(sum - 1.0) > tol) {
    throw std::invalid_argument("probability vector sums to " + std::to_string(sum));
  }
  Eigen::VectorXd out = p.cwiseMax(0.0);
  out /= out.sum();
  return out;
}

}  // namespace simplex_margin
