#pragma once

#include <Eigen/Dense>

namespace simplex_margin {

/// Simplex code for T classes: T unit vectors in R^(T-1) with pairwise
/// inner product -1/(T-1). Immutable after construction; all member
/// operations are pure and safe for concurrent use.
class Codebook {
 public:
  /// Builds the canonical codebook for `num_classes` >= 2.
  ///
  /// Vertices are y_i = sqrt(T/(T-1)) * Q (e_i - 1/T), with Q the
  /// orthonormal basis of the sum-zero subspace of R^T produced by
  /// Gram-Schmidt on e_1-e_2, ..., e_1-e_T in index order. The result is
  /// deterministic and satisfies the inner-product structure to machine
  /// precision; it equals the usual textbook coordinates up to one fixed
  /// rotation.
  static Codebook build(int num_classes);

  int num_classes() const { return static_cast<int>(vertices_.rows()); }
  int dim() const { return static_cast<int>(vertices_.cols()); }

  /// T x (T-1) matrix, one vertex per row.
  const Eigen::MatrixXd& vertices() const { return vertices_; }

  Eigen::VectorXd vertex(int cls) const;

  /// Class with the largest projection <w, y_i>; ties go to the lowest
  /// class index.
  int decode(const Eigen::VectorXd& w) const;

  /// Gap between the largest and second-largest projection of w onto the
  /// codebook, min_{y != D(w)} <w, D(w) - y>. Always >= 0.
  double decision_margin(const Eigen::VectorXd& w) const;

  /// Barycenter sum_y p_y * vertex(y) of a probability vector p. Inputs
  /// within 1e-9 of the simplex are renormalized; anything further out is
  /// rejected.
  Eigen::VectorXd barycenter(const Eigen::VectorXd& p) const;

 private:
  explicit Codebook(Eigen::MatrixXd vertices) : vertices_(std::move(vertices)) {}

  Eigen::MatrixXd vertices_;
};

/// Validates p against the probability simplex with tolerance `tol` and
/// returns the renormalized copy. Throws std::invalid_argument otherwise.
Eigen::VectorXd normalize_probability(const Eigen::VectorXd& p, double tol = 1e-9);

}  // namespace simplex_margin
