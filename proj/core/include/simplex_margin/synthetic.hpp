#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "simplex_margin/codebook.hpp"

namespace simplex_margin {

enum class MarginKind { hard, soft };

/// Two-dimensional T-sector disk distributions with noiseless labels, so
/// the Bayes rule is the sector map and the Bayes risk is zero. `param`
/// is the hard-margin width delta or the soft-margin exponent alpha.
struct DistributionSpec {
  MarginKind kind = MarginKind::hard;
  int num_classes = 3;
  double param = 0.1;
  std::uint64_t seed = 0;
};

struct Dataset {
  Eigen::MatrixXd points;  // n x d
  std::vector<int> labels;
  DistributionSpec meta;

  int size() const { return static_cast<int>(points.rows()); }
  int dim() const { return static_cast<int>(points.cols()); }
};

/// Sector of the disk containing x (equal angular sectors, sector k
/// spanning angles [2 pi k / T, 2 pi (k+1) / T)). Points exactly on a
/// boundary go to the lower adjacent class index.
int sector_of(int num_classes, const Eigen::VectorXd& x);

/// Arc-length distance ||x|| * dtheta from x to the nearest sector
/// boundary ray.
double boundary_arc_distance(int num_classes, const Eigen::VectorXd& x);

/// Uniform samples on the unit disk with every point at arc distance at
/// least delta/2 from every sector boundary; labels are the sectors.
/// Throws if the rejection rate reaches 99% (delta infeasible).
Dataset gen_hard_margin(int n, int num_classes, double delta, std::uint64_t seed);

/// Samples with margin M distributed as P{M <= d} = d^alpha on (0,1]:
/// each point sits at arc distance M/2 from a uniformly chosen boundary,
/// inside a uniformly chosen adjacent sector, at an area-uniform radius
/// large enough that the chosen boundary is the nearest one.
Dataset gen_soft_margin(int n, int num_classes, double alpha, std::uint64_t seed);

/// Bayes rule of both generators: the sector containing x.
int bayes_classify(const DistributionSpec& spec, const Eigen::VectorXd& x);

/// Canonical prediction field of the distribution: decodes to the Bayes
/// rule with decision margin M(f(x)) = 2 * boundary_arc_distance(x). Hard
/// data keeps M >= delta on every sample; soft data gives M the generator
/// CDF.
std::function<Eigen::VectorXd(const Eigen::VectorXd&)> margin_field(
    const DistributionSpec& spec, const Codebook& cb);

/// CSV with header x1,...,xd,label plus a key=value sidecar at
/// `path`.meta describing the generator.
void save_dataset_csv(const Dataset& ds, const std::string& path);
Dataset load_dataset_csv(const std::string& path);

}  // namespace simplex_margin
