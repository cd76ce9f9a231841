#include "simplex_margin/synthetic.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "simplex_margin/rng.hpp"
#include "text_format.hpp"

namespace simplex_margin {

namespace {

double angle_of(const Eigen::VectorXd& x) {
  double theta = std::atan2(x(1), x(0));
  if (theta < 0.0) theta += 2.0 * M_PI;
  return theta;
}

void check_point_dim(const Eigen::VectorXd& x) {
  if (x.size() != 2) {
    throw std::invalid_argument("sector geometry is two-dimensional, got dim " +
                                std::to_string(x.size()));
  }
}

}  // namespace

int sector_of(int num_classes, const Eigen::VectorXd& x) {
  check_point_dim(x);
  const double width = 2.0 * M_PI / num_classes;
  const double theta = angle_of(x);
  int k = static_cast<int>(std::floor(theta / width));
  if (k >= num_classes) k = num_classes - 1;  // theta == 2*pi edge
  // Exact boundary: tie between sectors k-1 and k, lowest index wins.
  if (theta == k * width && k > 0) return k - 1;
  return k;
}

double boundary_arc_distance(int num_classes, const Eigen::VectorXd& x) {
  check_point_dim(x);
  const double width = 2.0 * M_PI / num_classes;
  const double theta = angle_of(x);
  const double offset = theta - width * std::floor(theta / width);
  return x.norm() * std::min(offset, width - offset);
}

Dataset gen_hard_margin(int n, int num_classes, double delta, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_hard_margin: n must be >= 1");
  if (num_classes < 2) throw std::invalid_argument("gen_hard_margin: need >= 2 classes");
  if (!(delta > 0.0 && delta < 0.5)) {
    throw std::invalid_argument("gen_hard_margin: delta must lie in (0, 0.5)");
  }

  Dataset ds;
  ds.points.resize(n, 2);
  ds.labels.resize(static_cast<std::size_t>(n));
  ds.meta = {MarginKind::hard, num_classes, delta, seed};

  Rng rng(seed);
  int accepted = 0;
  long attempts = 0;
  while (accepted < n) {
    ++attempts;
    if (attempts >= 5000 && accepted * 100L < attempts) {
      throw std::runtime_error(
          "gen_hard_margin: rejection rate >= 99%, delta infeasible for T=" +
          std::to_string(num_classes));
    }
    const double r = std::sqrt(rng.uniform01());
    const double theta = rng.uniform(0.0, 2.0 * M_PI);
    Eigen::Vector2d x(r * std::cos(theta), r * std::sin(theta));
    if (boundary_arc_distance(num_classes, x) < delta / 2.0) continue;
    ds.points.row(accepted) = x.transpose();
    ds.labels[static_cast<std::size_t>(accepted)] = sector_of(num_classes, x);
    ++accepted;
  }
  return ds;
}

Dataset gen_soft_margin(int n, int num_classes, double alpha, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_soft_margin: n must be >= 1");
  if (num_classes < 2) throw std::invalid_argument("gen_soft_margin: need >= 2 classes");
  if (!(alpha > 0.0)) throw std::invalid_argument("gen_soft_margin: alpha must be positive");
  // Margins up to 1 need half a sector of angular room at radius <= 1.
  if (num_classes > 6) {
    throw std::invalid_argument("gen_soft_margin: sector geometry supports T <= 6");
  }

  Dataset ds;
  ds.points.resize(n, 2);
  ds.labels.resize(static_cast<std::size_t>(n));
  ds.meta = {MarginKind::soft, num_classes, alpha, seed};

  Rng rng(seed);
  const double width = 2.0 * M_PI / num_classes;
  for (int i = 0; i < n; ++i) {
    const double m = std::pow(1.0 - rng.uniform01(), 1.0 / alpha);  // U^(1/alpha), U in (0,1]
    const std::size_t boundary = rng.uniform_index(static_cast<std::size_t>(num_classes));
    const bool positive_side = rng.uniform_index(2) == 0;

    // Radius large enough that the chosen boundary stays the nearest:
    // arc offset (m/2)/r must not exceed half the sector width.
    const double r_min = m / width;
    const double r = std::sqrt(rng.uniform(r_min * r_min, 1.0));
    const double dtheta = (m / 2.0) / r;
    double theta = width * static_cast<double>(boundary) + (positive_side ? dtheta : -dtheta);
    if (theta < 0.0) theta += 2.0 * M_PI;

    Eigen::Vector2d x(r * std::cos(theta), r * std::sin(theta));
    ds.points.row(i) = x.transpose();
    ds.labels[static_cast<std::size_t>(i)] = sector_of(num_classes, x);
  }
  return ds;
}

int bayes_classify(const DistributionSpec& spec, const Eigen::VectorXd& x) {
  return sector_of(spec.num_classes, x);
}

std::function<Eigen::VectorXd(const Eigen::VectorXd&)> margin_field(
    const DistributionSpec& spec, const Codebook& cb) {
  if (cb.num_classes() != spec.num_classes) {
    throw std::invalid_argument("margin_field: codebook/spec class count mismatch");
  }
  const int t = spec.num_classes;
  const double vertex_gap = static_cast<double>(t) / (t - 1.0);  // M at a unit vertex
  return [t, vertex_gap, cb](const Eigen::VectorXd& x) {
    const double m = 2.0 * boundary_arc_distance(t, x);
    return Eigen::VectorXd((m / vertex_gap) * cb.vertex(sector_of(t, x)));
  };
}

namespace {

const char* kind_name(MarginKind k) { return k == MarginKind::hard ? "hard" : "soft"; }

}  // namespace

void save_dataset_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_dataset_csv: cannot open " + path);
  for (int j = 0; j < ds.dim(); ++j) out << "x" << (j + 1) << ",";
  out << "label\n";
  for (int i = 0; i < ds.size(); ++i) {
    for (int j = 0; j < ds.dim(); ++j) out << detail::format_double(ds.points(i, j)) << ",";
    out << ds.labels[static_cast<std::size_t>(i)] << "\n";
  }
  if (!out) throw std::runtime_error("save_dataset_csv: write failed for " + path);

  std::ofstream meta(path + ".meta");
  if (!meta) throw std::runtime_error("save_dataset_csv: cannot open " + path + ".meta");
  meta << "kind=" << kind_name(ds.meta.kind) << "\n";
  meta << "num_classes=" << ds.meta.num_classes << "\n";
  meta << (ds.meta.kind == MarginKind::hard ? "delta=" : "alpha=")
       << detail::format_double(ds.meta.param) << "\n";
  meta << "seed=" << ds.meta.seed << "\n";
  meta << "n=" << ds.size() << "\n";
}

Dataset load_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_dataset_csv: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("load_dataset_csv: empty file " + path);
  int dim = 0;
  {
    std::stringstream header(line);
    std::string col;
    while (std::getline(header, col, ',')) {
      if (col != "label") ++dim;
    }
  }
  if (dim < 1) throw std::runtime_error("load_dataset_csv: no coordinate columns in " + path);

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> coords;
    for (int j = 0; j < dim; ++j) {
      if (!std::getline(ss, cell, ',')) {
        throw std::runtime_error("load_dataset_csv: short row in " + path);
      }
      coords.push_back(std::stod(cell));
    }
    if (!std::getline(ss, cell, ',')) {
      throw std::runtime_error("load_dataset_csv: missing label in " + path);
    }
    labels.push_back(std::stoi(cell));
    rows.push_back(std::move(coords));
  }

  Dataset ds;
  ds.points.resize(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < dim; ++j) ds.points(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
  }
  ds.labels = std::move(labels);

  std::ifstream meta(path + ".meta");
  if (!meta) throw std::runtime_error("load_dataset_csv: missing sidecar " + path + ".meta");
  std::map<std::string, std::string> kv;
  while (std::getline(meta, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  ds.meta.kind = kv["kind"] == "soft" ? MarginKind::soft : MarginKind::hard;
  if (kv.count("num_classes")) ds.meta.num_classes = std::stoi(kv["num_classes"]);
  if (kv.count("delta")) ds.meta.param = std::stod(kv["delta"]);
  if (kv.count("alpha")) ds.meta.param = std::stod(kv["alpha"]);
  if (kv.count("seed")) ds.meta.seed = std::stoull(kv["seed"]);
  return ds;
}

}  // namespace simplex_margin
