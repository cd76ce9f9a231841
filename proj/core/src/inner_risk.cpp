#include "simplex_margin/inner_risk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace simplex_margin {

namespace {

constexpr double kNormCap = 50.0;

struct PhiSums {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

PhiSums eval_inner(PhiKind phi, const Codebook& cb, const Eigen::VectorXd& p,
                   const Eigen::VectorXd& w, bool with_derivatives) {
  PhiSums out;
  const Eigen::MatrixXd& verts = cb.vertices();
  const int dim = cb.dim();
  if (with_derivatives) {
    out.grad = Eigen::VectorXd::Zero(dim);
    out.hess = Eigen::MatrixXd::Zero(dim, dim);
  }
  for (int y = 0; y < cb.num_classes(); ++y) {
    if (p(y) == 0.0 && !with_derivatives) continue;
    const Eigen::VectorXd code = verts.row(y).transpose();
    const PhiEval e = phi_eval(phi, code.dot(w));
    out.value += p(y) * e.value;
    if (with_derivatives) {
      out.grad += p(y) * e.d1 * code;
      out.hess += p(y) * e.d2 * code * code.transpose();
    }
  }
  return out;
}

int argmax_index(const Eigen::VectorXd& p) {
  int best = 0;
  for (int i = 1; i < p.size(); ++i) {
    if (p(i) > p(best)) best = i;
  }
  return best;
}

}  // namespace

double inner_risk(PhiKind phi, const Codebook& cb, const Eigen::VectorXd& p,
                  const Eigen::VectorXd& w) {
  if (w.size() != cb.dim()) {
    throw std::invalid_argument("inner_risk: prediction dimension mismatch");
  }
  if (p.size() != cb.num_classes()) {
    throw std::invalid_argument("inner_risk: probability dimension mismatch");
  }
  const Eigen::VectorXd pn = normalize_probability(p);
  return eval_inner(phi, cb, pn, w, false).value;
}

InnerMinimizerResult inner_minimizer(PhiKind phi, const Codebook& cb,
                                     const Eigen::VectorXd& p, double tol,
                                     const IterationObserver& observer) {
  if (p.size() != cb.num_classes()) {
    throw std::invalid_argument("inner_minimizer: probability dimension mismatch");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("inner_minimizer: tolerance must be positive");
  }
  Eigen::VectorXd pn = normalize_probability(p);
  const int dim = cb.dim();

  InnerMinimizerResult res;
  // With a zero class probability the argmin of Phi(p, .) sits at
  // infinity for any strictly decreasing phi. Solve the problem floored
  // at 1e-12 instead: its minimizer carries the limiting decode and
  // margin geometry, stays well inside the norm cap, and is flagged.
  if (pn.minCoeff() <= 0.0) {
    res.unbounded_direction = true;
    pn = pn.cwiseMax(1e-12);
    pn /= pn.sum();
  }
  Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
  double f = eval_inner(phi, cb, pn, w, false).value;

  constexpr int kMaxIter = 200;
  bool hit_cap = false;
  int iter = 0;
  for (; iter < kMaxIter; ++iter) {
    const PhiSums s = eval_inner(phi, cb, pn, w, true);
    Eigen::VectorXd g = s.grad;

    // At the norm cap only the sphere-tangential component of the
    // gradient can still be reduced.
    if (hit_cap && w.norm() >= kNormCap - 1e-9 && g.dot(w) < 0.0) {
      g -= (g.dot(w) / w.squaredNorm()) * w;
    }
    res.gradient_norm_at_solution = g.norm();
    if (res.gradient_norm_at_solution <= tol) break;

    // Newton direction; plain gradient descent if the solve is unusable
    Eigen::VectorXd d;
    bool have_newton = false;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(s.hess);
    if (ldlt.info() == Eigen::Success) {
      d = -ldlt.solve(g);
      have_newton = d.allFinite() && g.dot(d) < 0.0;
    }
    if (!have_newton) d = -g;

    const double slope = g.dot(d);
    double step = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      Eigen::VectorXd wn = w + step * d;
      bool projected = false;
      if (wn.norm() > kNormCap) {
        wn *= kNormCap / wn.norm();
        projected = true;
      }
      const double fn = eval_inner(phi, cb, pn, wn, false).value;
      const bool armijo = fn <= f + 1e-4 * step * slope;
      if ((projected && fn < f) || (!projected && armijo)) {
        w = std::move(wn);
        f = fn;
        moved = true;
        if (projected) hit_cap = true;
        break;
      }
      step *= 0.5;
    }
    if (observer) observer(iter, f);
    if (!moved) break;  // no further progress representable
  }
  res.unbounded_direction = res.unbounded_direction || hit_cap;

  res.argmin_w = std::move(w);
  res.min_value = f;
  res.iterations = iter;
  return res;
}

CheckReport check_fisher_consistency(PhiKind phi, const Codebook& cb, int num_samples,
                                     Rng rng) {
  if (num_samples < 1) {
    throw std::invalid_argument("check_fisher_consistency: num_samples must be >= 1");
  }
  const int t = cb.num_classes();
  CheckReport report;
  while (report.samples < num_samples) {
    const std::vector<double> raw = rng.simplex_point(t);
    Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(raw.data(), t);
    std::vector<double> sorted(raw);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    if (sorted[0] - sorted[1] < 0.05) continue;

    ++report.samples;
    const InnerMinimizerResult res = inner_minimizer(phi, cb, p);
    if (cb.decode(res.argmin_w) != argmax_index(p)) ++report.violations;
  }
  return report;
}

CheckReport check_monotonicity(PhiKind phi, const Codebook& cb, int num_pairs, Rng rng) {
  if (num_pairs < 1) {
    throw std::invalid_argument("check_monotonicity: num_pairs must be >= 1");
  }
  constexpr double kEps = 0.01;
  const int t = cb.num_classes();
  CheckReport report;
  while (report.samples < num_pairs) {
    const std::vector<double> raw = rng.simplex_point(t);
    Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(raw.data(), t);
    const int y = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(t)));

    std::vector<int> donors;
    for (int j = 0; j < t; ++j) {
      if (j != y && p(j) >= kEps + 1e-12) donors.push_back(j);
    }
    if (donors.empty()) continue;
    const int j = donors[rng.uniform_index(donors.size())];

    Eigen::VectorXd p2 = p;
    p2(y) += kEps;
    p2(j) -= kEps;

    ++report.samples;
    const Eigen::VectorXd code = cb.vertex(y);
    const double before = inner_minimizer(phi, cb, p).argmin_w.dot(code);
    const double after = inner_minimizer(phi, cb, p2).argmin_w.dot(code);
    if (after < before - 1e-6) ++report.violations;
  }
  return report;
}

namespace {

// Enumerates q in R^k, q >= 0, sum(q) = total, on a grid with `res`
// points per coordinate, appending each completed point via `emit`.
void enumerate_remaining(int k, double total, int res, std::vector<double>& partial,
                         const std::function<void(const std::vector<double>&)>& emit) {
  if (k == 0) {
    emit(partial);
    return;
  }
  if (k == 1) {
    partial.push_back(total);
    emit(partial);
    partial.pop_back();
    return;
  }
  for (int i = 0; i < res; ++i) {
    const double q = total * static_cast<double>(i) / (res - 1);
    partial.push_back(q);
    enumerate_remaining(k - 1, total - q, res, partial, emit);
    partial.pop_back();
  }
}

}  // namespace

MarginTransfer margin_transfer(PhiKind phi, const Codebook& cb, double gamma,
                               int grid_resolution) {
  if (!(gamma > 0.0 && gamma <= 0.5)) {
    throw std::invalid_argument("margin_transfer: gamma must lie in (0, 1/2]");
  }
  if (grid_resolution < 10) {
    throw std::invalid_argument("margin_transfer: grid_resolution must be >= 10");
  }
  const int t = cb.num_classes();

  // Facet of the hard-margin region: p_y leads every class by at least
  // 2 gamma, the pair class j by exactly 2 gamma. Parametrized by
  // v = p_y in [ (1 + 2 gamma (T-1)) / T , (1 + 2 gamma) / 2 ] and the
  // remaining T-2 coordinates; for T = 2 this is the single point
  // (1/2 + gamma, 1/2 - gamma).
  const double v_min = (1.0 + 2.0 * gamma * (t - 1)) / t;
  const double v_max = (1.0 + 2.0 * gamma) / 2.0;

  double best_over_pairs = 0.0;
  for (int y = 0; y < t; ++y) {
    for (int j = 0; j < t; ++j) {
      if (j == y) continue;
      double facet_min = std::numeric_limits<double>::infinity();
      auto probe = [&](double v, const std::vector<double>& rest) {
        for (double q : rest) {
          if (q > v - 2.0 * gamma + 1e-12) return;  // edge constraint violated
        }
        Eigen::VectorXd p = Eigen::VectorXd::Zero(t);
        p(y) = v;
        p(j) = v - 2.0 * gamma;
        int r = 0;
        for (int c = 0; c < t; ++c) {
          if (c != y && c != j) p(c) = rest[static_cast<std::size_t>(r++)];
        }
        // h is undefined at exact zeros (argmin at infinity); clamping to
        // 1e-6 evaluates the boundary limit while keeping the minimizer
        // far inside the norm cap for the supported T.
        p = p.cwiseMax(1e-6);
        p /= p.sum();
        const InnerMinimizerResult res = inner_minimizer(phi, cb, p, 1e-10);
        facet_min = std::min(facet_min, cb.decision_margin(res.argmin_w));
      };

      if (t == 2) {
        probe(v_max, {});
      } else {
        for (int i = 0; i < grid_resolution; ++i) {
          const double v =
              v_min + (v_max - v_min) * static_cast<double>(i) / (grid_resolution - 1);
          std::vector<double> partial;
          enumerate_remaining(t - 2, 1.0 - v - (v - 2.0 * gamma), grid_resolution, partial,
                              [&](const std::vector<double>& rest) { probe(v, rest); });
        }
      }
      best_over_pairs = std::max(best_over_pairs, facet_min);
    }
  }

  MarginTransfer out;
  out.gamma = gamma;
  out.m_gamma = 0.5 * best_over_pairs;
  out.grid_resolution = grid_resolution;
  return out;
}

}  // namespace simplex_margin
