#include "simplex_margin/rate_fit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace simplex_margin {

namespace {

RateFit ols_fit(const std::vector<std::pair<double, double>>& pairs, bool log_x,
                int min_distinct_n) {
  std::vector<double> xs;
  std::vector<double> ys;
  std::set<double> distinct;
  int excluded = 0;
  for (const auto& [n, error] : pairs) {
    if (!(n > 0.0)) {
      throw std::invalid_argument("rate fit: sample sizes must be positive");
    }
    if (error <= 0.0) {
      ++excluded;
      continue;
    }
    xs.push_back(log_x ? std::log(n) : n);
    ys.push_back(std::log(error));
    distinct.insert(n);
  }
  if (static_cast<int>(distinct.size()) < std::max(min_distinct_n, 2)) {
    throw InsufficientDataError("rate fit: need at least " +
                                std::to_string(std::max(min_distinct_n, 2)) +
                                " distinct n with positive error, have " +
                                std::to_string(distinct.size()));
  }

  const auto m = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.n_points = static_cast<int>(xs.size());
  fit.excluded_zeros = excluded;

  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 1e-300 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

}  // namespace

RateFit loglog_slope(const std::vector<std::pair<double, double>>& pairs,
                     int min_distinct_n) {
  return ols_fit(pairs, true, min_distinct_n);
}

RateFit exp_decay_fit(const std::vector<std::pair<double, double>>& pairs,
                      int min_distinct_n) {
  return ols_fit(pairs, false, min_distinct_n);
}

}  // namespace simplex_margin
