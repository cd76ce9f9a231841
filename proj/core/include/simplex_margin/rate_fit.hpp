#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace simplex_margin {

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int n_points = 0;        // points used in the fit
  int excluded_zeros = 0;  // non-positive errors dropped before fitting
};

/// OLS of log(error) on log(n) over the pairs (n, error). Pairs with
/// error <= 0 are excluded and counted. Requires n > 0 for every pair and
/// at least `min_distinct_n` distinct n among the positive points
/// (InsufficientDataError otherwise).
RateFit loglog_slope(const std::vector<std::pair<double, double>>& pairs,
                     int min_distinct_n = 2);

/// OLS of log(error) on n: slope estimates -c in error ~ A e^(-c n).
/// Exclusion and preconditions as in loglog_slope.
RateFit exp_decay_fit(const std::vector<std::pair<double, double>>& pairs,
                      int min_distinct_n = 2);

}  // namespace simplex_margin
