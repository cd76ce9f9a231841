#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "simplex_margin/codebook.hpp"
#include "simplex_margin/inner_risk.hpp"
#include "simplex_margin/rng.hpp"

using namespace simplex_margin;

namespace {

constexpr double kLn3 = 1.0986122886681098;

Eigen::VectorXd make_p(std::initializer_list<double> values) {
  Eigen::VectorXd p(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) p(i++) = v;
  return p;
}

// Phi(p, .) written out directly, for grid-search cross checks.
double phi_objective(PhiKind kind, const Codebook& cb, const Eigen::VectorXd& p,
                     const Eigen::VectorXd& w) {
  double total = 0.0;
  for (int y = 0; y < cb.num_classes(); ++y) {
    total += p(y) * phi_eval(kind, cb.vertex(y).dot(w)).value;
  }
  return total;
}

}  // namespace

TEST_SUITE_BEGIN("inner_risk");

TEST_CASE("inner risk at w = 0 is 1 for any p") {
  Rng rng(1);
  for (int t : {2, 3, 5}) {
    const Codebook cb = Codebook::build(t);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(t - 1);
    for (int trial = 0; trial < 20; ++trial) {
      const auto raw = rng.simplex_point(t);
      const Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(raw.data(), t);
      CHECK(inner_risk(PhiKind::exponential, cb, p, zero) == doctest::Approx(1.0));
      CHECK(inner_risk(PhiKind::logistic, cb, p, zero) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("binary exponential inner risk at the optimum equals sqrt(4 p (1-p))") {
  const Codebook cb = Codebook::build(2);
  Eigen::VectorXd w(1);
  w << 0.5 * kLn3;
  const double value = inner_risk(PhiKind::exponential, cb, make_p({0.75, 0.25}), w);
  CHECK(value == doctest::Approx(0.8660254037844386).epsilon(1e-10));
  CHECK(value == doctest::Approx(std::sqrt(4.0 * 0.75 * 0.25)).epsilon(1e-10));
}

TEST_CASE("inner risk input validation") {
  const Codebook cb = Codebook::build(3);
  CHECK_THROWS_AS(
      inner_risk(PhiKind::logistic, cb, make_p({0.5, 0.5, 0.5}), Eigen::VectorXd::Zero(2)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      inner_risk(PhiKind::logistic, cb, make_p({0.5, 0.3, 0.2}), Eigen::VectorXd::Zero(3)),
      std::invalid_argument);
}

TEST_CASE("uniform p minimizes at w = 0 by symmetry") {
  for (int t : {2, 3, 4, 6}) {
    const Codebook cb = Codebook::build(t);
    for (PhiKind kind : {PhiKind::logistic, PhiKind::exponential}) {
      const auto res = inner_minimizer(kind, cb, Eigen::VectorXd::Constant(t, 1.0 / t));
      CHECK(res.argmin_w.norm() <= 1e-10);
      CHECK(res.gradient_norm_at_solution <= 1e-10);
      CHECK_FALSE(res.unbounded_direction);
    }
  }
}

TEST_CASE("binary minimizers match the closed forms and a grid search") {
  const Codebook cb = Codebook::build(2);

  const auto logistic = inner_minimizer(PhiKind::logistic, cb, make_p({0.75, 0.25}));
  CHECK(logistic.argmin_w(0) == doctest::Approx(kLn3).epsilon(1e-8));
  const auto exponential = inner_minimizer(PhiKind::exponential, cb, make_p({0.75, 0.25}));
  CHECK(exponential.argmin_w(0) == doctest::Approx(0.5 * kLn3).epsilon(1e-8));

  // independent route: fine grid refinement on [-10, 10]
  for (PhiKind kind : {PhiKind::logistic, PhiKind::exponential}) {
    const double by_grid = oracles::grid_minimize_1d(
        [&](double w) {
          Eigen::VectorXd wv(1);
          wv << w;
          return phi_objective(kind, cb, make_p({0.75, 0.25}), wv);
        },
        -10.0, 10.0);
    const auto res = inner_minimizer(kind, cb, make_p({0.75, 0.25}));
    CHECK(res.argmin_w(0) == doctest::Approx(by_grid).epsilon(1e-6));
  }

  // closed forms across p = 0.55 .. 0.95
  for (double p = 0.55; p < 0.951; p += 0.05) {
    const double logit = std::log(p / (1.0 - p));
    CHECK(inner_minimizer(PhiKind::logistic, cb, make_p({p, 1.0 - p})).argmin_w(0) ==
          doctest::Approx(logit).epsilon(1e-6));
    CHECK(inner_minimizer(PhiKind::exponential, cb, make_p({p, 1.0 - p})).argmin_w(0) ==
          doctest::Approx(0.5 * logit).epsilon(1e-6));
  }
}

TEST_CASE("ternary minimizer agrees with a two-dimensional grid oracle") {
  const Codebook cb = Codebook::build(3);
  Rng rng(17);
  for (PhiKind kind : {PhiKind::logistic, PhiKind::exponential}) {
    for (int trial = 0; trial < 5; ++trial) {
      auto raw = rng.simplex_point(3);
      for (auto& v : raw) v = 0.05 + 0.9 * v;  // keep away from the boundary
      Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(raw.data(), 3);
      p /= p.sum();

      const Eigen::VectorXd by_grid = oracles::grid_minimize(
          [&](const Eigen::VectorXd& w) { return phi_objective(kind, cb, p, w); },
          Eigen::VectorXd::Constant(2, -8.0), Eigen::VectorXd::Constant(2, 8.0));
      const auto res = inner_minimizer(kind, cb, p);
      CHECK((res.argmin_w - by_grid).norm() <= 1e-5);
      CHECK(res.gradient_norm_at_solution <= 1e-10);
    }
  }
}

TEST_CASE("newton objective decreases monotonically") {
  const Codebook cb = Codebook::build(4);
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const auto raw = rng.simplex_point(4);
    const Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(raw.data(), 4);
    std::vector<double> values;
    inner_minimizer(PhiKind::logistic, cb, p, 1e-10,
                    [&](int, double f) { values.push_back(f); });
    for (std::size_t i = 1; i < values.size(); ++i) {
      CHECK(values[i] <= values[i - 1] + 1e-12);
    }
  }
}

TEST_CASE("zero-probability class with exponential loss caps and flags") {
  const Codebook cb = Codebook::build(3);
  const auto res = inner_minimizer(PhiKind::exponential, cb, make_p({0.6, 0.4, 0.0}));
  CHECK(res.unbounded_direction);
  CHECK(res.argmin_w.norm() <= 50.0 + 1e-9);
  // decode and margin remain stable at the cap
  CHECK(cb.decode(res.argmin_w) == 0);
  CHECK(cb.decision_margin(res.argmin_w) > 0.0);
}

TEST_CASE("minimizer validates arguments") {
  const Codebook cb = Codebook::build(3);
  CHECK_THROWS_AS(inner_minimizer(PhiKind::logistic, cb, make_p({0.5, 0.5}), 1e-10),
                  std::invalid_argument);
  CHECK_THROWS_AS(inner_minimizer(PhiKind::logistic, cb, make_p({0.4, 0.3, 0.3}), 0.0),
                  std::invalid_argument);
}

TEST_CASE("pointwise population minimizer equals h of the conditionals") {
  // distribution with known rho(y | x): softmax of squared center distances
  const Codebook cb = Codebook::build(3);
  Eigen::MatrixXd centers(3, 2);
  centers << 1.0, 0.0, -0.5, 0.8660254, -0.5, -0.8660254;
  const auto conditional = [&](const Eigen::Vector2d& x) {
    Eigen::VectorXd logits(3);
    for (int y = 0; y < 3; ++y) {
      logits(y) = -(x - centers.row(y).transpose()).squaredNorm() / 0.5;
    }
    const Eigen::VectorXd stable = (logits.array() - logits.maxCoeff()).exp();
    return Eigen::VectorXd(stable / stable.sum());
  };

  const std::vector<Eigen::Vector2d> xs = {{0.4, 0.1}, {-0.3, 0.5}, {0.0, -0.6}, {0.2, 0.2}};
  for (PhiKind kind : {PhiKind::logistic, PhiKind::exponential}) {
    for (const Eigen::Vector2d& x : xs) {
      const Eigen::VectorXd p = conditional(x);
      // independent minimization of the conditional objective at x
      const Eigen::VectorXd pointwise = oracles::grid_minimize(
          [&](const Eigen::VectorXd& w) { return phi_objective(kind, cb, p, w); },
          Eigen::VectorXd::Constant(2, -8.0), Eigen::VectorXd::Constant(2, 8.0));
      const auto res = inner_minimizer(kind, cb, p);
      CHECK((res.argmin_w - pointwise).norm() <= 1e-5);
    }
  }
}

TEST_CASE("fisher consistency holds over random conditionals") {
  for (int t : {2, 3, 4}) {
    const Codebook cb = Codebook::build(t);
    for (PhiKind kind : {PhiKind::logistic, PhiKind::exponential}) {
      const auto report = check_fisher_consistency(kind, cb, 500, Rng(1000 + t));
      CHECK(report.samples == 500);
      CHECK(report.violations == 0);
    }
  }

  // dominant class wins: p = (0.9, 0.05, 0.05)
  const Codebook cb = Codebook::build(3);
  for (PhiKind kind : {PhiKind::logistic, PhiKind::exponential}) {
    const auto res = inner_minimizer(kind, cb, make_p({0.9, 0.05, 0.05}));
    CHECK(cb.decode(res.argmin_w) == 0);
  }
  CHECK_THROWS_AS(check_fisher_consistency(PhiKind::logistic, cb, 0, Rng(1)),
                  std::invalid_argument);
}

TEST_CASE("projection onto a class code is monotone in its probability") {
  for (int t : {2, 3}) {
    const Codebook cb = Codebook::build(t);
    for (PhiKind kind : {PhiKind::logistic, PhiKind::exponential}) {
      const auto report = check_monotonicity(kind, cb, 200, Rng(2000 + t));
      CHECK(report.samples == 200);
      CHECK(report.violations == 0);
    }
  }

  // binary closed form: h rises from 0 to ln(1.5)
  const Codebook cb = Codebook::build(2);
  const double before =
      inner_minimizer(PhiKind::logistic, cb, make_p({0.5, 0.5})).argmin_w(0);
  const double after =
      inner_minimizer(PhiKind::logistic, cb, make_p({0.6, 0.4})).argmin_w(0);
  CHECK(before == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(after == doctest::Approx(std::log(1.5)).epsilon(1e-8));
}

TEST_CASE("margin transfer matches the binary closed forms") {
  const Codebook cb = Codebook::build(2);
  const auto h_exp = [](double p) { return 0.5 * std::log(p / (1.0 - p)); };
  const auto h_log = [](double p) { return std::log(p / (1.0 - p)); };

  for (double gamma : {0.1, 0.25, 0.4}) {
    const double want_exp = std::max(h_exp(0.5 + gamma), -h_exp(0.5 - gamma));
    const double got_exp = margin_transfer(PhiKind::exponential, cb, gamma, 50).m_gamma;
    CHECK(got_exp == doctest::Approx(want_exp).epsilon(1e-5));

    const double want_log = std::max(h_log(0.5 + gamma), -h_log(0.5 - gamma));
    const double got_log = margin_transfer(PhiKind::logistic, cb, gamma, 50).m_gamma;
    CHECK(got_log == doctest::Approx(want_log).epsilon(1e-5));
  }
  CHECK(margin_transfer(PhiKind::exponential, cb, 0.25, 50).m_gamma ==
        doctest::Approx(0.5 * kLn3).epsilon(1e-4));
}

TEST_CASE("margin transfer vanishes as gamma approaches zero") {
  const Codebook cb = Codebook::build(2);
  CHECK(margin_transfer(PhiKind::exponential, cb, 0.01, 50).m_gamma <= 0.05);
  const Codebook cb3 = Codebook::build(3);
  CHECK(margin_transfer(PhiKind::logistic, cb3, 0.01, 50).m_gamma <= 0.1);
}

TEST_CASE("margin transfer is positive, monotone and grid stable") {
  const Codebook cb3 = Codebook::build(3);
  const double m02 = margin_transfer(PhiKind::logistic, cb3, 0.2, 100).m_gamma;
  const double m03 = margin_transfer(PhiKind::logistic, cb3, 0.3, 100).m_gamma;
  CHECK(m02 > 0.0);
  CHECK(m02 <= m03 + 1e-9);

  // doubling the resolution moves the value by less than 2%
  for (int t : {2, 3, 4}) {
    const Codebook cb = Codebook::build(t);
    const int base = t == 4 ? 40 : 100;
    for (double gamma : {0.1, 0.25, 0.4}) {
      const double coarse = margin_transfer(PhiKind::logistic, cb, gamma, base).m_gamma;
      const double fine = margin_transfer(PhiKind::logistic, cb, gamma, 2 * base).m_gamma;
      CHECK(std::abs(fine - coarse) <= 0.02 * std::max(std::abs(fine), 1e-12));
    }
  }
}

TEST_CASE("margin transfer argument validation") {
  const Codebook cb = Codebook::build(3);
  CHECK_THROWS_AS(margin_transfer(PhiKind::logistic, cb, 0.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(margin_transfer(PhiKind::logistic, cb, 0.6, 100), std::invalid_argument);
  CHECK_THROWS_AS(margin_transfer(PhiKind::logistic, cb, 0.2, 5), std::invalid_argument);
}

TEST_SUITE_END();
