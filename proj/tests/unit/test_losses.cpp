#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "oracles.hpp"
#include "simplex_margin/codebook.hpp"
#include "simplex_margin/losses.hpp"
#include "simplex_margin/rng.hpp"

using namespace simplex_margin;

TEST_SUITE_BEGIN("losses");

TEST_CASE("phi values at zero and the tails") {
  const PhiEval log0 = phi_eval(PhiKind::logistic, 0.0);
  CHECK(log0.value == doctest::Approx(1.0).epsilon(1e-12));  // ln2^-1 * ln2
  CHECK(log0.d1 == doctest::Approx(-0.5 / std::log(2.0)).epsilon(1e-12));
  CHECK(log0.d2 == doctest::Approx(0.25 / std::log(2.0)).epsilon(1e-12));

  const PhiEval exp0 = phi_eval(PhiKind::exponential, 0.0);
  CHECK(exp0.value == doctest::Approx(1.0));
  CHECK(exp0.d1 == doctest::Approx(-1.0));
  CHECK(exp0.d2 == doctest::Approx(1.0));

  // monotone non-increasing toward 0 on the right tail
  double prev = phi_eval(PhiKind::logistic, 0.0).value;
  for (double t : {1.0, 5.0, 30.0, 100.0, 500.0}) {
    const double v = phi_eval(PhiKind::logistic, t).value;
    CHECK(v <= prev);
    CHECK(v >= 0.0);
    prev = v;
  }
  CHECK(phi_eval(PhiKind::logistic, 500.0).value <= 1e-100);
  CHECK(std::isfinite(phi_eval(PhiKind::logistic, -500.0).value));
  CHECK(std::isfinite(phi_eval(PhiKind::exponential, -500.0).value));
  CHECK(phi_eval(PhiKind::exponential, 500.0).value == doctest::Approx(0.0));
}

TEST_CASE("phi derivatives match finite differences") {
  for (PhiKind kind : {PhiKind::logistic, PhiKind::exponential}) {
    for (double t : {-400.0, -30.0, -1.0, 0.0, 0.5, 3.0, 25.0, 400.0}) {
      const PhiEval e = phi_eval(kind, t);
      const double h = 1e-6 * std::max(1.0, std::abs(t));
      const double fd1 =
          (phi_eval(kind, t + h).value - phi_eval(kind, t - h).value) / (2.0 * h);
      const double scale1 = std::max(std::abs(e.d1), 1e-12);
      CHECK(std::abs(fd1 - e.d1) / scale1 <= 1e-4);
    }
    // second derivative only where differencing d1 is well conditioned
    for (double t : {-5.0, -1.0, 0.0, 0.5, 3.0, 5.0}) {
      const PhiEval e = phi_eval(kind, t);
      const double h = 1e-6;
      const double fd2 = (phi_eval(kind, t + h).d1 - phi_eval(kind, t - h).d1) / (2.0 * h);
      CHECK(std::abs(fd2 - e.d2) / std::max(std::abs(e.d2), 1e-12) <= 1e-4);
    }
  }
}

TEST_CASE("phi rejects non-finite input") {
  CHECK_THROWS_AS(phi_eval(PhiKind::logistic, std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(phi_eval(PhiKind::exponential, INFINITY), std::invalid_argument);
}

TEST_CASE("loss values on the stated examples") {
  const Codebook cb2 = Codebook::build(2);
  Eigen::VectorXd w(1);

  // square loss at the code itself
  const LossEval at_code =
      loss_value_and_grad(SurrogateLoss::square(), cb2, cb2.vertex(1), 1);
  CHECK(at_code.value == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(at_code.grad.norm() <= 1e-15);

  // square, T=2, w=0, y=+1 -> value 1, gradient -2
  w << 0.0;
  const LossEval at_zero = loss_value_and_grad(SurrogateLoss::square(), cb2, w, 0);
  CHECK(at_zero.value == doctest::Approx(1.0));
  CHECK(at_zero.grad(0) == doctest::Approx(-2.0));

  // exponential margin at w = 0: value 1, gradient -vertex(y)
  for (int t : {2, 3, 5}) {
    const Codebook cb = Codebook::build(t);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(t - 1);
    for (int y = 0; y < t; ++y) {
      const LossEval e =
          loss_value_and_grad(SurrogateLoss::margin(PhiKind::exponential), cb, zero, y);
      CHECK(e.value == doctest::Approx(1.0));
      CHECK((e.grad + cb.vertex(y)).norm() <= 1e-12);
    }
  }
}

TEST_CASE("binary square loss reduces to the margin form (1 - wy)^2") {
  const Codebook cb = Codebook::build(2);
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd w(1);
    w << rng.normal(0.0, 2.0);
    const int y = static_cast<int>(rng.uniform_index(2));
    const double code = cb.vertex(y)(0);
    const double margin_form = (1.0 - w(0) * code) * (1.0 - w(0) * code);
    const LossEval e = loss_value_and_grad(SurrogateLoss::square(), cb, w, y);
    CHECK(e.value == doctest::Approx(margin_form).epsilon(1e-12));
  }
}

TEST_CASE("gradients match central finite differences") {
  Rng rng(99);
  for (const SurrogateLoss loss : {SurrogateLoss::square(),
                                   SurrogateLoss::margin(PhiKind::logistic),
                                   SurrogateLoss::margin(PhiKind::exponential)}) {
    for (int trial = 0; trial < 100; ++trial) {
      const int t = 2 + static_cast<int>(rng.uniform_index(4));
      const Codebook cb = Codebook::build(t);
      Eigen::VectorXd w(t - 1);
      for (int i = 0; i < t - 1; ++i) w(i) = rng.normal(0.0, 1.5);
      const int y = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(t)));

      const LossEval e = loss_value_and_grad(loss, cb, w, y);
      const Eigen::VectorXd fd = oracles::finite_difference_grad(
          [&](const Eigen::VectorXd& v) { return loss_value_and_grad(loss, cb, v, y).value; },
          w);
      CHECK((fd - e.grad).norm() / std::max(e.grad.norm(), 1e-8) <= 1e-5);
    }
  }
}

TEST_CASE("losses are convex along random segments") {
  Rng rng(314);
  for (const SurrogateLoss loss : {SurrogateLoss::square(),
                                   SurrogateLoss::margin(PhiKind::logistic),
                                   SurrogateLoss::margin(PhiKind::exponential)}) {
    for (int trial = 0; trial < 200; ++trial) {
      const int t = 2 + static_cast<int>(rng.uniform_index(3));
      const Codebook cb = Codebook::build(t);
      Eigen::VectorXd w1(t - 1), w2(t - 1);
      for (int i = 0; i < t - 1; ++i) {
        w1(i) = rng.normal(0.0, 2.0);
        w2(i) = rng.normal(0.0, 2.0);
      }
      const int y = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(t)));
      const double blend = rng.uniform01();
      const Eigen::VectorXd mix = blend * w1 + (1.0 - blend) * w2;
      const double lhs = loss_value_and_grad(loss, cb, mix, y).value;
      const double rhs = blend * loss_value_and_grad(loss, cb, w1, y).value +
                         (1.0 - blend) * loss_value_and_grad(loss, cb, w2, y).value;
      CHECK(lhs <= rhs + 1e-10);
    }
  }
}

TEST_CASE("dimension mismatch and parsing errors") {
  const Codebook cb = Codebook::build(3);
  CHECK_THROWS_AS(
      loss_value_and_grad(SurrogateLoss::square(), cb, Eigen::VectorXd::Zero(3), 0),
      std::invalid_argument);
  CHECK_THROWS_AS(SurrogateLoss::parse("hinge"), std::invalid_argument);
  CHECK(SurrogateLoss::parse("square").name() == "square");
  CHECK(SurrogateLoss::parse("logistic").name() == "logistic");
  CHECK(SurrogateLoss::parse("exponential").name() == "exponential");
}

TEST_SUITE_END();
