#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "oracles.hpp"
#include "simplex_margin/codebook.hpp"
#include "simplex_margin/rng.hpp"

using simplex_margin::Codebook;
using simplex_margin::Rng;

namespace {

// Printed coordinates of the T=3 and T=4 simplex figures.
Eigen::MatrixXd figure_vertices(int t) {
  if (t == 3) {
    Eigen::MatrixXd v(3, 2);
    v << 1.0, 0.0, -0.5, 0.8660254, -0.5, -0.8660254;
    return v;
  }
  Eigen::MatrixXd v(4, 3);
  v << 1.0, 0.0, 0.0,                          //
      -0.33333333, 0.94280904, 0.0,            //
      -0.33333333, -0.47140452, 0.81649658,    //
      -0.33333333, -0.47140452, -0.81649658;
  return v;
}

}  // namespace

TEST_SUITE_BEGIN("codebook");

TEST_CASE("rejects fewer than two classes") {
  CHECK_THROWS_AS(Codebook::build(1), std::invalid_argument);
  CHECK_THROWS_AS(Codebook::build(0), std::invalid_argument);
}

TEST_CASE("binary codebook is {+1, -1}") {
  const Codebook cb = Codebook::build(2);
  REQUIRE(cb.dim() == 1);
  CHECK(cb.vertex(0)(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cb.vertex(1)(0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("invariants hold to 1e-12 for T = 2..16") {
  for (int t = 2; t <= 16; ++t) {
    const Codebook cb = Codebook::build(t);
    const Eigen::MatrixXd& v = cb.vertices();
    REQUIRE(v.rows() == t);
    REQUIRE(v.cols() == t - 1);
    for (int i = 0; i < t; ++i) {
      CHECK(std::abs(v.row(i).norm() - 1.0) <= 1e-12);
      for (int j = i + 1; j < t; ++j) {
        CHECK(std::abs(v.row(i).dot(v.row(j)) + 1.0 / (t - 1)) <= 1e-12);
      }
    }
    CHECK(v.colwise().sum().norm() <= 1e-12);
  }
}

TEST_CASE("matches the figure coordinates up to one orthogonal transform") {
  for (int t : {3, 4}) {
    const Codebook cb = Codebook::build(t);
    const Eigen::MatrixXd fig = figure_vertices(t);

    // Gram matrices agree with the exact simplex Gram
    const Eigen::MatrixXd gram = cb.vertices() * cb.vertices().transpose();
    const Eigen::MatrixXd fig_gram = fig * fig.transpose();
    for (int i = 0; i < t; ++i) {
      for (int j = 0; j < t; ++j) {
        const double want = i == j ? 1.0 : -1.0 / (t - 1);
        CHECK(std::abs(gram(i, j) - want) <= 1e-12);
        CHECK(std::abs(fig_gram(i, j) - want) <= 1e-7);  // figure prints 8 decimals
      }
    }

    // a single rotation aligns the printed coordinates with ours
    const Eigen::MatrixXd rot = oracles::procrustes(fig, cb.vertices());
    CHECK((fig * rot - cb.vertices()).norm() <= 1e-6);
  }
}

TEST_CASE("decode works on the binary examples") {
  const Codebook cb = Codebook::build(2);
  Eigen::VectorXd w(1);
  w << -0.2;
  CHECK(cb.decode(w) == 1);  // sign(w) picks the -1 vertex
  w << 0.0;
  CHECK(cb.decode(w) == 0);  // tie goes to the lowest index
  w << 0.7;
  CHECK(cb.decode(w) == 0);
}

TEST_CASE("decode matches the T=3 figure-frame example") {
  const Codebook cb = Codebook::build(3);
  const Eigen::MatrixXd rot = oracles::procrustes(figure_vertices(3), cb.vertices());
  Eigen::VectorXd w_fig(2);
  w_fig << 0.0, 1.0;  // projections 0, 0.866, -0.866 in the figure frame
  const Eigen::VectorXd w = rot.transpose() * w_fig;
  CHECK(cb.decode(w) == 1);
  CHECK(oracles::brute_force_decode(cb.vertices(), w) == 1);
  const Eigen::VectorXd proj = cb.vertices() * w;
  CHECK(proj(1) == doctest::Approx(0.8660254).epsilon(1e-6));
}

TEST_CASE("decode agrees with brute force on random vectors") {
  Rng rng(42);
  for (int trial = 0; trial < 2000; ++trial) {
    const int t = 2 + static_cast<int>(rng.uniform_index(5));
    const Codebook cb = Codebook::build(t);
    Eigen::VectorXd w(t - 1);
    for (int i = 0; i < t - 1; ++i) w(i) = rng.normal();
    CHECK(cb.decode(w) == oracles::brute_force_decode(cb.vertices(), w));
  }
}

TEST_CASE("decision margin on the stated examples") {
  const Codebook binary = Codebook::build(2);
  Eigen::VectorXd w(1);
  w << 0.3;
  CHECK(binary.decision_margin(w) == doctest::Approx(0.6).epsilon(1e-12));  // M = 2|w|

  for (int t : {2, 3, 5, 16}) {
    const Codebook cb = Codebook::build(t);
    for (int i = 0; i < t; ++i) {
      CHECK(cb.decision_margin(cb.vertex(i)) ==
            doctest::Approx(static_cast<double>(t) / (t - 1)).epsilon(1e-12));
    }
  }

  // the \"(1,0) -> 1.5\" example, mapped out of the figure frame
  const Codebook cb3 = Codebook::build(3);
  const Eigen::MatrixXd rot = oracles::procrustes(figure_vertices(3), cb3.vertices());
  Eigen::VectorXd w_fig(2);
  w_fig << 1.0, 0.0;
  const Eigen::VectorXd w3 = rot.transpose() * w_fig;
  CHECK(cb3.decision_margin(w3) == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(oracles::brute_force_margin(cb3.vertices(), w3) == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("margin is zero exactly on top-two ties") {
  const Codebook cb = Codebook::build(4);
  const Eigen::VectorXd tie = cb.vertex(1) + cb.vertex(2);
  CHECK(cb.decision_margin(tie) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cb.decision_margin(Eigen::VectorXd::Zero(3)) == doctest::Approx(0.0));

  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    Eigen::VectorXd w(3);
    for (int i = 0; i < 3; ++i) w(i) = rng.normal();
    const double m = cb.decision_margin(w);
    CHECK(m >= 0.0);
    CHECK(m == doctest::Approx(oracles::brute_force_margin(cb.vertices(), w)).epsilon(1e-12));
  }
}

TEST_CASE("margin and decode are scale covariant") {
  Rng rng(11);
  const Codebook cb = Codebook::build(5);
  for (int trial = 0; trial < 300; ++trial) {
    Eigen::VectorXd w(4);
    for (int i = 0; i < 4; ++i) w(i) = rng.normal();
    const double c = std::exp(rng.uniform(-3.0, 3.0));
    CHECK(cb.decode(c * w) == cb.decode(w));
    CHECK(cb.decision_margin(c * w) ==
          doctest::Approx(c * cb.decision_margin(w)).epsilon(1e-9));
  }
}

TEST_CASE("barycenter examples and argmax equivalence") {
  const Codebook cb2 = Codebook::build(2);
  Eigen::VectorXd p(2);
  p << 0.75, 0.25;
  CHECK(cb2.barycenter(p)(0) == doctest::Approx(0.5).epsilon(1e-12));

  for (int t : {2, 3, 4, 6}) {
    const Codebook cb = Codebook::build(t);
    // uniform -> zero vector
    CHECK(cb.barycenter(Eigen::VectorXd::Constant(t, 1.0 / t)).norm() <= 1e-12);
    for (int k = 0; k < t; ++k) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(t);
      e(k) = 1.0;
      CHECK((cb.barycenter(e) - cb.vertex(k)).norm() <= 1e-12);
      CHECK(cb.decode(cb.barycenter(e)) == k);
    }
  }

  // decode(barycenter(p)) recovers the most probable class
  Rng rng(123);
  for (int t : {2, 3, 4}) {
    const Codebook cb = Codebook::build(t);
    int done = 0;
    while (done < 1000) {
      const auto raw = rng.simplex_point(t);
      Eigen::VectorXd prob = Eigen::Map<const Eigen::VectorXd>(raw.data(), t);
      int best = 0;
      for (int i = 1; i < t; ++i) {
        if (prob(i) > prob(best)) best = i;
      }
      bool unique = true;
      for (int i = 0; i < t; ++i) {
        if (i != best && prob(best) - prob(i) < 1e-9) unique = false;
      }
      if (!unique) continue;
      ++done;
      CHECK(cb.decode(cb.barycenter(prob)) == best);
    }
  }
}

TEST_CASE("input validation") {
  const Codebook cb = Codebook::build(3);
  CHECK_THROWS_AS(cb.decode(Eigen::VectorXd::Zero(3)), std::invalid_argument);
  CHECK_THROWS_AS(cb.decision_margin(Eigen::VectorXd::Zero(1)), std::invalid_argument);

  Eigen::VectorXd bad(3);
  bad << 0.5, 0.4, 0.2;  // sums to 1.1
  CHECK_THROWS_AS(cb.barycenter(bad), std::invalid_argument);
  bad << 0.7, 0.4, -0.1;
  CHECK_THROWS_AS(cb.barycenter(bad), std::invalid_argument);

  // within the 1e-9 tolerance the vector is renormalized
  Eigen::VectorXd near_simplex(3);
  near_simplex << 0.5 + 2e-10, 0.3, 0.2;
  CHECK(cb.barycenter(near_simplex).allFinite());
}

TEST_SUITE_END();
