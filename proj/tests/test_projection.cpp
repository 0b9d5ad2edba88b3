#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "wtc/projection.hpp"

using namespace wtc;

namespace {

Eigen::MatrixXcd diag2(double a, double b) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("water_level hand-solved cases") {
  Eigen::VectorXd x(2);

  x << 3.0, 1.0;  // (3-1) + (1-1) = 2
  CHECK(water_level(x, 2.0) == doctest::Approx(1.0).epsilon(1e-15));

  x << 0.5, 0.3;  // already inside the budget
  CHECK(water_level(x, 2.0) == 0.0);

  x << 4.0, -1.0;  // only the first coordinate active
  CHECK(water_level(x, 2.0) == doctest::Approx(2.0).epsilon(1e-15));

  SUBCASE("ties split the level evenly") {
    Eigen::VectorXd t(3);
    t << 3.0, 3.0, 0.0;
    CHECK(water_level(t, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("empty vector throws") {
    CHECK_THROWS_AS(water_level(Eigen::VectorXd(), 1.0), std::invalid_argument);
  }
  SUBCASE("non-positive budget throws") {
    Eigen::VectorXd y(1);
    y << 1.0;
    CHECK_THROWS_AS(water_level(y, 0.0), std::invalid_argument);
  }
}

TEST_CASE("water_level satisfies its defining equation") {
  for (int rep = 0; rep < 100; ++rep) {
    GaussianRng rng(child_seed(400, rep));
    const int n = 2 + static_cast<int>(rng.uniform() * 6);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = 10.0 * (rng.uniform() - 0.3);
    const double p_total = 0.1 + 5.0 * rng.uniform();
    const double c = water_level(x, p_total);

    const double allocated = (x.array() - c).max(0.0).sum();
    if (c > 0.0) {
      CHECK(std::abs(allocated - p_total) <= 1e-12 * p_total);
    } else {
      CHECK(allocated <= p_total * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("decompose_hermitian produces a descending unitary eigensystem") {
  const Eigen::MatrixXcd a = test::random_complex(5, 5, 77);
  const Eigen::MatrixXcd x = 0.5 * (a + a.adjoint());
  const EigenSystem sys = decompose_hermitian(x);

  for (int i = 0; i + 1 < 5; ++i) CHECK(sys.eigenvalues[i] >= sys.eigenvalues[i + 1]);
  CHECK((sys.eigenvectors * sys.eigenvectors.adjoint() -
         Eigen::MatrixXcd::Identity(5, 5))
            .norm() <= 1e-10 * 5);
  const Eigen::MatrixXcd rebuilt = sys.eigenvectors *
                                   sys.eigenvalues.asDiagonal() *
                                   sys.eigenvectors.adjoint();
  CHECK((rebuilt - x).norm() <= 1e-9 * std::max(1.0, x.norm()));
}

TEST_CASE("project hand cases") {
  SUBCASE("feasible input is a fixed point") {
    const Covariance q = test::random_feasible(3, 2.0, 9, 0.9);
    const Covariance p = project(q.matrix(), 2.0);
    CHECK((p.matrix() - q.matrix()).norm() <= 1e-10);
  }
  SUBCASE("diag(3,1) at P=2 projects to diag(2,0)") {
    const Covariance p = project(diag2(3.0, 1.0), 2.0);
    CHECK((p.matrix() - diag2(2.0, 0.0)).norm() <= 1e-12);
  }
  SUBCASE("negative definite input clips to zero") {
    const Covariance p = project(-Eigen::MatrixXcd::Identity(2, 2), 5.0);
    CHECK(p.matrix().norm() == 0.0);
  }
  SUBCASE("far-from-Hermitian input throws") {
    Eigen::MatrixXcd skew = Eigen::MatrixXcd::Zero(2, 2);
    skew(0, 1) = 1.0;
    skew(1, 0) = -1.0;
    CHECK_THROWS_AS(project(skew, 1.0), std::invalid_argument);
  }
}

TEST_CASE("projection is idempotent") {
  for (int rep = 0; rep < 50; ++rep) {
    const Eigen::MatrixXcd a = test::random_complex(4, 4, child_seed(500, rep));
    const Eigen::MatrixXcd x = 1.5 * (a + a.adjoint());
    const double p_total = 3.0;
    const Covariance once = project(x, p_total);
    const Covariance twice = project(once.matrix(), p_total);
    CHECK((twice.matrix() - once.matrix()).norm() <= 1e-10);
  }
}

TEST_CASE("variational inequality of the Euclidean projection") {
  // Re tr((X - Pi(X))(Q - Pi(X))) <= 0 for all feasible Q characterizes the
  // projection onto a convex set.
  int checked = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const Eigen::MatrixXcd a = test::random_complex(4, 4, child_seed(600, rep));
    const Eigen::MatrixXcd x = 2.0 * (a + a.adjoint());
    const double p_total = 4.0;
    const Covariance proj = project(x, p_total);
    const Covariance q = test::random_feasible(4, p_total, child_seed(700, rep),
                                               0.1 + 0.8 * (rep % 10) / 10.0);
    const double inner =
        ((x - proj.matrix()) * (q.matrix() - proj.matrix())).trace().real();
    const double scale = std::max(1.0, x.norm() * q.matrix().norm());
    CHECK(inner <= 1e-8 * scale);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("projection is unitarily equivariant") {
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::MatrixXcd a = test::random_complex(3, 3, child_seed(800, rep));
    const Eigen::MatrixXcd x = 2.0 * (a + a.adjoint());
    const Eigen::MatrixXcd v = test::random_unitary(3, child_seed(900, rep));
    const double p_total = 2.5;

    const Eigen::MatrixXcd lhs = project(v * x * v.adjoint(), p_total).matrix();
    const Eigen::MatrixXcd rhs = v * project(x, p_total).matrix() * v.adjoint();
    CHECK((lhs - rhs).norm() <= 1e-9 * std::max(1.0, x.norm()));
  }
}

TEST_CASE("projected trace respects the budget and saturates when clipped") {
  for (int rep = 0; rep < 50; ++rep) {
    const Eigen::MatrixXcd a = test::random_complex(4, 4, child_seed(1000, rep));
    const Eigen::MatrixXcd x = 3.0 * (a + a.adjoint());
    const double p_total = 2.0;
    const EigenSystem sys = decompose_hermitian(x);
    const double positive_sum = sys.eigenvalues.array().max(0.0).sum();

    const Covariance p = project(x, p_total);
    CHECK(p.trace() <= p_total * (1.0 + 1e-12));
    if (positive_sum >= p_total) {
      CHECK(p.trace() == doctest::Approx(p_total).epsilon(1e-12));
    }
  }
}
