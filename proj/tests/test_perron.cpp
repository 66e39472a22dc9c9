#include <cmath>
#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "tms/error.hpp"
#include "tms/perron.hpp"

using namespace tms;

namespace {

Matrix to_matrix(const TransitionMatrix& a) {
  Matrix m = Matrix::Zero(a.size(), a.size());
  for (const Edge& e : a.edges()) m(e.from, e.to) = 1.0;
  return m;
}

void check_residuals(const Matrix& m, const PerronData& d) {
  CHECK((d.left.transpose() * m - d.lambda * d.left.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * d.lambda);
  CHECK((m * d.right - d.lambda * d.right).cwiseAbs().maxCoeff() <= 1e-12 * d.lambda);
  CHECK(d.left.minCoeff() > 0.0);
  CHECK(d.right.minCoeff() > 0.0);
  CHECK(d.left.sum() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(d.left.dot(d.right) == doctest::Approx(1.0).epsilon(1e-14));
}

}  // namespace

TEST_CASE("full 2-shift") {
  const Matrix m = Matrix::Ones(2, 2);
  const auto d = perron(m);
  CHECK(d.lambda == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(d.left[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d.left[1] == doctest::Approx(0.5).epsilon(1e-15));
  check_residuals(m, d);
}

TEST_CASE("column-stochastic matrices have Perron root 1") {
  const Matrix q = tms::testing::reference_q();
  const auto d = perron(q);
  CHECK(std::abs(d.lambda - 1.0) <= 1e-12);
  check_residuals(q, d);
}

TEST_CASE("SNR example matrix: Perron root is the real root > 1 of z^3 - 2z - 2") {
  // det(zI - A) = z^4 - 2z^2 - 2z, cross-checked against a dense eigensolver.
  const Matrix a = to_matrix(snr_example_matrix());
  const auto d = perron(a);
  const double oracle = tms::testing::dense_spectral_radius(a);
  CHECK(std::abs(d.lambda - oracle) <= 1e-12);
  CHECK(std::abs(d.lambda * d.lambda * d.lambda - 2.0 * d.lambda - 2.0) <= 1e-12);
  CHECK(d.lambda > 1.0);
  check_residuals(a, d);
}

TEST_CASE("random positive weights on random primitive supports") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = tms::testing::random_primitive(2 + trial % 6, 0.5, rng);
    Matrix m = Matrix::Zero(a.size(), a.size());
    for (const Edge& e : a.edges()) m(e.from, e.to) = u(rng);
    const auto d = perron(m);
    CHECK(std::abs(d.lambda - tms::testing::dense_spectral_radius(m)) <= 1e-10 * d.lambda);
    check_residuals(m, d);
  }
}

TEST_CASE("rejected inputs") {
  Matrix swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK_THROWS_AS(perron(swap), PreconditionError);
  Matrix negative = Matrix::Ones(2, 2);
  negative(0, 1) = -1.0;
  CHECK_THROWS_AS(perron(negative), PreconditionError);
  CHECK_THROWS_AS(perron(Matrix::Ones(2, 3)), PreconditionError);

  PerronOptions tight;
  tight.max_iterations = 2;
  Matrix slow = to_matrix(snr_example_matrix());
  CHECK_THROWS_AS(perron(slow, tight), NumericalError);
}

TEST_CASE("second eigenvalue close to -lambda") {
  // Q_q at q = -3 of an example chain dominated by the cycle 242; the
  // spectrum contains +-2761.92 to seven digits.
  Matrix m(4, 4);
  m << 0, 2.87166, 1, 1.22844,
       1, 0, 0, 3433.91,
       0, 94.1455, 0, 0,
       0, 2221.42, 0, 0;
  const auto d = perron(m);
  CHECK(d.lambda == doctest::Approx(tms::testing::dense_spectral_radius(m)).epsilon(1e-12));
  CHECK((m * d.right - d.lambda * d.right).cwiseAbs().maxCoeff() <= 1e-12 * d.lambda * d.right.maxCoeff());
  CHECK((d.left.transpose() * m - d.lambda * d.left.transpose()).cwiseAbs().maxCoeff() <=
        1e-12 * d.lambda * d.left.maxCoeff());
  CHECK(d.right.minCoeff() > 0.0);
  CHECK(d.left.minCoeff() > 0.0);
}
