#pragma once

#include <Eigen/Core>

namespace tms {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct PerronOptions {
  // Stop once successive iterates change by at most this much in the max
  // norm, relative to the max norm of the new iterate.
  double tolerance = 1e-14;
  long max_iterations = 1'000'000;
};

// Perron eigendata of a nonnegative matrix with primitive support.
//   left:  positive, sums to 1, left * M = lambda * left
//   right: positive, scaled so left . right = 1, M * right = lambda * right
struct PerronData {
  double lambda = 0.0;
  Vector left;
  Vector right;
  long iterations = 0;
};

// Power iteration from the uniform vector on M and M^T, finished by shifted
// inverse iteration. Throws
// PreconditionError if M is not square, has negative entries, or its support
// is not primitive; NumericalError if the iteration does not converge.
PerronData perron(const Matrix& m, const PerronOptions& options = {});

// Same as perron() without the support checks. Callers guarantee that the
// support of M is a primitive matrix.
PerronData perron_unchecked(const Matrix& m, const PerronOptions& options = {});

}  // namespace tms
