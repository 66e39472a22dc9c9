#include "tms/perron.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "tms/error.hpp"
#include "tms/transition_matrix.hpp"

namespace tms {

namespace {

double relative_change(const Vector& next, const Vector& x) {
  return (next - x).cwiseAbs().maxCoeff() / next.cwiseAbs().maxCoeff();
}

// Power iteration stops here and hands over to inverse iteration. Roundoff
// injected at every step decays only like |lambda_2 / lambda|^k, so plain
// power iteration can stall above 1e-14 when that ratio is close to 1.
constexpr double kPolishThreshold = 1e-11;
constexpr int kMaxPolishSteps = 50;
// Past this many steps power iteration is treated as stalled (a second
// eigenvalue of nearly the same modulus, e.g. close to -lambda) and the shift
// for inverse iteration comes from a dense eigenvalue estimate instead.
constexpr long kStallIterations = 20'000;

// Largest real eigenvalue of M, which for nonnegative M is the Perron root.
double dense_perron_estimate(const Matrix& m) {
  Eigen::EigenSolver<Matrix> es(m, false);
  double best = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) best = std::max(best, es.eigenvalues()[i].real());
  return best;
}

// Normalized power iteration x <- M x / sum(M x) from the uniform vector, then
// inverse iteration shifted at the current eigenvalue estimate until the
// successive relative change is at most options.tolerance.
long dominant_vector(const Matrix& m, Vector& x, const PerronOptions& options) {
  const auto n = m.rows();
  x = Vector::Constant(n, 1.0 / static_cast<double>(n));
  Vector next(n);
  const double handover = std::max(options.tolerance, kPolishThreshold);
  long it = 0;
  std::optional<double> stalled_estimate;
  for (;;) {
    if (++it > options.max_iterations) {
      throw NumericalError("power iteration did not converge in " + std::to_string(options.max_iterations) + " iterations");
    }
    if (it > kStallIterations) {
      stalled_estimate = dense_perron_estimate(m);
      break;
    }
    next.noalias() = m * x;
    const double total = next.sum();
    if (!(total > 0.0) || !std::isfinite(total)) throw NumericalError("power iteration produced a non-positive iterate");
    next /= total;
    const double change = relative_change(next, x);
    x.swap(next);
    if (change <= options.tolerance) return it;
    if (change <= handover) break;
  }

  for (int step = 0; step < kMaxPolishSteps; ++step) {
    const double estimate = step == 0 && stalled_estimate ? *stalled_estimate : (m * x).sum();
    // Offset the shift slightly so that the factorisation never hits an exact
    // zero pivot.
    const double shift = estimate * (1.0 + 1e-10);
    next = (m - shift * Matrix::Identity(n, n)).partialPivLu().solve(x);
    next /= next.sum();
    if (!next.allFinite() || next.minCoeff() <= 0.0) throw NumericalError("inverse iteration lost positivity");
    const double change = relative_change(next, x);
    x.swap(next);
    ++it;
    if (change <= options.tolerance) return it;
  }
  throw NumericalError("inverse iteration did not reach the requested tolerance");
}

}  // namespace

PerronData perron_unchecked(const Matrix& m, const PerronOptions& options) {
  PerronData d;
  Vector right;
  Vector left;
  const long right_its = dominant_vector(m, right, options);
  const Matrix mt = m.transpose();
  const long left_its = dominant_vector(mt, left, options);

  // left sums to 1 already; scale right so that left . right = 1.
  right /= left.dot(right);
  d.lambda = left.dot(m * right);
  d.left = std::move(left);
  d.right = std::move(right);
  d.iterations = std::max(right_its, left_its);
  if (!(d.lambda > 0.0) || !std::isfinite(d.lambda)) throw NumericalError("Perron root is not a positive finite number");
  return d;
}

PerronData perron(const Matrix& m, const PerronOptions& options) {
  if (m.rows() != m.cols() || m.rows() == 0) throw PreconditionError("perron: matrix must be square and non-empty");
  std::vector<std::vector<int>> support(static_cast<std::size_t>(m.rows()), std::vector<int>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) < 0.0 || !std::isfinite(m(i, j))) throw PreconditionError("perron: entries must be finite and nonnegative");
      support[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j) > 0.0 ? 1 : 0;
    }
  const auto pattern = TransitionMatrix::from_rows(support);
  if (pattern.size() > 1 && !is_primitive(pattern)) throw PreconditionError("perron: support is not primitive");
  if (pattern.size() == 1 && m(0, 0) <= 0.0) throw PreconditionError("perron: support is not primitive");
  return perron_unchecked(m, options);
}

}  // namespace tms
