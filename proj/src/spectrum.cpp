#include "tms/spectrum.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <string>

#include "parallel.hpp"
#include "tms/charpoly.hpp"
#include "tms/error.hpp"

namespace tms {

Matrix q_power(const GibbsChain& chain, double q) {
  const int n = chain.base().size();
  Matrix m = Matrix::Zero(n, n);
  for (const Edge& e : chain.shift().edges) m(e.from, e.to) = std::pow(chain.q(e.from, e.to), q);
  return m;
}

namespace {

struct PressureAt {
  double beta = 0.0;
  double derivative = 0.0;
};

// First-order eigenvalue perturbation: d lambda / dq = p (dQ_q/dq) v / (p . v)
// with dQ_q/dq = Q_q o log Q.
PressureAt pressure_at(const GibbsChain& chain, double q) {
  const Matrix qq = q_power(chain, q);
  const PerronData pd = perron_unchecked(qq);
  Matrix weighted = Matrix::Zero(qq.rows(), qq.cols());
  for (const Edge& e : chain.shift().edges) weighted(e.from, e.to) = qq(e.from, e.to) * std::log(chain.q(e.from, e.to));
  return {std::log(pd.lambda), pd.left.dot(weighted * pd.right) / (pd.lambda * pd.left.dot(pd.right))};
}

}  // namespace

double pressure(const GibbsChain& chain, double q) { return std::log(perron_unchecked(q_power(chain, q)).lambda); }

double pressure_derivative(const GibbsChain& chain, double q) { return pressure_at(chain, q).derivative; }

SpectrumPoint spectrum_point(const GibbsChain& chain, double q) {
  const PressureAt at = pressure_at(chain, q);
  SpectrumPoint p;
  p.q = q;
  p.alpha = -at.derivative;
  p.entropy = at.beta + q * p.alpha;
  return p;
}

std::vector<double> q_grid(double q_min, double q_max, int steps) {
  if (!(q_min < q_max) || steps < 2) throw PreconditionError("q grid needs q_min < q_max and steps >= 2");
  std::vector<double> grid(static_cast<std::size_t>(steps));
  const double h = (q_max - q_min) / (steps - 1);
  for (int k = 0; k < steps; ++k) grid[static_cast<std::size_t>(k)] = q_min + k * h;
  grid.back() = q_max;
  return grid;
}

std::vector<double> default_q_grid() { return q_grid(-3.0, 3.0, 25); }

namespace {

void validate_curve(const GibbsChain& chain, const SpectrumCurve& curve) {
  const double top = std::log(perron_unchecked(q_power(chain, 0.0)).lambda);
  const double slack = 1e-9;
  for (std::size_t k = 0; k < curve.samples.size(); ++k) {
    const auto& s = curve.samples[k];
    if (s.entropy < -slack || s.entropy > top + slack) {
      throw NumericalError("spectrum sample at q = " + std::to_string(s.q) + " has entropy outside [0, log lambda_A]");
    }
    if (k > 0 && s.alpha > curve.samples[k - 1].alpha + slack) {
      throw NumericalError("spectrum alpha increases at q = " + std::to_string(s.q));
    }
  }
}

double family_deviation(const GibbsChain& first, const GibbsChain& second, double q) {
  const auto c1 = char_poly(q_power(first, q));
  const auto c2 = char_poly(q_power(second, q));
  double dev = 0.0;
  for (std::size_t k = 0; k < c1.size(); ++k) {
    dev = std::max(dev, std::abs(c1[k] - c2[k]) / std::max({1.0, std::abs(c1[k]), std::abs(c2[k])}));
  }
  return dev;
}

FamilyComparison assemble(std::span<const double> grid, const std::vector<double>& deviations, double tol) {
  FamilyComparison r;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (deviations[k] > r.max_deviation) {
      r.max_deviation = deviations[k];
      r.worst_q = grid[k];
    }
  }
  r.equal = r.max_deviation <= tol;
  return r;
}

void require_same_alphabet(const GibbsChain& first, const GibbsChain& second) {
  if (first.base().size() != second.base().size()) throw PreconditionError("characteristic polynomial families need equal alphabet sizes");
}

}  // namespace

SpectrumCurve spectrum_curve(const GibbsChain& chain, double q_min, double q_max, int steps) {
  const auto grid = q_grid(q_min, q_max, steps);
  SpectrumCurve curve;
  curve.samples.resize(grid.size());
  detail::parallel_for(static_cast<std::ptrdiff_t>(grid.size()), [&](std::ptrdiff_t k) {
    curve.samples[static_cast<std::size_t>(k)] = spectrum_point(chain, grid[static_cast<std::size_t>(k)]);
  });
  validate_curve(chain, curve);
  return curve;
}

std::vector<double> char_poly(const Matrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("char_poly needs a square matrix");
  const int n = static_cast<int>(m.rows());
  // The recursion cancels trace terms of size |M|^n; 50 digits keep that
  // cancellation exact at double resolution.
  using Wide = boost::multiprecision::cpp_bin_float_50;
  std::vector<Wide> flat(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flat[static_cast<std::size_t>(i * n + j)] = m(i, j);
  const auto wide = faddeev_leverrier(flat, n);
  std::vector<double> coeffs;
  coeffs.reserve(wide.size());
  for (const auto& c : wide) coeffs.push_back(c.convert_to<double>());
  return coeffs;
}

FamilyComparison char_poly_family_equal(const GibbsChain& first, const GibbsChain& second,
                                        std::span<const double> grid, double tol) {
  require_same_alphabet(first, second);
  std::vector<double> deviations(grid.size());
  detail::parallel_for(static_cast<std::ptrdiff_t>(grid.size()), [&](std::ptrdiff_t k) {
    deviations[static_cast<std::size_t>(k)] = family_deviation(first, second, grid[static_cast<std::size_t>(k)]);
  });
  return assemble(grid, deviations, tol);
}

namespace serial {

SpectrumCurve spectrum_curve(const GibbsChain& chain, double q_min, double q_max, int steps) {
  SpectrumCurve curve;
  for (const double q : q_grid(q_min, q_max, steps)) curve.samples.push_back(spectrum_point(chain, q));
  validate_curve(chain, curve);
  return curve;
}

FamilyComparison char_poly_family_equal(const GibbsChain& first, const GibbsChain& second,
                                        std::span<const double> grid, double tol) {
  require_same_alphabet(first, second);
  std::vector<double> deviations;
  deviations.reserve(grid.size());
  for (const double q : grid) deviations.push_back(family_deviation(first, second, q));
  return assemble(grid, deviations, tol);
}

}  // namespace serial

}  // namespace tms
